// Copyright 2026 The qswiso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"
#include "liouville.hpp"
#include "precision.hpp"
#include "spectral.hpp"

namespace qswiso {

// Density matrix in dyad-vector form, normalized to unit trace.
struct DensityVector {
  int n = 0;
  Eigen::VectorXcd entries;

  Complex at(int i, int j) const { return entries(dyad_index(i, j, n)); }
  double population(int i) const { return at(i, i).real(); }
  Complex trace() const;
  double hermiticity_defect() const;
};

// Null vector of a chi = 0 generator via SVD. Throws ErrorCode::singular if
// the second smallest singular value is <= 1e-10 (non-unique steady state).
DensityVector steady_state(const SuperOperator& s);

// Eigenvalue with maximal real part. Throws ErrorCode::branch_crossing when
// the runner-up is within 1e-9 in real part.
Complex dominant_eigenvalue(const SuperOperator& s);
Complex dominant_eigenvalue(const Eigen::MatrixXcd& m);

// Follows the eigenvalue that is dominant at path.front() continuously
// along the path, matching eigenvectors by maximal overlap between
// consecutive samples (sub-dividing steps where the match is ambiguous).
std::vector<Complex> track_dominant_branch(const TiltedGenerator& gen, std::span<const Complex> path);

// Newton refinement of an eigenpair of gen.at(chi) in the precision of T.
template <class T>
ComplexT<T> refine_eigenvalue(const TiltedGenerator& gen, const ComplexT<T>& chi, Complex nu,
                              const Eigen::VectorXcd& vec);

// P(nu, chi) = P0(nu) + exp(chi) P1(nu) for the tilted generator.
template <class T>
struct SplitCharPoly {
  BasicCharPoly<T> p0;
  BasicCharPoly<T> p1;  // degree <= dim - 2; stored with dim + 1 entries

  // Coefficients q_i of P at chi = 0.
  std::vector<T> q() const;
  // q_i' = P1 coefficients.
  const std::vector<T>& qprime() const { return p1.coeffs; }
};

template <class T>
SplitCharPoly<T> split_char_poly(const Graph& g, double omega, const AuxEdge& aux);

enum class CumulantMethod { forward_recursion, contour };

std::string to_string(CumulantMethod m);

// Reduced cumulants c_1..c_m (jumps per unit time).
template <class T>
struct CumulantSet {
  std::vector<T> values;  // values[k-1] = c_k
  CumulantMethod method = CumulantMethod::forward_recursion;
  double radius = 0.0;
  int points = 0;
  double consistency = 0.0;  // max relative difference between radii r and r/2

  int order() const noexcept { return static_cast<int>(values.size()); }
  const T& c(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
  std::vector<double> to_double() const;
};

// Order-by-order solution of the derivative equations with q(chi) known.
template <class T>
CumulantSet<T> cumulants_forward(const SplitCharPoly<T>& poly, int m);

struct ContourOptions {
  double radius = 0.5;
  int points = 64;
  int real_axis_steps = 16;
  double consistency_tol = 1e-5;
  bool check_halving = true;
};

// c_k = k! times the trapezoidal average of nu(chi) chi^-k over |chi| = r.
template <class T>
CumulantSet<T> cumulants_contour(const TiltedGenerator& gen, int m, const ContourOptions& options = {});

}  // namespace qswiso
