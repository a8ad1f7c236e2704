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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"
#include "liouville.hpp"
#include "precision.hpp"

namespace qswiso {

// Multiset of eigenvalues, kept sorted by (real, imag).
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<Complex> values);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Complex>& values() const& noexcept { return values_; }
  std::vector<Complex> values() && noexcept { return std::move(values_); }
  double max_abs() const;
  double max_real() const;

 private:
  std::vector<Complex> values_;
};

// Monic characteristic polynomial; coeffs[i] multiplies nu^i and
// coeffs[degree] == 1.
template <class T>
struct BasicCharPoly {
  std::vector<T> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};
using CharPoly = BasicCharPoly<double>;

template <class T>
CharPoly to_double(const BasicCharPoly<T>& p) {
  CharPoly out;
  out.coeffs.reserve(p.coeffs.size());
  for (const auto& c : p.coeffs) out.coeffs.push_back(to_double(c));
  return out;
}

inline constexpr double kDefaultCospectralTau = 1e-7;
inline constexpr std::size_t kEigenDimLimit = 1024;
inline constexpr int kFaddeevLeverrierDimLimit = 100;

struct ComparisonResult {
  double delta = 0.0;
  bool distinguished = false;
  double omega = 0.0;
  double tau = kDefaultCospectralTau;
  double threshold = 0.0;  // tau * dim
};

// Diagonal similarity with power-of-two scalings that equalizes row and
// column norms; eigenvalues are unchanged.
Eigen::MatrixXcd balance(const Eigen::MatrixXcd& m);

// All eigenvalues of a general complex matrix (balancing followed by the
// Hessenberg/Schur QR iteration).
Spectrum eigenvalues(const Eigen::MatrixXcd& m);
Spectrum eigenvalues(const SuperOperator& s);

// Faddeev-LeVerrier in the complex scalar of T; returns complex coefficients.
template <class T>
std::vector<ComplexT<T>> faddeev_leverrier(const Eigen::MatrixXcd& m);

// Same, on a matrix already held in the working precision.
template <class T>
std::vector<ComplexT<T>> faddeev_leverrier_dense(const DenseMatrix<ComplexT<T>>& a);

// Real characteristic polynomial; throws ErrorCode::numerical if any
// coefficient keeps an imaginary part above imag_tol (relative to
// max(1, |coefficient|)).
template <class T>
BasicCharPoly<T> real_char_poly(const Eigen::MatrixXcd& m, double imag_tol = 1e-9);

template <class T>
BasicCharPoly<T> real_char_poly_dense(const DenseMatrix<ComplexT<T>>& m, double imag_tol = 1e-9);

template <class T>
BasicCharPoly<T> real_part_checked(const std::vector<ComplexT<T>>& c, double imag_tol);

// Faddeev-LeVerrier for dim <= 100, Vieta on the computed eigenvalues beyond.
CharPoly char_poly(const SuperOperator& s);
CharPoly char_poly_from_roots(const Spectrum& roots);

Spectrum omega_spectrum(const Graph& g, double omega);
Spectrum closed_form_classical_spectrum(const Graph& g);
Spectrum closed_form_quantum_spectrum(const Graph& g);

// Sum of absolute differences of the independently sorted real parts and
// independently sorted imaginary parts.
double spectral_distance(const Spectrum& a, const Spectrum& b);

double radius_bound(const Graph& g, double omega);

ComparisonResult compare_spectra(const Spectrum& a, const Spectrum& b, double omega,
                                 double tau = kDefaultCospectralTau);
ComparisonResult compare(const Graph& a, const Graph& b, double omega,
                         double tau = kDefaultCospectralTau);

// Number of clusters when values closer than tol are merged transitively.
std::size_t count_distinct(const Spectrum& s, double tol);

// Largest distance between a value and its partner in a greedy matching of
// the spectrum against its complex conjugate.
double conjugation_defect(const Spectrum& s);

// Smallest |Re nu| over eigenvalues with |nu| > zero_tol (relaxation rate).
double spectral_gap(const Spectrum& s, double zero_tol = 1e-9);

}  // namespace qswiso
