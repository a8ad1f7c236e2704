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
#include <optional>

#include <Eigen/Dense>

#include "graph.hpp"
#include "precision.hpp"

namespace qswiso {

using Complex = std::complex<double>;

// Directed auxiliary (counting) edge u -> v with weight epsilon.
struct AuxEdge {
  int from = 0;
  int to = 0;
  double epsilon = 1e-3;
};

inline constexpr double kDefaultEpsilon = 1e-3;

struct GeneratorMeta {
  double omega = 0.0;
  std::optional<AuxEdge> aux;
  double chi = 0.0;
};

// Dense matrix of a Liouville-space superoperator over the dyad basis
// |i><j| -> index dyad_index(i, j, n).
struct SuperOperator {
  int n = 0;
  Eigen::MatrixXcd entries;
  GeneratorMeta meta;

  int dim() const noexcept { return n * n; }
};

int dyad_index(int i, int j, int n);

// -i[A, rho].
SuperOperator build_quantum(const Graph& g);

// Lindblad dissipator with one jump |j><i| per ordered pair (i, j) in E.
SuperOperator build_classical(const Graph& g);

// Dissipator of the directed counting edge; the gain |u><u| -> |v><v| is
// weighted by epsilon * exp(chi).
SuperOperator build_aux(int n, int u, int v, double epsilon, double chi);

// omega * quantum + (1 - omega) * classical [+ aux(chi)].
SuperOperator compose(const Graph& g, double omega, const std::optional<AuxEdge>& aux = std::nullopt,
                      double chi = 0.0);

// Row/column of the single counting-field dependent entry.
struct TiltedEntry {
  int row = 0;
  int col = 0;
};

inline TiltedEntry tilted_entry(int n, const AuxEdge& aux) {
  return {dyad_index(aux.to, aux.to, n), dyad_index(aux.from, aux.from, n)};
}

// Throws unless (u, v) is a valid counting edge for g: distinct in-range
// vertices that are not adjacent, epsilon > 0.
void validate_aux_edge(const Graph& g, const AuxEdge& aux);

// Tilted generator L(chi) = base + epsilon * exp(chi) * E_{row,col}, where
// base has the counting entry zeroed. Evaluates at complex chi.
class TiltedGenerator {
 public:
  TiltedGenerator(const Graph& g, double omega, const AuxEdge& aux);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return n_ * n_; }
  double omega() const noexcept { return omega_; }
  const AuxEdge& aux() const noexcept { return aux_; }
  const Eigen::MatrixXcd& base() const noexcept { return base_; }
  TiltedEntry entry() const noexcept { return entry_; }

  Eigen::MatrixXcd at(Complex chi) const;
  SuperOperator at_real(double chi) const;

  // The generator assembled in the working precision from its structural
  // parts, whose entries are exact in double. Keeps trace preservation to
  // the unit roundoff of T rather than of double.
  template <class T>
  DenseMatrix<ComplexT<T>> exact(const ComplexT<T>& chi) const;

 private:
  int n_;
  double omega_;
  AuxEdge aux_;
  TiltedEntry entry_;
  Eigen::MatrixXcd base_;
  Eigen::MatrixXcd quantum_;
  Eigen::MatrixXcd classical_;
  Eigen::MatrixXcd aux_loss_;  // loss part of the aux dissipator at unit weight
};

template <class T>
DenseMatrix<ComplexT<T>> TiltedGenerator::exact(const ComplexT<T>& chi) const {
  using C = ComplexT<T>;
  const auto d = static_cast<std::size_t>(dim());
  const C w{T(omega_)};
  const C cw = C(T(1)) - w;
  const C eps{T(aux_.epsilon)};
  DenseMatrix<C> m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto c = static_cast<Eigen::Index>(j);
      C v(0);
      if (quantum_(r, c) != 0.0) v += w * make_complex<C>(quantum_(r, c));
      if (classical_(r, c) != 0.0) v += cw * make_complex<C>(classical_(r, c));
      if (aux_loss_(r, c) != 0.0) v += eps * make_complex<C>(aux_loss_(r, c));
      m(i, j) = v;
    }
  }
  using std::exp;
  m(static_cast<std::size_t>(entry_.row), static_cast<std::size_t>(entry_.col)) = eps * exp(chi);
  return m;
}

}  // namespace qswiso
