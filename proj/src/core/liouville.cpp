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

#include "liouville.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace qswiso {

int dyad_index(int i, int j, int n) {
  require(n > 0 && i >= 0 && j >= 0 && i < n && j < n, ErrorCode::invalid_argument,
          "dyad index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for n=" +
              std::to_string(n));
  return i * n + j;
}

SuperOperator build_quantum(const Graph& g) {
  const int n = g.order();
  SuperOperator s{n, Eigen::MatrixXcd::Zero(n * n, n * n), {1.0, std::nullopt, 0.0}};
  const Complex minus_i(0.0, -1.0);
  // (A rho - rho A)_{ij} = sum_k A_ik rho_kj - rho_ik A_kj
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int row = dyad_index(i, j, n);
      for (int k = 0; k < n; ++k) {
        if (g.has_edge(i, k)) s.entries(row, dyad_index(k, j, n)) += minus_i;
        if (g.has_edge(k, j)) s.entries(row, dyad_index(i, k, n)) -= minus_i;
      }
    }
  }
  return s;
}

SuperOperator build_classical(const Graph& g) {
  const int n = g.order();
  SuperOperator s{n, Eigen::MatrixXcd::Zero(n * n, n * n), {0.0, std::nullopt, 0.0}};
  for (auto [a, b] : g.edges()) {
    for (auto [i, j] : {VertexPair{a, b}, VertexPair{b, a}}) {
      // Jump |j><i|: gain rho_ii -> |j><j|, loss -1/2 {|i><i|, rho}.
      s.entries(dyad_index(j, j, n), dyad_index(i, i, n)) += 1.0;
      for (int k = 0; k < n; ++k) {
        s.entries(dyad_index(i, k, n), dyad_index(i, k, n)) -= 0.5;
        s.entries(dyad_index(k, i, n), dyad_index(k, i, n)) -= 0.5;
      }
    }
  }
  return s;
}

SuperOperator build_aux(int n, int u, int v, double epsilon, double chi) {
  require(u != v, ErrorCode::invalid_argument, "auxiliary edge needs distinct endpoints");
  require(epsilon > 0.0, ErrorCode::invalid_argument, "auxiliary edge weight must be positive");
  SuperOperator s{n, Eigen::MatrixXcd::Zero(n * n, n * n), {0.0, AuxEdge{u, v, epsilon}, chi}};
  s.entries(dyad_index(v, v, n), dyad_index(u, u, n)) += epsilon * std::exp(chi);
  for (int k = 0; k < n; ++k) {
    s.entries(dyad_index(u, k, n), dyad_index(u, k, n)) -= 0.5 * epsilon;
    s.entries(dyad_index(k, u, n), dyad_index(k, u, n)) -= 0.5 * epsilon;
  }
  return s;
}

void validate_aux_edge(const Graph& g, const AuxEdge& aux) {
  const int n = g.order();
  require(aux.from >= 0 && aux.from < n && aux.to >= 0 && aux.to < n, ErrorCode::invalid_argument,
          "auxiliary edge endpoint out of range");
  require(aux.from != aux.to, ErrorCode::invalid_argument, "auxiliary edge needs distinct endpoints");
  require(!g.has_edge(aux.from, aux.to), ErrorCode::invalid_argument,
          "auxiliary edge (" + std::to_string(aux.from) + "," + std::to_string(aux.to) +
              ") is already an edge of the graph");
  require(aux.epsilon > 0.0, ErrorCode::invalid_argument, "auxiliary edge weight must be positive");
}

SuperOperator compose(const Graph& g, double omega, const std::optional<AuxEdge>& aux, double chi) {
  require(omega >= 0.0 && omega <= 1.0, ErrorCode::invalid_argument,
          "omega must lie in [0, 1], got " + std::to_string(omega));
  const int n = g.order();
  SuperOperator s{n, Eigen::MatrixXcd::Zero(n * n, n * n), {omega, std::nullopt, chi}};
  if (omega > 0.0) s.entries += omega * build_quantum(g).entries;
  if (omega < 1.0) s.entries += (1.0 - omega) * build_classical(g).entries;
  if (aux && aux->epsilon > 0.0) {
    validate_aux_edge(g, *aux);
    s.entries += build_aux(n, aux->from, aux->to, aux->epsilon, chi).entries;
    s.meta.aux = aux;
  }
  return s;
}

TiltedGenerator::TiltedGenerator(const Graph& g, double omega, const AuxEdge& aux)
    : n_(g.order()), omega_(omega), aux_(aux), entry_(tilted_entry(g.order(), aux)) {
  validate_aux_edge(g, aux);
  base_ = compose(g, omega, aux, 0.0).entries;
  // Only the counting gain lives here: u and v are not adjacent.
  base_(entry_.row, entry_.col) = 0.0;
  quantum_ = build_quantum(g).entries;
  classical_ = build_classical(g).entries;
  aux_loss_ = build_aux(n_, aux.from, aux.to, 1.0, 0.0).entries;
  aux_loss_(entry_.row, entry_.col) = 0.0;
}

Eigen::MatrixXcd TiltedGenerator::at(Complex chi) const {
  Eigen::MatrixXcd m = base_;
  m(entry_.row, entry_.col) = aux_.epsilon * std::exp(chi);
  return m;
}

SuperOperator TiltedGenerator::at_real(double chi) const {
  SuperOperator s{n_, at(Complex(chi, 0.0)), {omega_, aux_, chi}};
  return s;
}

}  // namespace qswiso
