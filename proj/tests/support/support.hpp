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

// Shared helpers for the test suites: random graphs, independent oracles
// (Gillespie simulation, two-sample Kolmogorov-Smirnov), spectrum matching.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "graph.hpp"
#include "liouville.hpp"
#include "spectral.hpp"

namespace qswiso::testing {

// Connected G(n, p) sample: a random spanning tree plus independent extra
// edges with probability p.
Graph random_connected_graph(int n, std::mt19937_64& rng, double p = 0.4);
Permutation random_permutation(int n, std::mt19937_64& rng);

// First non-adjacent ordered pair (u, v) in lexicographic order, if any.
std::optional<AuxEdge> first_admissible_edge(const Graph& g, double epsilon);
std::vector<AuxEdge> admissible_edges(const Graph& g, double epsilon);

// Classical continuous-time Markov chain at omega = 0: each directed graph
// edge jumps at rate 1, the auxiliary edge at rate epsilon. Counts
// auxiliary jumps per window after burn-in, starting from vertex 0.
std::vector<std::int64_t> gillespie_counts(const Graph& g, const AuxEdge& aux, double dt, std::int64_t windows,
                                           double burn_in, std::uint64_t seed);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

// Two-sample KS with the asymptotic Kolmogorov distribution (conservative
// for discrete data).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Max over a of the distance to the nearest element of b, with greedy
// one-to-one matching.
double matching_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

// Eigenvalues of a real symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m);

}  // namespace qswiso::testing
