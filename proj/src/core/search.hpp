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

// Catalog generation and cospectral-pair search over small graphs.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"
#include "spectral.hpp"

namespace qswiso {

enum class Invariant { adjacency, laplacian, signless_laplacian, complement };

inline constexpr std::array<Invariant, 4> kAllInvariants{Invariant::adjacency, Invariant::laplacian,
                                                         Invariant::signless_laplacian, Invariant::complement};

// Short names: A, L, Q (|L|), Abar.
std::string to_string(Invariant inv);
Invariant parse_invariant(std::string_view name);
inline unsigned invariant_bit(Invariant inv) { return 1U << static_cast<unsigned>(inv); }

using IntPoly = std::vector<std::int64_t>;  // ascending, monic

// Exact characteristic polynomial of a small integer matrix (row-major).
IntPoly integer_char_poly(int n, const std::vector<std::int64_t>& m);

struct Signature {
  int n = 0;
  std::vector<int> degrees;  // sorted
  std::array<IntPoly, 4> polys;

  const IntPoly& poly(Invariant inv) const { return polys[static_cast<std::size_t>(inv)]; }
  // Bitmask of invariants on which two signatures agree.
  unsigned ties(const Signature& other) const;
};

Signature signature(const Graph& g);
Signature signature(std::span<const std::uint16_t> rows);

// All graphs on n vertices up to isomorphism, as adjacency rows, connected
// or not, generated by vertex augmentation.
inline constexpr int kCatalogGenerationLimit = 9;
std::vector<std::vector<std::uint16_t>> all_graphs(int n);
// Connected graphs on n vertices, sorted by graph6 string.
std::vector<Graph> connected_graphs(int n);
std::vector<Graph> connected_graphs_up_to(int n);

std::vector<Graph> read_catalog(std::string_view text);

struct PairRecord {
  std::size_t first = 0;
  std::size_t second = 0;
  std::string graph6_first;
  std::string graph6_second;
  unsigned ties = 0;  // invariant_bit mask over all four invariants
  bool same_degrees = false;
  double delta = 0.0;
  bool distinguished = false;
};

// Pair classes of the distinguishing-power diagram over all non-isomorphic
// pairs with equal order.
struct ClassCounts {
  std::int64_t pairs = 0;
  std::int64_t by_adjacency = 0;
  std::int64_t by_laplacian = 0;
  std::int64_t by_omega = 0;
  std::int64_t by_adjacency_or_laplacian = 0;
  std::int64_t omega_only = 0;      // tied in A and L, distinguished by the omega-spectrum
  std::int64_t indistinguished = 0; // tied in A and L and omega-cospectral
};

struct SearchOptions {
  std::vector<Invariant> invariants{kAllInvariants.begin(), kAllInvariants.end()};
  double omega = 0.5;
  double tau = kDefaultCospectralTau;
  bool all_pairs = false;  // classify every pair, not only invariant ties
  double containment_factor = 10.0;
  std::size_t max_graphs = 20000;
  bool allow_oversize = false;
};

struct SearchReport {
  std::size_t graphs = 0;
  double omega = 0.0;
  double tau = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;  // isomorphic entries
  std::vector<PairRecord> pairs;       // non-isomorphic, tied on at least one requested invariant
  std::optional<ClassCounts> classes;  // when all_pairs
  std::vector<PairRecord> violations;  // distinguished by A or L yet omega-cospectral
};

SearchReport search_cospectral(const std::vector<Graph>& catalog, const SearchOptions& options = {});

struct SweepPoint {
  double omega;
  double delta;
};

// grid of count points from lo to hi inclusive.
std::vector<double> omega_grid(double lo, double hi, int count);
std::vector<SweepPoint> delta_sweep(const Graph& a, const Graph& b, const std::vector<double>& grid);

}  // namespace qswiso
