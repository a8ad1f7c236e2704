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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "error.hpp"
#include "search.hpp"
#include "spectral.hpp"

using namespace qswiso;

TEST_CASE("catalog sizes") {
  const std::vector<std::size_t> connected{1, 1, 2, 6, 21, 112, 853};
  const std::vector<std::size_t> all{1, 2, 4, 11, 34, 156, 1044};
  for (int n = 1; n <= 7; ++n) {
    const auto c = connected_graphs(n);
    CHECK(c.size() == connected[static_cast<std::size_t>(n - 1)]);
    CHECK(all_graphs(n).size() == all[static_cast<std::size_t>(n - 1)]);
    std::vector<std::string> names;
    for (const auto& g : c) {
      CHECK(g.order() == n);
      CHECK(is_connected(g.order(), g.edges()));
      names.push_back(encode_graph6(g));
    }
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  }
  CHECK(connected_graphs_up_to(5).size() == 1 + 1 + 2 + 6 + 21);
  CHECK_THROWS_AS(all_graphs(kCatalogGenerationLimit + 1), Error);
}

TEST_CASE("catalog entries are pairwise non-isomorphic") {
  const auto c = connected_graphs(5);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) CHECK_FALSE(are_isomorphic_bruteforce(c[i], c[j]));
}

TEST_CASE("exact characteristic polynomials") {
  // K3 adjacency: x^3 - 3x - 2.
  CHECK(integer_char_poly(3, {0, 1, 1, 1, 0, 1, 1, 1, 0}) == IntPoly{-2, -3, 0, 1});
  // P3 Laplacian, eigenvalues 0, 1, 3.
  CHECK(integer_char_poly(3, {1, -1, 0, -1, 2, -1, 0, -1, 1}) == IntPoly{0, 3, -4, 1});
  CHECK(integer_char_poly(1, {5}) == IntPoly{-5, 1});
  const auto s = signature(named_graph("path", 3));
  CHECK(s.poly(Invariant::laplacian) == IntPoly{0, 3, -4, 1});
  CHECK(s.degrees == std::vector<int>{1, 1, 2});
  // |L| of a bipartite graph is similar to L.
  CHECK(s.poly(Invariant::signless_laplacian) == s.poly(Invariant::laplacian));
}

TEST_CASE("the star and the square plus a point tie on A only") {
  const auto star = named_graph("star", 5);
  // C4 plus an isolated vertex; disconnected, so given as adjacency rows.
  const std::vector<std::uint16_t> square{0b01010, 0b00101, 0b01010, 0b00101, 0};
  const unsigned t = signature(star).ties(signature(square));
  CHECK((t & invariant_bit(Invariant::adjacency)) != 0);
  CHECK((t & invariant_bit(Invariant::laplacian)) == 0);
  CHECK(signature(star).ties(signature(star)) == 0xFU);
}

TEST_CASE("invariant names") {
  for (auto inv : kAllInvariants) CHECK(parse_invariant(to_string(inv)) == inv);
  CHECK(to_string(Invariant::complement) == "Abar");
  CHECK_THROWS_AS(parse_invariant("B"), Error);
}

TEST_CASE("search finds the n = 6 Laplacian tie with different degrees") {
  SearchOptions o;
  o.invariants = {Invariant::laplacian};
  const auto rep = search_cospectral(connected_graphs(6), o);
  CHECK(rep.graphs == 112);
  CHECK(rep.duplicates.empty());
  bool found = false;
  for (const auto& p : rep.pairs) {
    CHECK((p.ties & invariant_bit(Invariant::laplacian)) != 0);
    const std::set<std::string> names{p.graph6_first, p.graph6_second};
    if (names == std::set<std::string>{"ECZo", "ECz_"}) {
      found = true;
      CHECK_FALSE(p.same_degrees);
      CHECK(p.distinguished);
    }
  }
  CHECK(found);
  CHECK(rep.violations.empty());
}

TEST_CASE("all-pairs classification on n = 4") {
  SearchOptions o;
  o.all_pairs = true;
  const auto rep = search_cospectral(connected_graphs(4), o);
  REQUIRE(rep.classes.has_value());
  const auto& c = *rep.classes;
  CHECK(c.pairs == 15);
  CHECK(c.by_adjacency_or_laplacian + c.omega_only + c.indistinguished == c.pairs);
  CHECK(c.indistinguished == 0);
  CHECK(c.by_omega == 15);
  CHECK(rep.violations.empty());
}

TEST_CASE("duplicates, empty catalogs and the size guard") {
  const auto p = named_graph("path", 4);
  const auto q = apply_permutation(p, Permutation({2, 0, 3, 1}));
  const auto rep = search_cospectral(std::vector<Graph>{p, named_graph("star", 4), q});
  REQUIRE(rep.duplicates.size() == 1);
  CHECK(rep.duplicates[0] == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(rep.pairs.empty());

  const auto empty = search_cospectral(std::vector<Graph>{});
  CHECK(empty.graphs == 0);
  CHECK(empty.pairs.empty());

  SearchOptions o;
  o.max_graphs = 5;
  CHECK_THROWS_AS(search_cospectral(connected_graphs(4), o), Error);
  o.allow_oversize = true;
  CHECK_NOTHROW(search_cospectral(connected_graphs(4), o));
}

TEST_CASE("catalog text") {
  const auto c = read_catalog("Bw\n\n  Bg \r\nCF\n");
  REQUIRE(c.size() == 3);
  CHECK(c[2].order() == 4);
  try {
    read_catalog("Bw\nC\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("omega grids and sweeps") {
  const auto g = omega_grid(0.0, 1.0, 101);
  REQUIRE(g.size() == 101);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[50] == doctest::Approx(0.5));
  CHECK(omega_grid(0.3, 0.3, 1) == std::vector<double>{0.3});
  CHECK_THROWS_AS(omega_grid(0.0, 1.0, 0), Error);
  CHECK_THROWS_AS(omega_grid(0.5, 0.2, 5), Error);
  CHECK_THROWS_AS(omega_grid(0.0, 1.5, 5), Error);

  const auto c4 = named_graph("cycle", 4);
  for (const auto& pt : delta_sweep(c4, apply_permutation(c4, Permutation({1, 2, 3, 0})), omega_grid(0.0, 1.0, 11)))
    CHECK(pt.delta < 1e-9);
  const auto sweep = delta_sweep(named_graph("path", 4), named_graph("star", 4), omega_grid(0.0, 1.0, 5));
  for (const auto& pt : sweep) CHECK(pt.delta > 1e-3);
  CHECK_THROWS_AS(delta_sweep(c4, named_graph("path", 3), {0.5}), Error);
}
