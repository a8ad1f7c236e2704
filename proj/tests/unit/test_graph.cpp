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
#include <random>

#include "error.hpp"
#include "graph.hpp"
#include "search.hpp"
#include "support.hpp"

using namespace qswiso;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::numerical;
}

Graph path(int n) { return named_graph("path", n); }

}  // namespace

TEST_CASE("graph6 decodes the triangle") {
  const Graph g = parse_graph6("Bw");
  CHECK(g.order() == 3);
  CHECK(g.edges() == std::vector<VertexPair>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(encode_graph6(g) == "Bw");
}

TEST_CASE("graph6 decodes P3 and larger graphs") {
  CHECK(parse_graph6("Bg") == path(3));
  CHECK(encode_graph6(named_graph("shrikhande")).size() == 1 + (16 * 15 / 2 + 5) / 6);
  CHECK(parse_graph6(encode_graph6(named_graph("rook4"))) == named_graph("rook4"));
}

TEST_CASE("graph6 rejects malformed input") {
  // "A_" is K2; "A" lacks its payload byte and "A__" has one too many.
  CHECK(parse_graph6("A_") == named_graph("complete", 2));
  CHECK(code_of([] { parse_graph6("A"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse_graph6("A__"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse_graph6("C"); }) == ErrorCode::parse);      // truncated: n = 4 needs 1 byte
  CHECK(code_of([] { parse_graph6("Bw~"); }) == ErrorCode::parse);    // trailing byte
  CHECK(code_of([] { parse_graph6(""); }) == ErrorCode::parse);
  CHECK(code_of([] { parse_graph6("B\x01"); }) == ErrorCode::parse);  // non-printable
  CHECK(code_of([] { parse_graph6("~"); }) == ErrorCode::parse);      // long form
  CHECK(code_of([] { parse_graph6("Bx"); }) == ErrorCode::parse);     // padding bits set
}

TEST_CASE("graph6 rejects disconnected graphs with a distinct error") {
  CHECK(code_of([] { parse_graph6("B?"); }) == ErrorCode::disconnected);
  CHECK(decode_graph6("B?").edges.empty());
}

TEST_CASE("graph6 round trip over the full n <= 6 catalog") {
  for (const auto& g : connected_graphs_up_to(6)) {
    const std::string line = encode_graph6(g);
    CHECK(encode_graph6(parse_graph6(line)) == line);
  }
  for (const auto& rows : all_graphs(5)) {
    RawGraph raw{5, {}};
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (rows[static_cast<std::size_t>(i)] >> j & 1U) raw.edges.emplace_back(i, j);
    const std::string line = encode_graph6(raw);
    CHECK(encode_graph6(decode_graph6(line)) == line);
  }
}

TEST_CASE("construction rejects loops, multi-edges and bad vertices") {
  const std::vector<VertexPair> loop{{0, 0}, {0, 1}};
  const std::vector<VertexPair> multi{{0, 1}, {1, 0}};
  const std::vector<VertexPair> range{{0, 2}};
  const std::vector<VertexPair> split{{0, 1}, {2, 3}};
  CHECK(code_of([&] { Graph::from_edges(2, loop); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { Graph::from_edges(2, multi); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { Graph::from_edges(2, range); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { Graph::from_edges(4, split); }) == ErrorCode::disconnected);
  CHECK(code_of([&] { Graph::from_edges(0, {}); }) == ErrorCode::invalid_argument);
  CHECK(Graph::from_edges(1, {}).order() == 1);
}

TEST_CASE("matrix representations") {
  const Graph k2 = named_graph("complete", 2);
  CHECK(adjacency(k2) == (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished());
  CHECK(laplacian(path(3)) == (Eigen::MatrixXd(3, 3) << 1, -1, 0, -1, 2, -1, 0, -1, 1).finished());
  CHECK(signless_laplacian(path(3)) == (Eigen::MatrixXd(3, 3) << 1, 1, 0, 1, 2, 1, 0, 1, 1).finished());
  CHECK(complement_adjacency(path(3)) == (Eigen::MatrixXd(3, 3) << 0, 0, 1, 0, 0, 0, 1, 0, 0).finished());
}

TEST_CASE("representation invariants on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const Graph g = testing::random_connected_graph(n, rng);
    const auto a = adjacency(g);
    const auto l = laplacian(g);
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(a == a.transpose());
    CHECK(signless_laplacian(g) == signless_laplacian(g).transpose());
    CHECK(complement_adjacency(g) == complement_adjacency(g).transpose());
    CHECK((complement_adjacency(g) + a + Eigen::MatrixXd::Identity(n, n)).minCoeff() == 1.0);
  }
}

TEST_CASE("permutations") {
  const Graph p3 = path(3);
  CHECK(apply_permutation(p3, Permutation::identity(3)) == p3);
  const Graph relabeled = apply_permutation(p3, Permutation({2, 1, 0}));
  CHECK(relabeled.degree_multiset() == p3.degree_multiset());
  CHECK(relabeled == p3);  // reversal maps the path onto itself

  CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
  CHECK(code_of([&] { apply_permutation(p3, Permutation::identity(4)); }) == ErrorCode::invalid_argument);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Graph g = testing::random_connected_graph(n, rng);
    const Permutation p = testing::random_permutation(n, rng);
    const Graph h = apply_permutation(g, p);
    CHECK(h.edge_count() == g.edge_count());
    CHECK(h.degree_multiset() == g.degree_multiset());
    // A' = Pi A Pi^T with Pi[p(k)][k] = 1.
    Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) pi(p(k), k) = 1.0;
    CHECK(adjacency(h) == pi * adjacency(g) * pi.transpose());
    CHECK(apply_permutation(h, p.inverse()) == g);
    CHECK(are_isomorphic_bruteforce(g, h));
  }
}

TEST_CASE("named graphs") {
  const Graph s = named_graph("shrikhande");
  const Graph r = named_graph("rook4");
  CHECK(s.order() == 16);
  CHECK(r.order() == 16);
  CHECK(s.edge_count() == 48);
  CHECK(r.edge_count() == 48);
  for (int i = 0; i < 16; ++i) {
    CHECK(s.degree(i) == 6);
    CHECK(r.degree(i) == 6);
  }
  CHECK(named_graph("complete", 2).edges() == std::vector<VertexPair>{{0, 1}});
  CHECK(named_graph("cycle", 4).edge_count() == 4);
  CHECK(named_graph("star", 4).degree_multiset() == std::vector<int>{1, 1, 1, 3});
  CHECK(code_of([] { named_graph("petersen"); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { named_graph("path", 0); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { named_graph("cycle", 2); }) == ErrorCode::invalid_argument);
}

TEST_CASE("shrikhande construction matches its definition") {
  const Graph s = named_graph("shrikhande");
  auto label = [](int a, int b) { return 4 * a + b; };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const int da = (a - c + 4) % 4;
          const int db = (b - d + 4) % 4;
          const bool expect = (da == 1 && db == 0) || (da == 3 && db == 0) || (da == 0 && db == 1) ||
                              (da == 0 && db == 3) || (da == 1 && db == 1) || (da == 3 && db == 3);
          CHECK(s.has_edge(label(a, b), label(c, d)) == expect);
        }
}

TEST_CASE("brute-force isomorphism") {
  CHECK_FALSE(are_isomorphic_bruteforce(path(4), named_graph("star", 4)));
  CHECK(are_isomorphic_bruteforce(path(4), apply_permutation(path(4), Permutation({3, 1, 0, 2}))));
  CHECK_FALSE(are_isomorphic_bruteforce(path(3), path(4)));
  // Catalog entries are pairwise non-isomorphic by construction.
  const auto n6 = connected_graphs(6);
  for (std::size_t i = 0; i < n6.size(); i += 7)
    for (std::size_t j = i + 1; j < n6.size(); j += 11) CHECK_FALSE(are_isomorphic_bruteforce(n6[i], n6[j]));
  const Graph big = named_graph("path", 11);
  CHECK(code_of([&] { are_isomorphic_bruteforce(big, big); }) == ErrorCode::size_limit);
}

TEST_CASE("brute-force isomorphism separates the strongly regular pair") {
  // n = 16 exceeds the brute-force limit, so the search refuses; the pair is
  // told apart instead by the induced neighbourhood of a vertex (a 6-cycle in
  // the Shrikhande graph, two triangles in the rook graph).
  const Graph s = named_graph("shrikhande");
  const Graph r = named_graph("rook4");
  CHECK(code_of([&] { are_isomorphic_bruteforce(s, r); }) == ErrorCode::size_limit);
  auto neighbourhood_connected = [](const Graph& g, int v) {
    std::vector<int> nb;
    for (int k = 0; k < g.order(); ++k)
      if (g.has_edge(v, k)) nb.push_back(k);
    std::vector<VertexPair> induced;
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (g.has_edge(nb[a], nb[b])) induced.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return is_connected(static_cast<int>(nb.size()), induced);
  };
  for (int v = 0; v < 16; ++v) {
    CHECK(neighbourhood_connected(s, v));
    CHECK_FALSE(neighbourhood_connected(r, v));
  }
}
