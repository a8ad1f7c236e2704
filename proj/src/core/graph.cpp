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

#include "graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>

#include "error.hpp"

namespace qswiso {

bool is_connected(int n, std::span<const VertexPair> edges) {
  if (n <= 0) return false;
  std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
  for (auto [i, j] : edges) {
    nbrs[static_cast<std::size_t>(i)].push_back(j);
    nbrs[static_cast<std::size_t>(j)].push_back(i);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int k = frontier.front();
    frontier.pop();
    for (int w : nbrs[static_cast<std::size_t>(k)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

Graph Graph::from_edges(int n, std::span<const VertexPair> edges) {
  require(n > 0, ErrorCode::invalid_argument, "graph must have at least one vertex");
  Graph g;
  g.n_ = n;
  g.adjacency_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  g.degrees_.assign(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : edges) {
    require(a >= 0 && a < n && b >= 0 && b < n, ErrorCode::invalid_argument,
            "edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range for n=" +
                std::to_string(n));
    require(a != b, ErrorCode::invalid_argument, "self-loop at vertex " + std::to_string(a));
    int i = std::min(a, b);
    int j = std::max(a, b);
    auto& cell = g.adjacency_[static_cast<std::size_t>(i * n + j)];
    require(cell == 0, ErrorCode::invalid_argument,
            "duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
    cell = 1;
    g.adjacency_[static_cast<std::size_t>(j * n + i)] = 1;
    ++g.degrees_[static_cast<std::size_t>(i)];
    ++g.degrees_[static_cast<std::size_t>(j)];
    g.edges_.emplace_back(i, j);
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  require(is_connected(n, g.edges_), ErrorCode::disconnected, "graph is not connected");
  return g;
}

bool Graph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return false;
  return adjacency_[static_cast<std::size_t>(i * n_ + j)] != 0;
}

std::vector<int> Graph::degree_multiset() const {
  std::vector<int> d = degrees_;
  std::sort(d.begin(), d.end());
  return d;
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<char> hit(image_.size(), 0);
  for (int k : image_) {
    require(k >= 0 && static_cast<std::size_t>(k) < image_.size() && !hit[static_cast<std::size_t>(k)],
            ErrorCode::invalid_argument, "permutation image is not a bijection");
    hit[static_cast<std::size_t>(k)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t k = 0; k < image_.size(); ++k) inv[static_cast<std::size_t>(image_[k])] = static_cast<int>(k);
  return Permutation(std::move(inv));
}

// --- graph6 ---------------------------------------------------------------

RawGraph decode_graph6(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  if (line.starts_with(">>graph6<<")) line.remove_prefix(10);
  require(!line.empty(), ErrorCode::parse, "graph6: empty line");
  for (char ch : line) {
    require(ch >= 63 && ch <= 126, ErrorCode::parse,
            "graph6: byte outside the printable range 63..126");
  }
  int n = line[0] - 63;
  require(n != 63, ErrorCode::parse, "graph6: long form (n > 62) is not supported");
  std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
  std::size_t expected = (bits + 5) / 6;
  require(line.size() - 1 == expected, ErrorCode::parse,
          "graph6: payload has " + std::to_string(line.size() - 1) + " bytes, expected " +
              std::to_string(expected) + " for n=" + std::to_string(n));

  RawGraph raw;
  raw.n = n;
  std::size_t k = 0;
  auto bit = [&](std::size_t index) {
    int chunk = line[1 + index / 6] - 63;
    return (chunk >> (5 - static_cast<int>(index % 6))) & 1;
  };
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if (bit(k)) raw.edges.emplace_back(i, j);
    }
  }
  for (; k < expected * 6; ++k) {
    require(bit(k) == 0, ErrorCode::parse, "graph6: nonzero padding bits");
  }
  std::sort(raw.edges.begin(), raw.edges.end());
  return raw;
}

std::string encode_graph6(const RawGraph& raw) {
  require(raw.n >= 0 && raw.n <= 62, ErrorCode::invalid_argument,
          "graph6 short form supports n <= 62");
  const auto n = static_cast<std::size_t>(raw.n);
  std::vector<char> upper(n * n, 0);
  for (auto [a, b] : raw.edges) {
    auto i = static_cast<std::size_t>(std::min(a, b));
    auto j = static_cast<std::size_t>(std::max(a, b));
    upper[i * n + j] = 1;
  }
  std::string out(1, static_cast<char>(63 + raw.n));
  int chunk = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      chunk = (chunk << 1) | upper[i * n + j];
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + chunk));
        chunk = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (chunk << (6 - filled))));
  return out;
}

Graph parse_graph6(std::string_view line) { return Graph::from_raw(decode_graph6(line)); }

// --- matrix representations -----------------------------------------------

Eigen::MatrixXd adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.order(), g.order());
  for (auto [i, j] : g.edges()) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd l = -adjacency(g);
  for (int i = 0; i < g.order(); ++i) l(i, i) = g.degree(i);
  return l;
}

Eigen::MatrixXd signless_laplacian(const Graph& g) {
  Eigen::MatrixXd q = adjacency(g);
  for (int i = 0; i < g.order(); ++i) q(i, i) = g.degree(i);
  return q;
}

Eigen::MatrixXd complement_adjacency(const Graph& g) {
  const int n = g.order();
  return Eigen::MatrixXd::Ones(n, n) - adjacency(g) - Eigen::MatrixXd::Identity(n, n);
}

Graph apply_permutation(const Graph& g, const Permutation& p) {
  require(p.size() == g.order(), ErrorCode::invalid_argument,
          "permutation length " + std::to_string(p.size()) + " does not match n=" +
              std::to_string(g.order()));
  std::vector<VertexPair> edges;
  edges.reserve(g.edge_count());
  for (auto [a, b] : g.edges()) edges.emplace_back(p(a), p(b));
  return Graph::from_edges(g.order(), edges);
}

// --- fixtures -------------------------------------------------------------

namespace {

Graph shrikhande() {
  // Cayley graph of Z4 x Z4 with connection set +-{(1,0),(0,1),(1,1)}.
  constexpr int kSteps[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  std::vector<VertexPair> edges;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (const auto& step : kSteps) {
        int c = (a + step[0]) % 4;
        int d = (b + step[1]) % 4;
        int x = 4 * a + b;
        int y = 4 * c + d;
        if (x < y) edges.emplace_back(x, y);
        else edges.emplace_back(y, x);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(16, edges);
}

Graph rook4() {
  std::vector<VertexPair> edges;
  for (int x = 0; x < 16; ++x) {
    for (int y = x + 1; y < 16; ++y) {
      if (x / 4 == y / 4 || x % 4 == y % 4) edges.emplace_back(x, y);
    }
  }
  return Graph::from_edges(16, edges);
}

}  // namespace

Graph named_graph(std::string_view name, int param) {
  std::vector<VertexPair> edges;
  if (name == "shrikhande") return shrikhande();
  if (name == "rook4" || name == "L2(4)") return rook4();
  if (name == "path") {
    require(param >= 1, ErrorCode::invalid_argument, "path needs n >= 1");
    for (int i = 0; i + 1 < param; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(param, edges);
  }
  if (name == "cycle") {
    require(param >= 3, ErrorCode::invalid_argument, "cycle needs n >= 3");
    for (int i = 0; i < param; ++i) edges.emplace_back(i, (i + 1) % param);
    return Graph::from_edges(param, edges);
  }
  if (name == "complete") {
    require(param >= 1, ErrorCode::invalid_argument, "complete needs n >= 1");
    for (int i = 0; i < param; ++i)
      for (int j = i + 1; j < param; ++j) edges.emplace_back(i, j);
    return Graph::from_edges(param, edges);
  }
  if (name == "star") {
    require(param >= 2, ErrorCode::invalid_argument, "star needs n >= 2");
    for (int i = 1; i < param; ++i) edges.emplace_back(0, i);
    return Graph::from_edges(param, edges);
  }
  fail(ErrorCode::invalid_argument, "unknown graph name '" + std::string(name) + "'");
}

// --- brute-force isomorphism ----------------------------------------------

namespace {

// Degree plus sorted neighbour degrees; equal for corresponding vertices.
std::vector<std::vector<int>> vertex_profiles(std::span<const std::uint16_t> rows) {
  const auto n = rows.size();
  std::vector<std::vector<int>> profile(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& p = profile[v];
    p.push_back(std::popcount(rows[v]));
    for (std::size_t w = 0; w < n; ++w)
      if (rows[v] >> w & 1U) p.push_back(std::popcount(rows[w]));
    std::sort(p.begin() + 1, p.end());
  }
  return profile;
}

class IsomorphismSearch {
 public:
  IsomorphismSearch(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b)
      : a_(a), b_(b), pa_(vertex_profiles(a)), pb_(vertex_profiles(b)) {
    const auto n = a.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    // Most constrained first.
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      return std::popcount(a_[static_cast<std::size_t>(x)]) > std::popcount(a_[static_cast<std::size_t>(y)]);
    });
    map_.assign(n, -1);
    used_.assign(n, 0);
  }

  bool run() {
    auto sorted_a = pa_;
    auto sorted_b = pb_;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    return sorted_a == sorted_b && extend(0);
  }

 private:
  bool edge(std::span<const std::uint16_t> rows, int i, int j) const {
    return (rows[static_cast<std::size_t>(i)] >> j & 1U) != 0;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const int v = order_[depth];
    for (int w = 0; w < static_cast<int>(b_.size()); ++w) {
      if (used_[static_cast<std::size_t>(w)] || pa_[static_cast<std::size_t>(v)] != pb_[static_cast<std::size_t>(w)])
        continue;
      bool consistent = true;
      for (std::size_t k = 0; k < depth && consistent; ++k) {
        int x = order_[k];
        consistent = edge(a_, v, x) == edge(b_, w, map_[static_cast<std::size_t>(x)]);
      }
      if (!consistent) continue;
      map_[static_cast<std::size_t>(v)] = w;
      used_[static_cast<std::size_t>(w)] = 1;
      if (extend(depth + 1)) return true;
      used_[static_cast<std::size_t>(w)] = 0;
      map_[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }

  std::span<const std::uint16_t> a_;
  std::span<const std::uint16_t> b_;
  std::vector<std::vector<int>> pa_, pb_;
  std::vector<int> order_, map_;
  std::vector<char> used_;
};

std::vector<std::uint16_t> adjacency_rows(const Graph& g) {
  std::vector<std::uint16_t> rows(static_cast<std::size_t>(g.order()), 0);
  for (const auto& [i, j] : g.edges()) {
    rows[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(rows[static_cast<std::size_t>(i)] | (1U << j));
    rows[static_cast<std::size_t>(j)] = static_cast<std::uint16_t>(rows[static_cast<std::size_t>(j)] | (1U << i));
  }
  return rows;
}

}  // namespace

bool are_isomorphic_rows(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b) {
  require(static_cast<int>(a.size()) <= kBruteForceIsomorphismLimit &&
              static_cast<int>(b.size()) <= kBruteForceIsomorphismLimit,
          ErrorCode::size_limit, "brute-force isomorphism is limited to n <= 10");
  if (a.size() != b.size()) return false;
  return IsomorphismSearch(a, b).run();
}

bool are_isomorphic_bruteforce(const Graph& a, const Graph& b) {
  require(a.order() <= kBruteForceIsomorphismLimit && b.order() <= kBruteForceIsomorphismLimit,
          ErrorCode::size_limit, "brute-force isomorphism is limited to n <= 10");
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  if (a.degree_multiset() != b.degree_multiset()) return false;
  const auto ra = adjacency_rows(a);
  const auto rb = adjacency_rows(b);
  return IsomorphismSearch(ra, rb).run();
}

}  // namespace qswiso
