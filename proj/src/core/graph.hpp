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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qswiso {

using VertexPair = std::pair<int, int>;

// Undirected simple graph in its raw form: may be disconnected. Used by the
// graph6 codec and catalog enumeration before the connectivity check.
struct RawGraph {
  int n = 0;
  std::vector<VertexPair> edges;  // i < j, sorted
};

// Undirected, simple, connected graph on vertices 0..n-1. Immutable.
class Graph {
 public:
  // Normalizes edge orientation and order. Rejects self-loops, duplicate
  // edges, out-of-range vertices and disconnected graphs.
  static Graph from_edges(int n, std::span<const VertexPair> edges);
  static Graph from_raw(const RawGraph& raw) { return from_edges(raw.n, raw.edges); }

  int order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<VertexPair>& edges() const noexcept { return edges_; }
  bool has_edge(int i, int j) const;
  int degree(int i) const { return degrees_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  std::vector<int> degree_multiset() const;

  RawGraph raw() const { return RawGraph{n_, edges_}; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Graph() = default;

  int n_ = 0;
  std::vector<VertexPair> edges_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<int> degrees_;
};

// Bijection on 0..n-1; vertex k is relabeled to image()[k].
class Permutation {
 public:
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(image_.size()); }
  int operator()(int k) const { return image_.at(static_cast<std::size_t>(k)); }
  const std::vector<int>& image() const noexcept { return image_; }
  Permutation inverse() const;

 private:
  std::vector<int> image_;
};

bool is_connected(int n, std::span<const VertexPair> edges);

// graph6 short form (n <= 62).
RawGraph decode_graph6(std::string_view line);
std::string encode_graph6(const RawGraph& raw);
Graph parse_graph6(std::string_view line);
inline std::string encode_graph6(const Graph& g) { return encode_graph6(g.raw()); }

Eigen::MatrixXd adjacency(const Graph& g);
Eigen::MatrixXd laplacian(const Graph& g);
Eigen::MatrixXd signless_laplacian(const Graph& g);
Eigen::MatrixXd complement_adjacency(const Graph& g);

// Output has edge (p(a), p(b)) for every input edge (a, b), so that its
// adjacency matrix is Pi A Pi^T with Pi[p(k)][k] = 1.
Graph apply_permutation(const Graph& g, const Permutation& p);

// path/cycle/complete/star take the vertex count; shrikhande and rook4 take
// no parameter.
Graph named_graph(std::string_view name, int param = 0);

inline constexpr int kBruteForceIsomorphismLimit = 10;

// Backtracking search over degree-compatible vertex maps; n <= 10.
bool are_isomorphic_bruteforce(const Graph& a, const Graph& b);

// Same search on bitmask adjacency rows (bit j of rows[i] set iff i ~ j).
// Accepts disconnected graphs; n <= 10.
bool are_isomorphic_rows(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b);

}  // namespace qswiso
