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

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qswiso::testing {

Graph random_connected_graph(int n, std::mt19937_64& rng, double p) {
  std::vector<VertexPair> edges;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int k = 1; k < n; ++k) {
    std::uniform_int_distribution<int> pick(0, k - 1);
    edges.emplace_back(order[static_cast<std::size_t>(pick(rng))], order[static_cast<std::size_t>(k)]);
  }
  std::bernoulli_distribution extra(p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool present = std::any_of(edges.begin(), edges.end(), [&](const VertexPair& e) {
        return (e.first == i && e.second == j) || (e.first == j && e.second == i);
      });
      if (!present && extra(rng)) edges.emplace_back(i, j);
    }
  return Graph::from_edges(n, edges);
}

Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(image);
}

std::vector<AuxEdge> admissible_edges(const Graph& g, double epsilon) {
  std::vector<AuxEdge> out;
  for (int u = 0; u < g.order(); ++u)
    for (int v = 0; v < g.order(); ++v)
      if (u != v && !g.has_edge(u, v)) out.push_back({u, v, epsilon});
  return out;
}

std::optional<AuxEdge> first_admissible_edge(const Graph& g, double epsilon) {
  auto all = admissible_edges(g, epsilon);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<std::int64_t> gillespie_counts(const Graph& g, const AuxEdge& aux, double dt, std::int64_t windows,
                                           double burn_in, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(windows), 0);
  const double horizon = burn_in + dt * static_cast<double>(windows);
  int state = 0;
  double t = 0.0;
  while (true) {
    std::vector<std::pair<int, double>> moves;
    for (int j = 0; j < g.order(); ++j)
      if (g.has_edge(state, j)) moves.emplace_back(j, 1.0);
    if (state == aux.from) moves.emplace_back(-1, aux.epsilon);
    double total = 0.0;
    for (const auto& m : moves) total += m.second;
    t += -std::log(1.0 - unit(rng)) / total;
    if (t >= horizon) break;
    double r = unit(rng) * total;
    std::size_t k = 0;
    while (k + 1 < moves.size() && r >= moves[k].second) {
      r -= moves[k].second;
      ++k;
    }
    if (moves[k].first < 0) {
      state = aux.to;
      if (t >= burn_in) {
        const auto w = static_cast<std::int64_t>(std::floor((t - burn_in) / dt));
        if (w >= 0 && w < windows) ++counts[static_cast<std::size_t>(w)];
      }
    } else {
      state = moves[k].first;
    }
  }
  return counts;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  // Q_KS(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2)
  double p = 0.0;
  if (lambda < 0.2) {
    p = 1.0;
  } else {
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
      p += term;
      if (std::abs(term) < 1e-12) break;
      sign = -sign;
    }
    p = std::clamp(2.0 * p, 0.0, 1.0);
  }
  return {d, p};
}

double matching_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t at = b.size();
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      const double dist = std::abs(x - b[k]);
      if (dist < best) {
        best = dist;
        at = k;
      }
    }
    if (at == b.size()) return std::numeric_limits<double>::infinity();
    used[at] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

}  // namespace qswiso::testing
