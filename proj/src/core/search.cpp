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

#include "search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "error.hpp"
#include "liouville.hpp"
#include "parallel.hpp"

namespace qswiso {

std::string to_string(Invariant inv) {
  switch (inv) {
    case Invariant::adjacency: return "A";
    case Invariant::laplacian: return "L";
    case Invariant::signless_laplacian: return "Q";
    case Invariant::complement: return "Abar";
  }
  return "?";
}

Invariant parse_invariant(std::string_view name) {
  if (name == "A") return Invariant::adjacency;
  if (name == "L") return Invariant::laplacian;
  if (name == "Q" || name == "|L|" || name == "absL") return Invariant::signless_laplacian;
  if (name == "Abar" || name == "complement") return Invariant::complement;
  fail(ErrorCode::invalid_argument, "unknown invariant '" + std::string(name) + "' (expected A, L, Q or Abar)");
}

IntPoly integer_char_poly(int n, const std::vector<std::int64_t>& m) {
  require(static_cast<int>(m.size()) == n * n, ErrorCode::invalid_argument, "matrix size mismatch");
  using Wide = __int128;
  const auto un = static_cast<std::size_t>(n);
  std::vector<Wide> a(m.begin(), m.end());
  std::vector<Wide> acc(un * un, 0);  // M_k
  std::vector<Wide> prod(un * un, 0);
  for (std::size_t i = 0; i < un; ++i) acc[i * un + i] = 1;
  IntPoly c(un + 1, 0);
  c[un] = 1;
  const Wide limit = Wide(1) << 100;
  for (std::size_t k = 1; k <= un; ++k) {
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j) {
        Wide s = 0;
        for (std::size_t l = 0; l < un; ++l) s += a[i * un + l] * acc[l * un + j];
        require(s < limit && s > -limit, ErrorCode::numerical, "integer characteristic polynomial overflow");
        prod[i * un + j] = s;
      }
    Wide trace = 0;
    for (std::size_t i = 0; i < un; ++i) trace += prod[i * un + i];
    require(trace % static_cast<Wide>(k) == 0, ErrorCode::numerical, "non-integral Faddeev-LeVerrier step");
    const Wide ck = -trace / static_cast<Wide>(k);
    require(ck <= INT64_MAX && ck >= INT64_MIN, ErrorCode::numerical, "characteristic coefficient overflow");
    c[un - k] = static_cast<std::int64_t>(ck);
    acc = prod;
    for (std::size_t i = 0; i < un; ++i) acc[i * un + i] += ck;
  }
  return c;
}

unsigned Signature::ties(const Signature& other) const {
  unsigned mask = 0;
  if (n != other.n) return 0;
  for (auto inv : kAllInvariants)
    if (poly(inv) == other.poly(inv)) mask |= invariant_bit(inv);
  return mask;
}

Signature signature(std::span<const std::uint16_t> rows) {
  const int n = static_cast<int>(rows.size());
  const auto un = static_cast<std::size_t>(n);
  Signature sig;
  sig.n = n;
  std::vector<std::int64_t> adj(un * un, 0), lap(un * un, 0), sless(un * un, 0), comp(un * un, 0);
  for (std::size_t i = 0; i < un; ++i) {
    const int d = std::popcount(rows[i]);
    sig.degrees.push_back(d);
    for (std::size_t j = 0; j < un; ++j) {
      const bool e = (rows[i] >> j & 1U) != 0;
      adj[i * un + j] = e ? 1 : 0;
      lap[i * un + j] = i == j ? d : (e ? -1 : 0);
      sless[i * un + j] = i == j ? d : (e ? 1 : 0);
      comp[i * un + j] = (i != j && !e) ? 1 : 0;
    }
  }
  std::sort(sig.degrees.begin(), sig.degrees.end());
  sig.polys[0] = integer_char_poly(n, adj);
  sig.polys[1] = integer_char_poly(n, lap);
  sig.polys[2] = integer_char_poly(n, sless);
  sig.polys[3] = integer_char_poly(n, comp);
  return sig;
}

namespace {

std::vector<std::uint16_t> rows_of(const Graph& g) {
  std::vector<std::uint16_t> rows(static_cast<std::size_t>(g.order()), 0);
  for (const auto& [i, j] : g.edges()) {
    rows[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(rows[static_cast<std::size_t>(i)] | (1U << j));
    rows[static_cast<std::size_t>(j)] = static_cast<std::uint16_t>(rows[static_cast<std::size_t>(j)] | (1U << i));
  }
  return rows;
}

RawGraph raw_of(std::span<const std::uint16_t> rows) {
  RawGraph raw;
  raw.n = static_cast<int>(rows.size());
  for (int i = 0; i < raw.n; ++i)
    for (int j = i + 1; j < raw.n; ++j)
      if (rows[static_cast<std::size_t>(i)] >> j & 1U) raw.edges.emplace_back(i, j);
  return raw;
}

template <class V>
void append_bytes(std::string& key, const V& values) {
  for (auto v : values) {
    const auto x = static_cast<std::int64_t>(v);
    key.append(reinterpret_cast<const char*>(&x), sizeof x);
  }
  key.push_back('|');
}

// Isomorphism-invariant bucket key: exact A and L polynomials, degrees and
// per-vertex (degree, triangle count) pairs.
std::string bucket_key(std::span<const std::uint16_t> rows) {
  const auto un = rows.size();
  std::vector<std::int64_t> adj(un * un, 0), lap(un * un, 0);
  std::vector<std::int64_t> local;
  for (std::size_t i = 0; i < un; ++i) {
    const int d = std::popcount(rows[i]);
    int tri = 0;
    for (std::size_t j = 0; j < un; ++j) {
      const bool e = (rows[i] >> j & 1U) != 0;
      adj[i * un + j] = e;
      lap[i * un + j] = i == j ? d : (e ? -1 : 0);
      if (e) tri += std::popcount(static_cast<unsigned>(rows[i] & rows[j]));
    }
    local.push_back(static_cast<std::int64_t>(d) * 1024 + tri / 2);
  }
  std::sort(local.begin(), local.end());
  std::string key;
  append_bytes(key, local);
  append_bytes(key, integer_char_poly(static_cast<int>(un), adj));
  append_bytes(key, integer_char_poly(static_cast<int>(un), lap));
  return key;
}

}  // namespace

Signature signature(const Graph& g) { return signature(rows_of(g)); }

std::vector<std::vector<std::uint16_t>> all_graphs(int n) {
  require(n >= 1 && n <= kCatalogGenerationLimit, ErrorCode::size_limit,
          "catalog generation supports 1 <= n <= " + std::to_string(kCatalogGenerationLimit));
  std::vector<std::vector<std::uint16_t>> level{{0}};
  for (int m = 2; m <= n; ++m) {
    std::vector<std::vector<std::uint16_t>> next;
    std::unordered_map<std::string, std::vector<std::size_t>> buckets;
    const int prev = m - 1;
    for (const auto& g : level) {
      for (unsigned subset = 0; subset < (1U << prev); ++subset) {
        std::vector<std::uint16_t> rows(g);
        rows.push_back(static_cast<std::uint16_t>(subset));
        for (int i = 0; i < prev; ++i)
          if (subset >> i & 1U)
            rows[static_cast<std::size_t>(i)] =
                static_cast<std::uint16_t>(rows[static_cast<std::size_t>(i)] | (1U << prev));
        auto& bucket = buckets[bucket_key(rows)];
        bool seen = false;
        for (std::size_t idx : bucket)
          if (are_isomorphic_rows(next[idx], rows)) {
            seen = true;
            break;
          }
        if (!seen) {
          bucket.push_back(next.size());
          next.push_back(std::move(rows));
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

std::vector<Graph> connected_graphs(int n) {
  std::vector<std::pair<std::string, Graph>> keyed;
  for (const auto& rows : all_graphs(n)) {
    RawGraph raw = raw_of(rows);
    if (!is_connected(raw.n, raw.edges)) continue;
    Graph g = Graph::from_raw(raw);
    keyed.emplace_back(encode_graph6(g), std::move(g));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Graph> out;
  for (auto& [key, g] : keyed) out.push_back(std::move(g));
  return out;
}

std::vector<Graph> connected_graphs_up_to(int n) {
  std::vector<Graph> out;
  for (int m = 1; m <= n; ++m) {
    auto part = connected_graphs(m);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Graph> read_catalog(std::string_view text) {
  std::vector<Graph> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty()) continue;
    try {
      out.push_back(parse_graph6(line));
    } catch (const Error& e) {
      throw Error(e.code(), "catalog line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

namespace {

// Sorted real and imaginary parts; the spectral distance of two spectra is
// the l1 distance of these arrays.
struct SortedParts {
  std::vector<double> re;
  std::vector<double> im;
};

SortedParts sorted_parts(const Spectrum& s) {
  SortedParts p;
  for (const auto& z : s.values()) {
    p.re.push_back(z.real());
    p.im.push_back(z.imag());
  }
  std::sort(p.re.begin(), p.re.end());
  std::sort(p.im.begin(), p.im.end());
  return p;
}

double parts_distance(const SortedParts& a, const SortedParts& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.re.size(); ++i) d += std::abs(a.re[i] - b.re[i]) + std::abs(a.im[i] - b.im[i]);
  return d;
}

}  // namespace

SearchReport search_cospectral(const std::vector<Graph>& catalog, const SearchOptions& options) {
  require(options.allow_oversize || catalog.size() <= options.max_graphs, ErrorCode::size_limit,
          "catalog has " + std::to_string(catalog.size()) + " graphs, above the limit of " +
              std::to_string(options.max_graphs) + "; pass the oversize flag to proceed");
  require(options.omega >= 0.0 && options.omega <= 1.0, ErrorCode::invalid_argument, "omega must lie in [0, 1]");
  require(!options.invariants.empty(), ErrorCode::invalid_argument, "no invariants requested");
  for (const auto& g : catalog)
    require(g.order() <= kBruteForceIsomorphismLimit, ErrorCode::size_limit,
            "catalog graphs must have at most 10 vertices");

  SearchReport rep;
  rep.graphs = catalog.size();
  rep.omega = options.omega;
  rep.tau = options.tau;
  const std::size_t count = catalog.size();

  std::vector<Signature> sigs(count);
  std::vector<SortedParts> parts(count);
  std::vector<std::string> names(count);
  parallel_for(count, [&](std::size_t i) {
    sigs[i] = signature(catalog[i]);
    names[i] = encode_graph6(catalog[i]);
  });
  // Omega-spectra only where a pair needs them.
  std::vector<char> needed(count, options.all_pairs ? 1 : 0);
  auto fill_spectra = [&] {
    parallel_for(count, [&](std::size_t i) {
      if (needed[i] && parts[i].re.empty()) parts[i] = sorted_parts(omega_spectrum(catalog[i], options.omega));
    });
  };

  auto threshold = [&](std::size_t i) {
    const double dim = static_cast<double>(catalog[i].order()) * catalog[i].order();
    return options.tau * dim;
  };
  auto make_record = [&](std::size_t i, std::size_t j) {
    PairRecord r;
    r.first = i;
    r.second = j;
    r.graph6_first = names[i];
    r.graph6_second = names[j];
    r.ties = sigs[i].ties(sigs[j]);
    r.same_degrees = sigs[i].degrees == sigs[j].degrees;
    r.delta = parts_distance(parts[i], parts[j]);
    r.distinguished = r.delta > threshold(i);
    return r;
  };
  auto fully_tied = [&](std::size_t i, std::size_t j) {
    return sigs[i].ties(sigs[j]) == 0xFU && sigs[i].degrees == sigs[j].degrees;
  };

  // Candidate pairs: equal polynomial on any requested invariant.
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (auto inv : options.invariants) {
    std::map<std::pair<int, IntPoly>, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < count; ++i) buckets[{sigs[i].n, sigs[i].poly(inv)}].push_back(i);
    for (const auto& [key, members] : buckets)
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) candidates.emplace_back(members[a], members[b]);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& [i, j] : candidates) needed[i] = needed[j] = 1;
  fill_spectra();

  std::vector<char> isomorphic(candidates.size(), 0);
  std::vector<PairRecord> records(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t k) {
    const auto [i, j] = candidates[k];
    if (fully_tied(i, j) && are_isomorphic_bruteforce(catalog[i], catalog[j])) {
      isomorphic[k] = 1;
      return;
    }
    records[k] = make_record(i, j);
  });
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (isomorphic[k]) rep.duplicates.push_back(candidates[k]);
    else rep.pairs.push_back(std::move(records[k]));
  }

  if (options.all_pairs) {
    // Duplicates are excluded from the classification.
    std::vector<char> duplicate(count, 0);
    for (const auto& d : rep.duplicates) duplicate[d.second] = 1;
    std::vector<ClassCounts> per_row(count);
    std::vector<std::vector<PairRecord>> bad(count);
    parallel_for(count, [&](std::size_t i) {
      if (duplicate[i]) return;
      auto& c = per_row[i];
      for (std::size_t j = i + 1; j < count; ++j) {
        if (duplicate[j] || sigs[j].n != sigs[i].n) continue;
        const unsigned t = sigs[i].ties(sigs[j]);
        if (t == 0xFU && sigs[i].degrees == sigs[j].degrees &&
            are_isomorphic_bruteforce(catalog[i], catalog[j]))
          continue;
        const bool by_a = !(t & invariant_bit(Invariant::adjacency));
        const bool by_l = !(t & invariant_bit(Invariant::laplacian));
        const double delta = parts_distance(parts[i], parts[j]);
        const bool by_omega = delta > threshold(i);
        ++c.pairs;
        c.by_adjacency += by_a;
        c.by_laplacian += by_l;
        c.by_omega += by_omega;
        c.by_adjacency_or_laplacian += by_a || by_l;
        if (!by_a && !by_l) {
          if (by_omega) ++c.omega_only;
          else ++c.indistinguished;
        }
        if ((by_a || by_l) && !(delta > options.containment_factor * threshold(i))) bad[i].push_back(make_record(i, j));
      }
    });
    ClassCounts total;
    for (std::size_t i = 0; i < count; ++i) {
      const auto& c = per_row[i];
      total.pairs += c.pairs;
      total.by_adjacency += c.by_adjacency;
      total.by_laplacian += c.by_laplacian;
      total.by_omega += c.by_omega;
      total.by_adjacency_or_laplacian += c.by_adjacency_or_laplacian;
      total.omega_only += c.omega_only;
      total.indistinguished += c.indistinguished;
      rep.violations.insert(rep.violations.end(), bad[i].begin(), bad[i].end());
    }
    rep.classes = total;
  }
  return rep;
}

std::vector<double> omega_grid(double lo, double hi, int count) {
  require(count >= 1, ErrorCode::invalid_argument, "grid needs at least one point");
  require(lo >= 0.0 && hi <= 1.0 && lo <= hi, ErrorCode::invalid_argument, "grid must satisfy 0 <= lo <= hi <= 1");
  std::vector<double> grid;
  for (int k = 0; k < count; ++k)
    grid.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / (count - 1));
  if (count > 1) grid.back() = hi;
  return grid;
}

std::vector<SweepPoint> delta_sweep(const Graph& a, const Graph& b, const std::vector<double>& grid) {
  require(a.order() == b.order(), ErrorCode::invalid_argument, "graphs must have the same order");
  std::vector<SweepPoint> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    const double w = grid[k];
    out[k] = {w, spectral_distance(omega_spectrum(a, w), omega_spectrum(b, w))};
  });
  return out;
}

}  // namespace qswiso
