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

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "qswiso/qswiso.h"

namespace {

struct GraphFree {
  void operator()(qsw_graph* g) const { qsw_graph_free(g); }
};
using GraphPtr = std::unique_ptr<qsw_graph, GraphFree>;
struct SpectrumFree {
  void operator()(qsw_spectrum* s) const { qsw_spectrum_free(s); }
};
using SpectrumPtr = std::unique_ptr<qsw_spectrum, SpectrumFree>;

GraphPtr g6(const char* s) {
  qsw_graph* g = nullptr;
  REQUIRE(qsw_graph_from_graph6(s, &g) == QSW_OK);
  return GraphPtr(g);
}

GraphPtr named(const char* name, int param) {
  qsw_graph* g = nullptr;
  REQUIRE(qsw_graph_named(name, param, &g) == QSW_OK);
  return GraphPtr(g);
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(qsw_version()) > 0);
  CHECK(std::string(qsw_status_name(QSW_OK)) == "ok");
  CHECK(qsw_status_is_input_error(QSW_ERR_PARSE));
  CHECK(qsw_status_is_input_error(QSW_ERR_INVALID_ARGUMENT));
  CHECK_FALSE(qsw_status_is_input_error(QSW_ERR_SINGULAR));
  CHECK_FALSE(qsw_status_is_input_error(QSW_OK));
  CHECK(qsw_thread_count() >= 1);
}

TEST_CASE("errors are reported through status and message") {
  qsw_graph* g = nullptr;
  CHECK(qsw_graph_from_graph6("C", &g) == QSW_ERR_PARSE);
  CHECK(g == nullptr);
  CHECK(std::strlen(qsw_last_error()) > 0);
  CHECK(qsw_graph_from_graph6("B?", &g) == QSW_ERR_DISCONNECTED);
  CHECK(qsw_graph_from_graph6(nullptr, &g) == QSW_ERR_INVALID_ARGUMENT);
  CHECK(qsw_graph_from_graph6("Bw", nullptr) == QSW_ERR_INVALID_ARGUMENT);
  CHECK(qsw_graph_named("no-such-family", 3, &g) != QSW_OK);
  qsw_graph_free(nullptr);
  qsw_spectrum_free(nullptr);
}

TEST_CASE("graph handles") {
  const int edges[] = {0, 1, 1, 2, 2, 3};
  qsw_graph* raw = nullptr;
  REQUIRE(qsw_graph_from_edges(4, edges, 3, &raw) == QSW_OK);
  GraphPtr p4(raw);
  CHECK(qsw_graph_order(p4.get()) == 4);
  CHECK(qsw_graph_edge_count(p4.get()) == 3);
  CHECK(qsw_graph_has_edge(p4.get(), 2, 1));
  CHECK_FALSE(qsw_graph_has_edge(p4.get(), 0, 3));
  int back[6];
  CHECK(qsw_graph_edges(p4.get(), back, 3) == QSW_OK);
  CHECK(qsw_graph_edges(p4.get(), back, 2) != QSW_OK);

  size_t needed = 0;
  CHECK(qsw_graph_to_graph6(p4.get(), nullptr, 0, &needed) == QSW_OK);
  REQUIRE(needed > 1);
  std::vector<char> small(needed - 1);
  CHECK(qsw_graph_to_graph6(p4.get(), small.data(), small.size(), &needed) == QSW_ERR_INVALID_ARGUMENT);
  std::vector<char> buf(needed);
  REQUIRE(qsw_graph_to_graph6(p4.get(), buf.data(), buf.size(), &needed) == QSW_OK);
  auto again = g6(buf.data());
  int iso = 0;
  REQUIRE(qsw_graph_isomorphic(p4.get(), again.get(), &iso) == QSW_OK);
  CHECK(iso == 1);

  const int image[] = {3, 1, 0, 2};
  qsw_graph* q = nullptr;
  REQUIRE(qsw_graph_permute(p4.get(), image, &q) == QSW_OK);
  GraphPtr perm(q);
  REQUIRE(qsw_graph_isomorphic(p4.get(), perm.get(), &iso) == QSW_OK);
  CHECK(iso == 1);
  auto star = named("star", 4);
  REQUIRE(qsw_graph_isomorphic(p4.get(), star.get(), &iso) == QSW_OK);
  CHECK(iso == 0);
}

TEST_CASE("spectra, comparison and sweeps") {
  auto p4 = named("path", 4);
  auto star = named("star", 4);
  qsw_spectrum* s = nullptr;
  REQUIRE(qsw_omega_spectrum(p4.get(), 0.5, &s) == QSW_OK);
  SpectrumPtr sp(s);
  CHECK(qsw_spectrum_size(sp.get()) == 16);
  std::vector<double> vals(32);
  REQUIRE(qsw_spectrum_values(sp.get(), vals.data(), 16) == QSW_OK);
  double bound = 0.0;
  REQUIRE(qsw_radius_bound(p4.get(), 0.5, &bound) == QSW_OK);
  CHECK(qsw_spectrum_max_abs(sp.get()) <= bound + 1e-9);

  qsw_spectrum* c = nullptr;
  REQUIRE(qsw_closed_form_spectrum(p4.get(), 0, &c) == QSW_OK);
  SpectrumPtr closed(c);
  REQUIRE(qsw_omega_spectrum(p4.get(), 0.0, &s) == QSW_OK);
  SpectrumPtr numeric(s);
  CHECK(qsw_spectral_distance(closed.get(), numeric.get()) < 1e-8);

  qsw_comparison cmp{};
  REQUIRE(qsw_compare(p4.get(), star.get(), 0.0, 0.0, &cmp) == QSW_OK);
  CHECK(cmp.distinguished == 1);
  CHECK(cmp.tau == QSW_DEFAULT_TAU);
  CHECK(cmp.threshold == doctest::Approx(16 * QSW_DEFAULT_TAU));

  double om[5], de[5];
  REQUIRE(qsw_sweep(p4.get(), p4.get(), 0.0, 1.0, 5, om, de) == QSW_OK);
  CHECK(om[4] == 1.0);
  for (double d : de) CHECK(d < 1e-9);
  auto p3 = named("path", 3);
  CHECK(qsw_compare(p4.get(), p3.get(), 0.5, 0.0, &cmp) == QSW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("cumulants, steady state and reconstruction") {
  auto p3 = named("path", 3);
  const qsw_aux_edge aux{0, 2, 1e-3};
  double fwd[8], ctr[8], consistency = -1.0;
  REQUIRE(qsw_cumulants(p3.get(), 0.5, aux, 8, QSW_CUMULANTS_FORWARD, fwd, nullptr) == QSW_OK);
  REQUIRE(qsw_cumulants(p3.get(), 0.5, aux, 8, QSW_CUMULANTS_CONTOUR, ctr, &consistency) == QSW_OK);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(fwd[k] - ctr[k]) <= 1e-5 * std::abs(fwd[k]));
  CHECK(consistency >= 0.0);
  double rho[3];
  REQUIRE(qsw_steady_state(p3.get(), 0.5, aux, rho) == QSW_OK);
  CHECK(fwd[0] == doctest::Approx(1e-3 * rho[0]).epsilon(1e-9));
  CHECK(qsw_cumulants(p3.get(), 0.5, qsw_aux_edge{0, 1, 1e-3}, 4, QSW_CUMULANTS_FORWARD, fwd, nullptr) ==
        QSW_ERR_INVALID_ARGUMENT);

  auto opts = qsw_reconstruct_defaults();
  qsw_reconstruction* r = nullptr;
  CHECK(qsw_reconstruct(p3.get(), 0.5, aux, &opts, &r) == QSW_ERR_SINGULAR);
  CHECK(r == nullptr);
  opts.visible_fallback = 1;
  REQUIRE(qsw_reconstruct(p3.get(), 0.5, aux, &opts, &r) == QSW_OK);
  CHECK(qsw_reconstruction_partial(r) == 1);
  CHECK(qsw_reconstruction_delta(r) < 1e-8);
  CHECK(qsw_reconstruction_q(r)[qsw_reconstruction_degree(r)] == 1.0);
  qsw_spectrum* s = nullptr;
  REQUIRE(qsw_reconstruction_spectrum(r, &s) == QSW_OK);
  CHECK(qsw_spectrum_size(s) == static_cast<size_t>(qsw_reconstruction_degree(r)));
  qsw_spectrum_free(s);
  qsw_reconstruction_free(r);
}

TEST_CASE("simulation and estimators") {
  auto p3 = named("path", 3);
  qsw_simulate_params p{};
  p.omega = 0.5;
  p.aux = qsw_aux_edge{0, 2, 0.01};
  p.dt = 10.0;
  p.windows = 500;
  p.burn_in = -1.0;
  p.seed = 9;
  p.diagnostics = 1;
  qsw_count_record* a = nullptr;
  qsw_count_record* b = nullptr;
  REQUIRE(qsw_simulate(p3.get(), &p, &a) == QSW_OK);
  REQUIRE(qsw_simulate(p3.get(), &p, &b) == QSW_OK);
  REQUIRE(qsw_count_record_windows(a) == 500);
  CHECK(std::memcmp(qsw_count_record_counts(a), qsw_count_record_counts(b), 500 * sizeof(int64_t)) == 0);
  double burn = 0.0;
  REQUIRE(qsw_default_burn_in(p3.get(), 0.5, p.aux, &burn) == QSW_OK);
  CHECK(qsw_count_record_burn_in(a) == burn);
  CHECK(qsw_count_record_diagnostics(a).max_survival_error < 1e-9);
  double v[2], se[2];
  REQUIRE(qsw_k_statistics(qsw_count_record_counts(a), 500, 10.0, 2, v, se) == QSW_OK);
  CHECK(v[0] > 0.0);
  CHECK(se[1] > 0.0);
  CHECK(qsw_k_statistics(qsw_count_record_counts(a), 500, 10.0, 5, v, se) == QSW_ERR_INVALID_ARGUMENT);
  qsw_count_record_free(a);
  qsw_count_record_free(b);
  p.dt = -1.0;
  CHECK(qsw_simulate(p3.get(), &p, &a) == QSW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("catalogs and search") {
  qsw_catalog* c = nullptr;
  REQUIRE(qsw_catalog_generate(6, 0, &c) == QSW_OK);
  CHECK(qsw_catalog_size(c) == 112);
  auto opts = qsw_search_defaults();
  opts.invariants = QSW_INVARIANT_L;
  qsw_search_report* rep = nullptr;
  REQUIRE(qsw_search(c, &opts, &rep) == QSW_OK);
  CHECK(qsw_search_pair_count(rep) > 0);
  CHECK(qsw_search_violation_count(rep) == 0);
  const qsw_pair first = qsw_search_pair(rep, 0);
  CHECK((first.ties & QSW_INVARIANT_L) != 0);
  CHECK(std::string(first.graph6_first) == qsw_catalog_graph6(c, first.first));
  qsw_class_counts classes{};
  CHECK(qsw_search_classes(rep, &classes) == 0);
  qsw_search_report_free(rep);
  qsw_catalog_free(c);

  REQUIRE(qsw_catalog_parse("Bw\nBg\nBw\n", &c) == QSW_OK);
  opts = qsw_search_defaults();
  opts.all_pairs = 1;
  REQUIRE(qsw_search(c, &opts, &rep) == QSW_OK);
  CHECK(qsw_search_duplicate_count(rep) == 1);
  size_t i = 9, j = 9;
  REQUIRE(qsw_search_duplicate(rep, 0, &i, &j) == QSW_OK);
  CHECK(i == 0);
  CHECK(j == 2);
  CHECK(qsw_search_classes(rep, &classes) == 1);
  qsw_search_report_free(rep);
  qsw_catalog_free(c);
  CHECK(qsw_catalog_parse("Bw\nzz\n", &c) == QSW_ERR_PARSE);
}
