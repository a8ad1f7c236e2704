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

#include "qswiso/qswiso.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "counting.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "liouville.hpp"
#include "parallel.hpp"
#include "reconstruct.hpp"
#include "search.hpp"
#include "spectral.hpp"
#include "trajectory.hpp"

struct qsw_graph {
  qswiso::Graph g;
};

struct qsw_spectrum {
  qswiso::Spectrum s;
};

struct qsw_reconstruction {
  qswiso::ReconstructionResult r;
};

struct qsw_count_record {
  qswiso::CountRecord r;
};

struct qsw_catalog {
  std::vector<qswiso::Graph> graphs;
  std::vector<std::string> names;
};

struct qsw_search_report {
  qswiso::SearchReport r;
};

namespace {

thread_local std::string last_error;

qsw_status to_status(qswiso::ErrorCode code) {
  using qswiso::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return QSW_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return QSW_ERR_PARSE;
    case ErrorCode::disconnected: return QSW_ERR_DISCONNECTED;
    case ErrorCode::size_limit: return QSW_ERR_SIZE_LIMIT;
    case ErrorCode::not_converged: return QSW_ERR_NOT_CONVERGED;
    case ErrorCode::singular: return QSW_ERR_SINGULAR;
    case ErrorCode::branch_crossing: return QSW_ERR_BRANCH_CROSSING;
    case ErrorCode::numerical: return QSW_ERR_NUMERICAL;
    case ErrorCode::io: return QSW_ERR_IO;
  }
  return QSW_ERR_INTERNAL;
}

template <class F>
qsw_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return QSW_OK;
  } catch (const qswiso::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QSW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QSW_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  qswiso::require(p != nullptr, qswiso::ErrorCode::invalid_argument, std::string(what) + " is null");
}

qswiso::AuxEdge aux_of(qsw_aux_edge a) { return {a.from, a.to, a.epsilon}; }

qsw_pair pair_of(const qswiso::PairRecord& p) {
  return {p.first, p.second, p.graph6_first.c_str(), p.graph6_second.c_str(), p.ties,
          p.same_degrees ? 1 : 0, p.delta, p.distinguished ? 1 : 0};
}

}  // namespace

extern "C" {

const char* qsw_version(void) { return QSWISO_VERSION; }
const char* qsw_last_error(void) { return last_error.c_str(); }

const char* qsw_status_name(qsw_status status) {
  switch (status) {
    case QSW_OK: return "ok";
    case QSW_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QSW_ERR_PARSE: return "parse";
    case QSW_ERR_DISCONNECTED: return "disconnected";
    case QSW_ERR_SIZE_LIMIT: return "size_limit";
    case QSW_ERR_NOT_CONVERGED: return "not_converged";
    case QSW_ERR_SINGULAR: return "singular";
    case QSW_ERR_BRANCH_CROSSING: return "branch_crossing";
    case QSW_ERR_NUMERICAL: return "numerical";
    case QSW_ERR_IO: return "io";
    case QSW_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int qsw_status_is_input_error(qsw_status status) {
  return status == QSW_ERR_INVALID_ARGUMENT || status == QSW_ERR_PARSE || status == QSW_ERR_DISCONNECTED ||
         status == QSW_ERR_SIZE_LIMIT || status == QSW_ERR_IO;
}

// ---- graphs

qsw_status qsw_graph_from_graph6(const char* line, qsw_graph** out) {
  return guarded([&] {
    need(line, "line");
    need(out, "out");
    *out = new qsw_graph{qswiso::parse_graph6(line)};
  });
}

qsw_status qsw_graph_from_edges(int n, const int* edges, size_t edge_count, qsw_graph** out) {
  return guarded([&] {
    need(out, "out");
    if (edge_count > 0) need(edges, "edges");
    std::vector<qswiso::VertexPair> list;
    for (size_t k = 0; k < edge_count; ++k) list.emplace_back(edges[2 * k], edges[2 * k + 1]);
    *out = new qsw_graph{qswiso::Graph::from_edges(n, list)};
  });
}

qsw_status qsw_graph_named(const char* name, int param, qsw_graph** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new qsw_graph{qswiso::named_graph(name, param)};
  });
}

qsw_status qsw_graph_clone(const qsw_graph* g, qsw_graph** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = new qsw_graph{g->g};
  });
}

void qsw_graph_free(qsw_graph* g) { delete g; }
int qsw_graph_order(const qsw_graph* g) { return g ? g->g.order() : 0; }
size_t qsw_graph_edge_count(const qsw_graph* g) { return g ? g->g.edge_count() : 0; }

qsw_status qsw_graph_edges(const qsw_graph* g, int* out, size_t capacity_pairs) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    qswiso::require(capacity_pairs >= g->g.edge_count(), qswiso::ErrorCode::invalid_argument,
                    "output buffer too small");
    size_t k = 0;
    for (const auto& [i, j] : g->g.edges()) {
      out[2 * k] = i;
      out[2 * k + 1] = j;
      ++k;
    }
  });
}

int qsw_graph_has_edge(const qsw_graph* g, int i, int j) { return g && g->g.has_edge(i, j) ? 1 : 0; }

qsw_status qsw_graph_to_graph6(const qsw_graph* g, char* buf, size_t capacity, size_t* needed) {
  return guarded([&] {
    need(g, "graph");
    const std::string s = qswiso::encode_graph6(g->g);
    if (needed) *needed = s.size() + 1;
    if (buf == nullptr) return;
    qswiso::require(capacity > s.size(), qswiso::ErrorCode::invalid_argument, "output buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

qsw_status qsw_graph_permute(const qsw_graph* g, const int* image, qsw_graph** out) {
  return guarded([&] {
    need(g, "graph");
    need(image, "image");
    need(out, "out");
    std::vector<int> img(image, image + g->g.order());
    *out = new qsw_graph{qswiso::apply_permutation(g->g, qswiso::Permutation(img))};
  });
}

qsw_status qsw_graph_isomorphic(const qsw_graph* a, const qsw_graph* b, int* out) {
  return guarded([&] {
    need(a, "graph a");
    need(b, "graph b");
    need(out, "out");
    *out = qswiso::are_isomorphic_bruteforce(a->g, b->g) ? 1 : 0;
  });
}

// ---- spectra

qsw_status qsw_omega_spectrum(const qsw_graph* g, double omega, qsw_spectrum** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = new qsw_spectrum{qswiso::omega_spectrum(g->g, omega)};
  });
}

qsw_status qsw_closed_form_spectrum(const qsw_graph* g, int coherent, qsw_spectrum** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = new qsw_spectrum{coherent ? qswiso::closed_form_quantum_spectrum(g->g)
                                     : qswiso::closed_form_classical_spectrum(g->g)};
  });
}

void qsw_spectrum_free(qsw_spectrum* s) { delete s; }
size_t qsw_spectrum_size(const qsw_spectrum* s) { return s ? s->s.values().size() : 0; }

qsw_status qsw_spectrum_values(const qsw_spectrum* s, double* re_im, size_t capacity_pairs) {
  return guarded([&] {
    need(s, "spectrum");
    need(re_im, "out");
    const auto& v = s->s.values();
    qswiso::require(capacity_pairs >= v.size(), qswiso::ErrorCode::invalid_argument, "output buffer too small");
    for (size_t k = 0; k < v.size(); ++k) {
      re_im[2 * k] = v[k].real();
      re_im[2 * k + 1] = v[k].imag();
    }
  });
}

size_t qsw_spectrum_count_distinct(const qsw_spectrum* s, double tol) {
  return s ? qswiso::count_distinct(s->s, tol) : 0;
}

double qsw_spectrum_max_abs(const qsw_spectrum* s) { return s ? s->s.max_abs() : 0.0; }

double qsw_spectral_distance(const qsw_spectrum* a, const qsw_spectrum* b) {
  if (!a || !b || a->s.values().size() != b->s.values().size()) return -1.0;
  return qswiso::spectral_distance(a->s, b->s);
}

qsw_status qsw_radius_bound(const qsw_graph* g, double omega, double* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = qswiso::radius_bound(g->g, omega);
  });
}

qsw_status qsw_compare(const qsw_graph* a, const qsw_graph* b, double omega, double tau, qsw_comparison* out) {
  return guarded([&] {
    need(a, "graph a");
    need(b, "graph b");
    need(out, "out");
    const auto r = qswiso::compare(a->g, b->g, omega, tau > 0.0 ? tau : qswiso::kDefaultCospectralTau);
    *out = {r.omega, r.delta, r.tau, r.threshold, r.distinguished ? 1 : 0};
  });
}

qsw_status qsw_sweep(const qsw_graph* a, const qsw_graph* b, double lo, double hi, int count, double* omega_out,
                     double* delta_out) {
  return guarded([&] {
    need(a, "graph a");
    need(b, "graph b");
    need(omega_out, "omega_out");
    need(delta_out, "delta_out");
    const auto points = qswiso::delta_sweep(a->g, b->g, qswiso::omega_grid(lo, hi, count));
    for (size_t k = 0; k < points.size(); ++k) {
      omega_out[k] = points[k].omega;
      delta_out[k] = points[k].delta;
    }
  });
}

// ---- counting

qsw_status qsw_cumulants(const qsw_graph* g, double omega, qsw_aux_edge aux, int order, qsw_cumulant_method method,
                         double* out, double* consistency) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    qswiso::CumulantSet<qswiso::Extended> set;
    if (method == QSW_CUMULANTS_CONTOUR) {
      qswiso::TiltedGenerator gen(g->g, omega, aux_of(aux));
      set = qswiso::cumulants_contour<qswiso::Extended>(gen, order);
    } else {
      set = qswiso::cumulants_forward(qswiso::split_char_poly<qswiso::Extended>(g->g, omega, aux_of(aux)), order);
    }
    const auto values = set.to_double();
    std::copy(values.begin(), values.end(), out);
    if (consistency) *consistency = set.consistency;
  });
}

qsw_status qsw_steady_state(const qsw_graph* g, double omega, qsw_aux_edge aux, double* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    std::optional<qswiso::AuxEdge> a;
    if (aux.epsilon > 0.0) a = aux_of(aux);
    const auto rho = qswiso::steady_state(qswiso::compose(g->g, omega, a, 0.0));
    for (int i = 0; i < g->g.order(); ++i) out[i] = rho.population(i);
  });
}

// ---- reconstruction

qsw_reconstruct_options qsw_reconstruct_defaults(void) {
  return {QSW_CUMULANTS_FORWARD, QSW_PRECISION_DEEP, 0, 0};
}

qsw_status qsw_reconstruct(const qsw_graph* g, double omega, qsw_aux_edge aux, const qsw_reconstruct_options* options,
                           qsw_reconstruction** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    const qsw_reconstruct_options o = options ? *options : qsw_reconstruct_defaults();
    qswiso::ReconstructionOptions ro;
    ro.source = o.source == QSW_CUMULANTS_CONTOUR ? qswiso::CumulantSource::contour : qswiso::CumulantSource::forward;
    ro.precision = o.precision == QSW_PRECISION_EXTENDED ? qswiso::Precision::extended : qswiso::Precision::deep;
    ro.order = o.order;
    ro.visible_fallback = o.visible_fallback != 0;
    *out = new qsw_reconstruction{qswiso::reconstruct_spectrum(g->g, omega, aux_of(aux), ro)};
  });
}

void qsw_reconstruction_free(qsw_reconstruction* r) { delete r; }
int qsw_reconstruction_degree(const qsw_reconstruction* r) { return r ? r->r.degree : 0; }
const double* qsw_reconstruction_q(const qsw_reconstruction* r) { return r ? r->r.q.data() : nullptr; }
const double* qsw_reconstruction_qprime(const qsw_reconstruction* r) { return r ? r->r.qprime.data() : nullptr; }
size_t qsw_reconstruction_cumulant_count(const qsw_reconstruction* r) { return r ? r->r.cumulants.size() : 0; }
const double* qsw_reconstruction_cumulants(const qsw_reconstruction* r) { return r ? r->r.cumulants.data() : nullptr; }
double qsw_reconstruction_residual(const qsw_reconstruction* r) { return r ? r->r.residual : 0.0; }
double qsw_reconstruction_condition(const qsw_reconstruction* r) { return r ? r->r.condition : 0.0; }
double qsw_reconstruction_delta(const qsw_reconstruction* r) { return r ? r->r.delta : 0.0; }
int qsw_reconstruction_partial(const qsw_reconstruction* r) { return r && r->r.partial ? 1 : 0; }

qsw_status qsw_reconstruction_spectrum(const qsw_reconstruction* r, qsw_spectrum** out) {
  return guarded([&] {
    need(r, "reconstruction");
    need(out, "out");
    *out = new qsw_spectrum{r->r.spectrum};
  });
}

qsw_status qsw_reconstruction_direct(const qsw_reconstruction* r, qsw_spectrum** out) {
  return guarded([&] {
    need(r, "reconstruction");
    need(out, "out");
    *out = new qsw_spectrum{r->r.direct};
  });
}

// ---- trajectories

qsw_status qsw_default_burn_in(const qsw_graph* g, double omega, qsw_aux_edge aux, double* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = qswiso::default_burn_in(g->g, omega, aux_of(aux));
  });
}

qsw_status qsw_simulate(const qsw_graph* g, const qsw_simulate_params* params, qsw_count_record** out) {
  return guarded([&] {
    need(g, "graph");
    need(params, "params");
    need(out, "out");
    qswiso::SimulationParams p;
    p.omega = params->omega;
    p.aux = aux_of(params->aux);
    p.dt = params->dt;
    p.windows = params->windows;
    if (params->burn_in >= 0.0) p.burn_in = params->burn_in;
    p.seed = params->seed;
    if (params->stream_windows > 0) p.stream_windows = params->stream_windows;
    p.diagnostics = params->diagnostics != 0;
    *out = new qsw_count_record{qswiso::simulate(g->g, p)};
  });
}

void qsw_count_record_free(qsw_count_record* r) { delete r; }
int64_t qsw_count_record_windows(const qsw_count_record* r) { return r ? r->r.windows : 0; }
const int64_t* qsw_count_record_counts(const qsw_count_record* r) { return r ? r->r.counts.data() : nullptr; }
double qsw_count_record_burn_in(const qsw_count_record* r) { return r ? r->r.burn_in : 0.0; }

qsw_trajectory_diagnostics qsw_count_record_diagnostics(const qsw_count_record* r) {
  if (!r) return {0, 0.0, 0.0, 0.0};
  const auto& d = r->r.diagnostics;
  return {d.jumps, d.max_survival_error, d.max_rate_error, d.max_offbasis_weight};
}

qsw_status qsw_k_statistics(const int64_t* counts, size_t size, double dt, int order, double* values,
                            double* std_errors) {
  return guarded([&] {
    need(counts, "counts");
    need(values, "values");
    const std::vector<std::int64_t> c(counts, counts + size);
    const auto est = qswiso::k_statistics(c, dt, order);
    std::copy(est.values.begin(), est.values.end(), values);
    if (std_errors) std::copy(est.stderr_.begin(), est.stderr_.end(), std_errors);
  });
}

qsw_status qsw_variance_scaling_check(const qsw_graph* g, double omega, qsw_aux_edge aux, int k, const int64_t* sizes,
                                      size_t size_count, int batches, double dt, uint64_t seed, double burn_in,
                                      double* variances, qsw_variance_scaling* out) {
  return guarded([&] {
    need(g, "graph");
    need(sizes, "sizes");
    need(out, "out");
    std::optional<double> b;
    if (burn_in >= 0.0) b = burn_in;
    const auto rep = qswiso::variance_scaling_check(g->g, omega, aux_of(aux), k,
                                                    std::vector<std::int64_t>(sizes, sizes + size_count), batches,
                                                    dt, seed, b);
    if (variances) std::copy(rep.variances.begin(), rep.variances.end(), variances);
    *out = {rep.exponent, rep.within_bounds ? 1 : 0};
  });
}

// ---- catalogs and search

namespace {

qsw_catalog* make_catalog(std::vector<qswiso::Graph> graphs) {
  auto c = std::make_unique<qsw_catalog>();
  for (const auto& g : graphs) c->names.push_back(qswiso::encode_graph6(g));
  c->graphs = std::move(graphs);
  return c.release();
}

}  // namespace

qsw_status qsw_catalog_generate(int n, int up_to, qsw_catalog** out) {
  return guarded([&] {
    need(out, "out");
    *out = make_catalog(up_to ? qswiso::connected_graphs_up_to(n) : qswiso::connected_graphs(n));
  });
}

qsw_status qsw_catalog_parse(const char* text, qsw_catalog** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = make_catalog(qswiso::read_catalog(text));
  });
}

void qsw_catalog_free(qsw_catalog* c) { delete c; }
size_t qsw_catalog_size(const qsw_catalog* c) { return c ? c->graphs.size() : 0; }

const char* qsw_catalog_graph6(const qsw_catalog* c, size_t index) {
  return c && index < c->names.size() ? c->names[index].c_str() : nullptr;
}

qsw_status qsw_catalog_graph(const qsw_catalog* c, size_t index, qsw_graph** out) {
  return guarded([&] {
    need(c, "catalog");
    need(out, "out");
    qswiso::require(index < c->graphs.size(), qswiso::ErrorCode::invalid_argument, "catalog index out of range");
    *out = new qsw_graph{c->graphs[index]};
  });
}

qsw_search_options qsw_search_defaults(void) {
  return {QSW_INVARIANT_ALL, 0.5, QSW_DEFAULT_TAU, 0, 10.0, 20000, 0};
}

qsw_status qsw_search(const qsw_catalog* c, const qsw_search_options* options, qsw_search_report** out) {
  return guarded([&] {
    need(c, "catalog");
    need(out, "out");
    const qsw_search_options o = options ? *options : qsw_search_defaults();
    qswiso::SearchOptions so;
    so.invariants.clear();
    for (auto inv : qswiso::kAllInvariants)
      if (o.invariants & qswiso::invariant_bit(inv)) so.invariants.push_back(inv);
    so.omega = o.omega;
    so.tau = o.tau > 0.0 ? o.tau : qswiso::kDefaultCospectralTau;
    so.all_pairs = o.all_pairs != 0;
    so.containment_factor = o.containment_factor;
    so.max_graphs = o.max_graphs;
    so.allow_oversize = o.allow_oversize != 0;
    *out = new qsw_search_report{qswiso::search_cospectral(c->graphs, so)};
  });
}

void qsw_search_report_free(qsw_search_report* r) { delete r; }
size_t qsw_search_pair_count(const qsw_search_report* r) { return r ? r->r.pairs.size() : 0; }

qsw_pair qsw_search_pair(const qsw_search_report* r, size_t index) {
  if (!r || index >= r->r.pairs.size()) return {0, 0, nullptr, nullptr, 0, 0, 0.0, 0};
  return pair_of(r->r.pairs[index]);
}

size_t qsw_search_violation_count(const qsw_search_report* r) { return r ? r->r.violations.size() : 0; }

qsw_pair qsw_search_violation(const qsw_search_report* r, size_t index) {
  if (!r || index >= r->r.violations.size()) return {0, 0, nullptr, nullptr, 0, 0, 0.0, 0};
  return pair_of(r->r.violations[index]);
}

size_t qsw_search_duplicate_count(const qsw_search_report* r) { return r ? r->r.duplicates.size() : 0; }

qsw_status qsw_search_duplicate(const qsw_search_report* r, size_t index, size_t* first, size_t* second) {
  return guarded([&] {
    need(r, "report");
    qswiso::require(index < r->r.duplicates.size(), qswiso::ErrorCode::invalid_argument, "index out of range");
    if (first) *first = r->r.duplicates[index].first;
    if (second) *second = r->r.duplicates[index].second;
  });
}

int qsw_search_classes(const qsw_search_report* r, qsw_class_counts* out) {
  if (!r || !r->r.classes || !out) return 0;
  const auto& c = *r->r.classes;
  *out = {c.pairs, c.by_adjacency, c.by_laplacian, c.by_omega, c.by_adjacency_or_laplacian, c.omega_only,
          c.indistinguished};
  return 1;
}

int qsw_thread_count(void) { return qswiso::thread_count(); }

}  // extern "C"
