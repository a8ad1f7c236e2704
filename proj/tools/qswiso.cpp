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

// qswiso command-line front end. Talks to the library only through the C API.

#include <qswiso/qswiso.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDistinguished = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Carries an exit code up to main.
struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

void check(qsw_status s, const std::string& context) {
  if (s == QSW_OK) return;
  const int code = qsw_status_is_input_error(s) ? kExitUsage : kExitNumerical;
  throw CliError(code, context + ": " + qsw_status_name(s) + ": " + qsw_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using GraphPtr = std::unique_ptr<qsw_graph, Deleter<qsw_graph, qsw_graph_free>>;
using SpectrumPtr = std::unique_ptr<qsw_spectrum, Deleter<qsw_spectrum, qsw_spectrum_free>>;
using ReconPtr = std::unique_ptr<qsw_reconstruction, Deleter<qsw_reconstruction, qsw_reconstruction_free>>;
using RecordPtr = std::unique_ptr<qsw_count_record, Deleter<qsw_count_record, qsw_count_record_free>>;
using CatalogPtr = std::unique_ptr<qsw_catalog, Deleter<qsw_catalog, qsw_catalog_free>>;
using ReportPtr = std::unique_ptr<qsw_search_report, Deleter<qsw_search_report, qsw_search_report_free>>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitUsage, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string graph6_of(const qsw_graph* g) {
  size_t needed = 0;
  check(qsw_graph_to_graph6(g, nullptr, 0, &needed), "graph6");
  std::string buf(needed, '\0');
  check(qsw_graph_to_graph6(g, buf.data(), buf.size(), &needed), "graph6");
  buf.resize(needed - 1);
  return buf;
}

// A path to a graph6 or edge-list JSON file, or "named:<name>[:<param>]".
GraphPtr load_graph(const std::string& spec) {
  qsw_graph* raw = nullptr;
  if (spec.rfind("named:", 0) == 0) {
    std::string name = spec.substr(6);
    int param = 0;
    if (auto colon = name.find(':'); colon != std::string::npos) {
      try {
        param = std::stoi(name.substr(colon + 1));
      } catch (const std::exception&) {
        throw CliError(kExitUsage, "bad parameter in " + spec);
      }
      name.resize(colon);
    }
    check(qsw_graph_named(name.c_str(), param, &raw), spec);
    return GraphPtr(raw);
  }
  const std::string text = read_file(spec);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw CliError(kExitUsage, spec + ": empty graph file");
  if (text[first] == '{') {
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const std::exception& e) {
      throw CliError(kExitUsage, spec + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || !j.contains("edges") ||
        !j["edges"].is_array())
      throw CliError(kExitUsage, spec + ": expected {\"n\": int, \"edges\": [[i,j],...]}");
    std::vector<int> flat;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw CliError(kExitUsage, spec + ": each edge must be a pair of integers");
      flat.push_back(e[0].get<int>());
      flat.push_back(e[1].get<int>());
    }
    check(qsw_graph_from_edges(j["n"].get<int>(), flat.data(), flat.size() / 2, &raw), spec);
    return GraphPtr(raw);
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) break;
  }
  check(qsw_graph_from_graph6(line.c_str(), &raw), spec);
  return GraphPtr(raw);
}

ordered_json spectrum_values(const qsw_spectrum* s) {
  const size_t size = qsw_spectrum_size(s);
  std::vector<double> v(2 * size);
  check(qsw_spectrum_values(s, v.data(), size), "spectrum");
  ordered_json out = ordered_json::array();
  for (size_t k = 0; k < size; ++k) out.push_back({v[2 * k], v[2 * k + 1]});
  return out;
}

std::pair<double, double> parse_grid_bounds(const std::string& grid, int& count) {
  std::vector<std::string> parts;
  std::stringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (parts.size() != 3) throw std::invalid_argument(grid);
    count = std::stoi(parts[2]);
    return {std::stod(parts[0]), std::stod(parts[1])};
  } catch (const std::exception&) {
    throw CliError(kExitUsage, "--omega-grid expects lo:hi:count, got " + grid);
  }
}

// Everything a run depends on; echoed into every output.
struct RunConfig {
  std::string command;
  std::string graph, g1, g2, catalog;
  int generate = 0;
  double omega = 0.5;
  std::string omega_grid = "0:1:101";
  double epsilon = QSW_DEFAULT_EPSILON;
  std::string edge;
  int order = 0;
  double dt = 1.0;
  std::int64_t windows = 1000;
  double burn_in = -1.0;
  std::uint64_t seed = 0;
  double tol = QSW_DEFAULT_TAU;
  std::string out;
  std::string format = "json";
  bool format_defaulted = true;
  std::string source = "forward";
  std::string precision = "deep";
  bool visible_factor = false;
  std::string invariants = "A,L,Q,Abar";
  bool all_pairs = false;
  bool allow_oversize = false;
  bool up_to = false;
  bool diagnostics = false;

  // Resolved values filled in while running.
  ordered_json resolved = ordered_json::object();
};

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  const std::string& cmd = c.command;
  const bool one_graph = cmd == "spectrum" || cmd == "reconstruct" || cmd == "simulate" || cmd == "cumulants";
  const bool two_graphs = cmd == "compare" || cmd == "sweep";
  const bool counting = cmd == "reconstruct" || cmd == "simulate" || cmd == "cumulants";
  if (one_graph) j["graph"] = c.graph;
  if (two_graphs) {
    j["g1"] = c.g1;
    j["g2"] = c.g2;
  }
  if (cmd == "search-cospectral") {
    if (!c.catalog.empty()) j["catalog"] = c.catalog;
    if (c.generate > 0) j["generate"] = c.generate;
    j["invariants"] = c.invariants;
    j["all_pairs"] = c.all_pairs;
    j["allow_oversize"] = c.allow_oversize;
  }
  if (cmd == "catalog") {
    j["n"] = c.generate;
    j["up_to"] = c.up_to;
  }
  if (cmd == "sweep") j["omega_grid"] = c.omega_grid;
  else if (cmd != "catalog") j["omega"] = c.omega;
  if (counting) {
    j["edge"] = c.edge;
    j["epsilon"] = c.epsilon;
  }
  if (cmd == "reconstruct" || cmd == "cumulants") j["order"] = c.order;
  if (cmd == "reconstruct") {
    j["source"] = c.source;
    j["precision"] = c.precision;
    j["visible_factor"] = c.visible_factor;
  }
  if (cmd == "cumulants") j["source"] = c.source;
  if (cmd == "simulate") {
    j["dt"] = c.dt;
    j["windows"] = c.windows;
    j["burn_in"] = c.burn_in;
    j["seed"] = c.seed;
    j["diagnostics"] = c.diagnostics;
  }
  if (cmd == "compare" || cmd == "sweep" || cmd == "search-cospectral" || cmd == "spectrum") j["tol"] = c.tol;
  j["out"] = c.out;
  j["format"] = c.format;
  j["threads"] = qsw_thread_count();
  for (const auto& [k, v] : c.resolved.items()) j[k] = v;
  return j;
}

ordered_json envelope(const RunConfig& c) {
  ordered_json j;
  j["version"] = qsw_version();
  j["config"] = config_json(c);
  return j;
}

void write_text(const RunConfig& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw CliError(kExitUsage, "cannot write " + c.out);
  f << text;
  if (!f) throw CliError(kExitNumerical, "write failed: " + c.out);
}

// JSON documents carry the config inline; CSV files get a sidecar <out>.json.
void emit(const RunConfig& c, const ordered_json& doc, const std::string& csv = {}) {
  if (c.format == "csv") {
    write_text(c, csv);
    if (!c.out.empty() && c.out != "-") {
      std::ofstream side(c.out + ".json");
      if (!side) throw CliError(kExitUsage, "cannot write " + c.out + ".json");
      ordered_json meta = envelope(c);
      for (const auto& [k, v] : doc.items())
        if (k != "version" && k != "config" && k != "counts" && k != "values" && k != "points") meta[k] = v;
      side << meta.dump(2) << "\n";
    }
    return;
  }
  write_text(c, doc.dump(2) + "\n");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

qsw_aux_edge parse_edge(RunConfig& c, const qsw_graph* g) {
  if (c.edge.empty()) throw CliError(kExitUsage, "--edge u,v is required");
  const auto comma = c.edge.find(',');
  int u = 0, v = 0;
  try {
    if (comma == std::string::npos) throw std::invalid_argument(c.edge);
    size_t pos = 0;
    u = std::stoi(c.edge.substr(0, comma), &pos);
    if (pos != comma) throw std::invalid_argument(c.edge);
    const std::string rest = c.edge.substr(comma + 1);
    v = std::stoi(rest, &pos);
    if (pos != rest.size()) throw std::invalid_argument(c.edge);
  } catch (const std::exception&) {
    throw CliError(kExitUsage, "--edge expects u,v (1-based), got " + c.edge);
  }
  const int n = qsw_graph_order(g);
  if (u < 1 || v < 1 || u > n || v > n)
    throw CliError(kExitUsage, "--edge endpoints must lie in 1.." + std::to_string(n));
  if (u == v) throw CliError(kExitUsage, "--edge needs distinct endpoints");
  if (qsw_graph_has_edge(g, u - 1, v - 1))
    throw CliError(kExitUsage, "--edge " + c.edge + " is already an edge of the graph");
  if (!(c.epsilon > 0.0)) throw CliError(kExitUsage, "--epsilon must be positive");
  return {u - 1, v - 1, c.epsilon};
}

void require_format(const RunConfig& c, bool csv_allowed) {
  if (c.format != "json" && !(csv_allowed && c.format == "csv"))
    throw CliError(kExitUsage, "--format " + c.format + " is not supported by " + c.command);
}

void require_omega(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw CliError(kExitUsage, "--omega must lie in [0, 1]");
}

int cmd_spectrum(RunConfig& c) {
  require_format(c, true);
  require_omega(c.omega);
  auto g = load_graph(c.graph);
  c.resolved["graph6"] = graph6_of(g.get());
  qsw_spectrum* raw = nullptr;
  check(qsw_omega_spectrum(g.get(), c.omega, &raw), "spectrum");
  SpectrumPtr s(raw);
  ordered_json doc = envelope(c);
  doc["omega"] = c.omega;
  doc["n"] = qsw_graph_order(g.get());
  doc["distinct"] = qsw_spectrum_count_distinct(s.get(), 1e-6);
  doc["values"] = spectrum_values(s.get());
  std::string csv = "re,im\n";
  for (const auto& v : doc["values"]) csv += fmt(v[0].get<double>()) + "," + fmt(v[1].get<double>()) + "\n";
  emit(c, doc, csv);
  return kExitOk;
}

int cmd_compare(RunConfig& c) {
  require_format(c, false);
  require_omega(c.omega);
  auto a = load_graph(c.g1);
  auto b = load_graph(c.g2);
  c.resolved["g1_graph6"] = graph6_of(a.get());
  c.resolved["g2_graph6"] = graph6_of(b.get());
  qsw_comparison r{};
  check(qsw_compare(a.get(), b.get(), c.omega, c.tol, &r), "compare");
  ordered_json doc = envelope(c);
  doc["omega"] = r.omega;
  doc["delta"] = r.delta;
  doc["tau"] = r.tau;
  doc["threshold"] = r.threshold;
  doc["distinguished"] = r.distinguished != 0;
  emit(c, doc);
  return r.distinguished ? kExitDistinguished : kExitOk;
}

int cmd_sweep(RunConfig& c) {
  if (c.format_defaulted) c.format = "csv";
  require_format(c, true);
  int count = 0;
  const auto [lo, hi] = parse_grid_bounds(c.omega_grid, count);
  auto a = load_graph(c.g1);
  auto b = load_graph(c.g2);
  c.resolved["g1_graph6"] = graph6_of(a.get());
  c.resolved["g2_graph6"] = graph6_of(b.get());
  if (count < 1) throw CliError(kExitUsage, "--omega-grid count must be positive");
  std::vector<double> omegas(static_cast<size_t>(count)), deltas(static_cast<size_t>(count));
  check(qsw_sweep(a.get(), b.get(), lo, hi, count, omegas.data(), deltas.data()), "sweep");
  ordered_json doc = envelope(c);
  ordered_json rows = ordered_json::array();
  std::string csv = "omega,delta\n";
  size_t peak = 0;
  for (size_t k = 0; k < omegas.size(); ++k) {
    rows.push_back({{"omega", omegas[k]}, {"delta", deltas[k]}});
    csv += fmt(omegas[k]) + "," + fmt(deltas[k]) + "\n";
    if (deltas[k] > deltas[peak]) peak = k;
  }
  doc["peak_omega"] = omegas[peak];
  doc["peak_delta"] = deltas[peak];
  doc["points"] = rows;
  emit(c, doc, csv);
  return kExitOk;
}

unsigned parse_invariants(const std::string& list) {
  unsigned mask = 0;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "A") mask |= QSW_INVARIANT_A;
    else if (item == "L") mask |= QSW_INVARIANT_L;
    else if (item == "Q" || item == "|L|") mask |= QSW_INVARIANT_Q;
    else if (item == "Abar") mask |= QSW_INVARIANT_ABAR;
    else throw CliError(kExitUsage, "unknown invariant " + item + " (use A, L, Q, Abar)");
  }
  if (mask == 0) throw CliError(kExitUsage, "--invariants is empty");
  return mask;
}

ordered_json ties_json(unsigned ties) {
  ordered_json out = ordered_json::array();
  if (ties & QSW_INVARIANT_A) out.push_back("A");
  if (ties & QSW_INVARIANT_L) out.push_back("L");
  if (ties & QSW_INVARIANT_Q) out.push_back("Q");
  if (ties & QSW_INVARIANT_ABAR) out.push_back("Abar");
  return out;
}

ordered_json pair_json(const qsw_pair& p) {
  ordered_json j;
  j["first"] = p.first;
  j["second"] = p.second;
  j["graph6"] = {p.graph6_first, p.graph6_second};
  j["ties"] = ties_json(p.ties);
  j["same_degrees"] = p.same_degrees != 0;
  j["delta"] = p.delta;
  j["omega_distinguished"] = p.distinguished != 0;
  return j;
}

int cmd_search(RunConfig& c) {
  require_format(c, false);
  require_omega(c.omega);
  if (c.catalog.empty() == (c.generate <= 0))
    throw CliError(kExitUsage, "give exactly one of --catalog FILE or --generate N");
  qsw_catalog* raw = nullptr;
  if (c.generate > 0) check(qsw_catalog_generate(c.generate, 1, &raw), "catalog");
  else check(qsw_catalog_parse(read_file(c.catalog).c_str(), &raw), c.catalog);
  CatalogPtr catalog(raw);
  qsw_search_options o = qsw_search_defaults();
  o.invariants = parse_invariants(c.invariants);
  o.omega = c.omega;
  o.tau = c.tol;
  o.all_pairs = c.all_pairs ? 1 : 0;
  o.allow_oversize = c.allow_oversize ? 1 : 0;
  qsw_search_report* rep = nullptr;
  check(qsw_search(catalog.get(), &o, &rep), "search");
  ReportPtr report(rep);

  ordered_json doc = envelope(c);
  doc["graphs"] = qsw_catalog_size(catalog.get());
  doc["omega"] = c.omega;
  doc["tau"] = c.tol;
  ordered_json dups = ordered_json::array();
  for (size_t k = 0; k < qsw_search_duplicate_count(report.get()); ++k) {
    size_t i = 0, j = 0;
    check(qsw_search_duplicate(report.get(), k, &i, &j), "search");
    dups.push_back({i, j});
  }
  doc["duplicates"] = dups;

  // Pairs grouped by the exact set of invariants they tie on.
  ordered_json groups = ordered_json::object();
  ordered_json pairs = ordered_json::array();
  for (size_t k = 0; k < qsw_search_pair_count(report.get()); ++k) {
    const qsw_pair p = qsw_search_pair(report.get(), k);
    std::string key;
    for (const auto& t : ties_json(p.ties)) key += (key.empty() ? "" : "+") + t.get<std::string>();
    if (key.empty()) key = "none";
    groups[key] = groups.value(key, 0) + 1;
    pairs.push_back(pair_json(p));
  }
  doc["tie_groups"] = groups;
  qsw_class_counts cc{};
  if (qsw_search_classes(report.get(), &cc)) {
    doc["classes"] = {{"pairs", cc.pairs},
                      {"by_adjacency", cc.by_adjacency},
                      {"by_laplacian", cc.by_laplacian},
                      {"by_omega", cc.by_omega},
                      {"by_adjacency_or_laplacian", cc.by_adjacency_or_laplacian},
                      {"omega_only", cc.omega_only},
                      {"indistinguished", cc.indistinguished}};
  }
  ordered_json violations = ordered_json::array();
  for (size_t k = 0; k < qsw_search_violation_count(report.get()); ++k)
    violations.push_back(pair_json(qsw_search_violation(report.get(), k)));
  doc["violations"] = violations;
  doc["pairs"] = pairs;
  emit(c, doc);
  return kExitOk;
}

qsw_cumulant_method parse_source(const std::string& s) {
  if (s == "forward") return QSW_CUMULANTS_FORWARD;
  if (s == "contour") return QSW_CUMULANTS_CONTOUR;
  throw CliError(kExitUsage, "--source must be forward or contour");
}

int cmd_cumulants(RunConfig& c) {
  require_format(c, false);
  require_omega(c.omega);
  auto g = load_graph(c.graph);
  c.resolved["graph6"] = graph6_of(g.get());
  const qsw_aux_edge aux = parse_edge(c, g.get());
  const int n = qsw_graph_order(g.get());
  const int order = c.order > 0 ? c.order : 2 * (n * n - 1);
  c.resolved["order"] = order;
  std::vector<double> values(static_cast<size_t>(order));
  double consistency = 0.0;
  check(qsw_cumulants(g.get(), c.omega, aux, order, parse_source(c.source), values.data(), &consistency),
        "cumulants");
  ordered_json doc = envelope(c);
  doc["omega"] = c.omega;
  doc["epsilon"] = c.epsilon;
  doc["edge"] = {aux.from + 1, aux.to + 1};
  doc["cumulants"] = values;
  if (c.source == "contour") doc["consistency"] = consistency;
  emit(c, doc);
  return kExitOk;
}

int cmd_reconstruct(RunConfig& c) {
  require_format(c, false);
  require_omega(c.omega);
  auto g = load_graph(c.graph);
  c.resolved["graph6"] = graph6_of(g.get());
  const qsw_aux_edge aux = parse_edge(c, g.get());
  qsw_reconstruct_options o = qsw_reconstruct_defaults();
  o.source = parse_source(c.source);
  if (c.precision == "extended") o.precision = QSW_PRECISION_EXTENDED;
  else if (c.precision == "deep") o.precision = QSW_PRECISION_DEEP;
  else throw CliError(kExitUsage, "--precision must be extended or deep");
  o.order = c.order;
  o.visible_fallback = c.visible_factor ? 1 : 0;
  qsw_reconstruction* raw = nullptr;
  check(qsw_reconstruct(g.get(), c.omega, aux, &o, &raw), "reconstruct");
  ReconPtr r(raw);
  const int degree = qsw_reconstruction_degree(r.get());
  const double* q = qsw_reconstruction_q(r.get());
  const double* qp = qsw_reconstruction_qprime(r.get());
  const double* cum = qsw_reconstruction_cumulants(r.get());
  qsw_spectrum* sraw = nullptr;
  check(qsw_reconstruction_spectrum(r.get(), &sraw), "reconstruct");
  SpectrumPtr spectrum(sraw);
  check(qsw_reconstruction_direct(r.get(), &sraw), "reconstruct");
  SpectrumPtr direct(sraw);
  c.resolved["order"] = qsw_reconstruction_cumulant_count(r.get());

  ordered_json doc = envelope(c);
  doc["q"] = std::vector<double>(q, q + degree + 1);
  doc["qprime"] = std::vector<double>(qp, qp + degree + 1);
  doc["residual"] = qsw_reconstruction_residual(r.get());
  doc["condition"] = qsw_reconstruction_condition(r.get());
  doc["spectrum"] = spectrum_values(spectrum.get());
  doc["degree"] = degree;
  doc["partial"] = qsw_reconstruction_partial(r.get()) != 0;
  doc["delta"] = qsw_reconstruction_delta(r.get());
  doc["direct"] = spectrum_values(direct.get());
  doc["cumulants"] = std::vector<double>(cum, cum + qsw_reconstruction_cumulant_count(r.get()));
  emit(c, doc);
  return kExitOk;
}

int cmd_simulate(RunConfig& c) {
  if (c.format_defaulted) c.format = "csv";
  require_format(c, true);
  require_omega(c.omega);
  auto g = load_graph(c.graph);
  c.resolved["graph6"] = graph6_of(g.get());
  const qsw_aux_edge aux = parse_edge(c, g.get());
  if (!(c.dt > 0.0)) throw CliError(kExitUsage, "--dt must be positive");
  if (c.windows < 1) throw CliError(kExitUsage, "--windows must be positive");
  qsw_simulate_params p{};
  p.omega = c.omega;
  p.aux = aux;
  p.dt = c.dt;
  p.windows = c.windows;
  p.burn_in = c.burn_in;
  p.seed = c.seed;
  p.stream_windows = 0;
  p.diagnostics = c.diagnostics ? 1 : 0;
  qsw_count_record* raw = nullptr;
  check(qsw_simulate(g.get(), &p, &raw), "simulate");
  RecordPtr rec(raw);
  c.resolved["burn_in"] = qsw_count_record_burn_in(rec.get());
  c.resolved["stream_windows"] = 256;

  const auto windows = static_cast<size_t>(qsw_count_record_windows(rec.get()));
  const std::int64_t* counts = qsw_count_record_counts(rec.get());
  ordered_json doc = envelope(c);
  // k-statistics of order k need at least k + 1 windows.
  const int order = static_cast<int>(std::min<size_t>(4, windows - 1));
  if (order >= 1) {
    std::vector<double> values(static_cast<size_t>(order)), errors(static_cast<size_t>(order));
    check(qsw_k_statistics(counts, windows, c.dt, order, values.data(), errors.data()), "k-statistics");
    doc["cumulant_estimates"] = values;
    doc["standard_errors"] = errors;
  }
  if (c.diagnostics) {
    const auto d = qsw_count_record_diagnostics(rec.get());
    doc["diagnostics"] = {{"jumps", d.jumps},
                          {"max_survival_error", d.max_survival_error},
                          {"max_rate_error", d.max_rate_error},
                          {"max_offbasis_weight", d.max_offbasis_weight}};
  }
  doc["counts"] = std::vector<std::int64_t>(counts, counts + windows);
  std::string csv = "window,count\n";
  for (size_t k = 0; k < windows; ++k) csv += std::to_string(k) + "," + std::to_string(counts[k]) + "\n";
  emit(c, doc, csv);
  return kExitOk;
}

int cmd_catalog(RunConfig& c) {
  if (c.generate < 1) throw CliError(kExitUsage, "--n must be positive");
  qsw_catalog* raw = nullptr;
  check(qsw_catalog_generate(c.generate, c.up_to ? 1 : 0, &raw), "catalog");
  CatalogPtr catalog(raw);
  std::string text;
  for (size_t k = 0; k < qsw_catalog_size(catalog.get()); ++k) text += std::string(qsw_catalog_graph6(catalog.get(), k)) + "\n";
  write_text(c, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qswiso: graph invariants from quantum stochastic walk spectra"};
  app.set_version_flag("--version", std::string(qsw_version()));
  app.require_subcommand(1);
  RunConfig c;

  auto add_out = [&](CLI::App* sub, bool csv) {
    sub->add_option("--out", c.out, "Output path (default stdout)");
    sub->add_option("--format", c.format, csv ? "json or csv (default csv)" : "json")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_counting = [&](CLI::App* sub) {
    sub->add_option("--graph", c.graph, "Graph file (graph6 or edge-list JSON) or named:<name>[:k]")->required();
    sub->add_option("--omega", c.omega, "Coherence parameter in [0, 1]")->capture_default_str();
    sub->add_option("--edge", c.edge, "Auxiliary edge u,v (1-based, counted direction u to v)")->required();
    sub->add_option("--epsilon", c.epsilon, "Auxiliary edge weight")->capture_default_str();
  };

  auto* spectrum = app.add_subcommand("spectrum", "omega-spectrum of a graph");
  spectrum->add_option("--graph", c.graph, "Graph file or named:<name>[:k]")->required();
  spectrum->add_option("--omega", c.omega, "Coherence parameter in [0, 1]")->capture_default_str();
  add_out(spectrum, false);

  auto* compare = app.add_subcommand("compare", "Spectral distance between two graphs (exit 1 if distinguished)");
  compare->add_option("--g1", c.g1, "First graph")->required();
  compare->add_option("--g2", c.g2, "Second graph")->required();
  compare->add_option("--omega", c.omega, "Coherence parameter in [0, 1]")->capture_default_str();
  compare->add_option("--tol", c.tol, "Per-eigenvalue tolerance tau")->capture_default_str();
  add_out(compare, false);

  auto* sweep = app.add_subcommand("sweep", "Spectral distance over an omega grid");
  sweep->add_option("--g1", c.g1, "First graph")->required();
  sweep->add_option("--g2", c.g2, "Second graph")->required();
  sweep->add_option("--omega-grid", c.omega_grid, "lo:hi:count")->capture_default_str();
  sweep->add_option("--tol", c.tol, "Per-eigenvalue tolerance tau (recorded)")->capture_default_str();
  add_out(sweep, true);

  auto* search = app.add_subcommand("search-cospectral", "Cospectral pairs in a graph6 catalog");
  search->add_option("--catalog", c.catalog, "graph6 catalog file");
  search->add_option("--generate", c.generate, "Generate all connected graphs on 1..N vertices instead");
  search->add_option("--invariants", c.invariants, "Comma list of A, L, Q, Abar")->capture_default_str();
  search->add_option("--omega", c.omega, "Coherence parameter in [0, 1]")->capture_default_str();
  search->add_option("--tol", c.tol, "Per-eigenvalue tolerance tau")->capture_default_str();
  search->add_flag("--all-pairs", c.all_pairs, "Classify every pair, not only invariant ties");
  search->add_flag("--allow-oversize", c.allow_oversize, "Permit catalogs above the size guard");
  add_out(search, false);

  auto* cumulants = app.add_subcommand("cumulants", "Counting-statistics cumulants of the auxiliary edge");
  add_counting(cumulants);
  cumulants->add_option("--order", c.order, "Number of cumulants (0 selects 2(n^2-1))")->capture_default_str();
  cumulants->add_option("--source", c.source, "forward or contour")->capture_default_str();
  add_out(cumulants, false);

  auto* reconstruct = app.add_subcommand("reconstruct", "omega-spectrum from counting cumulants");
  add_counting(reconstruct);
  reconstruct->add_option("--order", c.order, "Number of cumulants (0 selects 2(n^2-1))")->capture_default_str();
  reconstruct->add_option("--source", c.source, "Cumulant source: forward or contour")->capture_default_str();
  reconstruct->add_option("--precision", c.precision, "extended (128-bit) or deep (512-bit)")->capture_default_str();
  reconstruct->add_flag("--visible-factor", c.visible_factor,
                        "On a singular system, recover the factor the counts can see");
  add_out(reconstruct, false);

  auto* simulate = app.add_subcommand("simulate", "Quantum-jump trajectories counting auxiliary-edge jumps");
  add_counting(simulate);
  simulate->add_option("--dt", c.dt, "Window length")->capture_default_str();
  simulate->add_option("--windows", c.windows, "Number of windows s")->capture_default_str();
  simulate->add_option("--burn-in", c.burn_in, "Burn-in time (negative selects 10 / spectral gap)")
      ->capture_default_str();
  simulate->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  simulate->add_flag("--diagnostics", c.diagnostics, "Record jump-time and rate diagnostics");
  add_out(simulate, true);

  auto* catalog = app.add_subcommand("catalog", "Write all connected graphs on n vertices as graph6");
  catalog->add_option("--n", c.generate, "Number of vertices")->required();
  catalog->add_flag("--up-to", c.up_to, "Include every order from 1 to n");
  catalog->add_option("--out", c.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (auto* sub : app.get_subcommands()) {
      c.command = sub->get_name();
      if (auto* f = sub->get_option_no_throw("--format")) c.format_defaulted = f->count() == 0;
    }
    if (c.command == "spectrum") return cmd_spectrum(c);
    if (c.command == "compare") return cmd_compare(c);
    if (c.command == "sweep") return cmd_sweep(c);
    if (c.command == "search-cospectral") return cmd_search(c);
    if (c.command == "cumulants") return cmd_cumulants(c);
    if (c.command == "reconstruct") return cmd_reconstruct(c);
    if (c.command == "simulate") return cmd_simulate(c);
    if (c.command == "catalog") return cmd_catalog(c);
  } catch (const CliError& e) {
    std::cerr << "qswiso: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "qswiso: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
