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

#include "reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "monomial.hpp"

namespace qswiso {

namespace {

template <class T>
std::vector<double> as_double(const std::vector<T>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

template <class T>
T norm2(const std::vector<T>& v) {
  using std::sqrt;
  T s(0);
  for (const auto& x : v) s += x * x;
  return sqrt(s);
}

template <class T>
struct Equilibrated {
  DenseMatrix<T> matrix;
  std::vector<T> scale;
  SvdResult<T> svd;
  double condition = 0.0;
};

template <class T>
Equilibrated<T> equilibrate_and_factor(const LinearSystem<T>& sys) {
  const std::size_t m = sys.size();
  Equilibrated<T> e;
  e.matrix = sys.matrix;
  e.scale.assign(m, T(0));
  for (std::size_t j = 0; j < m; ++j) {
    T s(0);
    for (std::size_t i = 0; i < m; ++i) s = std::max(s, abs_value(sys.matrix(i, j)));
    e.scale[j] = s;
    if (s == 0) continue;
    for (std::size_t i = 0; i < m; ++i) e.matrix(i, j) /= s;
  }
  e.svd = jacobi_svd(e.matrix);
  const T& smax = e.svd.sigma.front();
  const T& smin = e.svd.sigma.back();
  e.condition = smin == 0 ? std::numeric_limits<double>::infinity() : to_double(smax / smin);
  return e;
}

template <class T>
std::vector<T> svd_solve(const Equilibrated<T>& e, const std::vector<T>& rhs) {
  const std::size_t m = rhs.size();
  std::vector<T> coef(m, T(0));
  for (std::size_t k = 0; k < m; ++k) {
    T s(0);
    for (std::size_t i = 0; i < m; ++i) s += e.svd.u(i, k) * rhs[i];
    coef[k] = s / e.svd.sigma[k];
  }
  std::vector<T> x(m, T(0));
  for (std::size_t j = 0; j < m; ++j) {
    T s(0);
    for (std::size_t k = 0; k < m; ++k) s += e.svd.v(j, k) * coef[k];
    x[j] = s / e.scale[j];
  }
  return x;
}

template <class T>
T relative_residual(const LinearSystem<T>& sys, const std::vector<T>& x) {
  std::vector<T> r(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    T s(0);
    for (std::size_t j = 0; j < x.size(); ++j) s += sys.matrix(i, j) * x[j];
    r[i] = s - sys.rhs[i];
  }
  const T b = norm2(sys.rhs);
  return b == 0 ? norm2(r) : norm2(r) / b;
}

template <class T>
CharPolyPair<T> unpack(const LinearSystem<T>& sys, const std::vector<T>& x) {
  const int d = sys.degree;
  CharPolyPair<T> out;
  out.q.assign(static_cast<std::size_t>(d + 1), T(0));
  out.qprime.assign(static_cast<std::size_t>(d + 1), T(0));
  out.q[static_cast<std::size_t>(d)] = T(1);
  for (std::size_t j = 0; j < sys.columns.size(); ++j) {
    const auto& col = sys.columns[j];
    auto& target = col.kind == Unknown::q ? out.q : out.qprime;
    target[static_cast<std::size_t>(col.index)] = x[j];
  }
  return out;
}

}  // namespace

template <class T>
std::vector<double> CharPolyPair<T>::q_double() const {
  return as_double(q);
}

template <class T>
std::vector<double> CharPolyPair<T>::qprime_double() const {
  return as_double(qprime);
}

template <class T>
CharPolyPair<T> char_poly_pair(const SplitCharPoly<T>& split) {
  return {split.q(), split.qprime()};
}

std::string ColumnLabel::name() const {
  return (kind == Unknown::q ? "q" : "q'") + std::to_string(index);
}

template <class T>
std::pair<T, T> monomial_derivative(int l, int i, const std::vector<T>& cumulants) {
  require(l >= 1, ErrorCode::invalid_argument, "derivative order must be >= 1");
  require(i >= 0, ErrorCode::invalid_argument, "monomial power must be >= 0");
  require(static_cast<int>(cumulants.size()) >= l, ErrorCode::invalid_argument,
          "missing cumulants: order " + std::to_string(l) + " requested, " +
              std::to_string(cumulants.size()) + " available");
  MonomialDerivatives<T> md(l, i);
  for (int k = 0; k < l; ++k) md.push_cumulant(cumulants[static_cast<std::size_t>(k)]);
  return {md.coeff_on_q(l, i), md.coeff_on_qprime(l, i)};
}

template <class T>
LinearSystem<T> assemble_rows(const std::vector<T>& cumulants, int degree, int first, int last) {
  require(degree >= 2, ErrorCode::invalid_argument, "polynomial degree must be >= 2");
  require(first >= 1 && last >= first, ErrorCode::invalid_argument, "empty row range");
  require(static_cast<int>(cumulants.size()) >= last, ErrorCode::invalid_argument,
          "insufficient cumulant order: need " + std::to_string(last) + ", have " +
              std::to_string(cumulants.size()));
  MonomialDerivatives<T> md(last, degree);
  for (int k = 0; k < last; ++k) md.push_cumulant(cumulants[static_cast<std::size_t>(k)]);

  LinearSystem<T> sys;
  sys.degree = degree;
  sys.first_row = first;
  for (int i = 1; i <= degree - 1; ++i) sys.columns.push_back({Unknown::q, i});
  for (int i = 0; i <= degree - 2; ++i) sys.columns.push_back({Unknown::qprime, i});
  const auto rows = static_cast<std::size_t>(last - first + 1);
  sys.matrix = DenseMatrix<T>(rows, sys.columns.size());
  sys.rhs.assign(rows, T(0));
  for (int l = first; l <= last; ++l) {
    const auto r = static_cast<std::size_t>(l - first);
    for (std::size_t j = 0; j < sys.columns.size(); ++j) {
      const auto& col = sys.columns[j];
      sys.matrix(r, j) = col.kind == Unknown::q ? md.coeff_on_q(l, col.index) : md.coeff_on_qprime(l, col.index);
    }
    // q_degree = 1 is known.
    sys.rhs[r] = -md.coeff_on_q(l, degree);
  }
  return sys;
}

template <class T>
LinearSystem<T> assemble_system(const std::vector<T>& cumulants, int degree) {
  return assemble_rows(cumulants, degree, 1, 2 * (degree - 1));
}

template <class T>
LinearSystem<T> assemble_system(const CumulantSet<T>& cumulants, int n) {
  require(n >= 2, ErrorCode::invalid_argument, "graph needs at least two vertices");
  return assemble_system(cumulants.values, n * n);
}

template <class T>
double default_condition_limit() {
  return 1e-6 / to_double(unit_roundoff<T>());
}

template <class T>
double system_condition(const LinearSystem<T>& sys) {
  return equilibrate_and_factor(sys).condition;
}

template <class T>
SolveReport<T> solve_coefficients(const LinearSystem<T>& sys, std::optional<double> condition_limit) {
  require(sys.matrix.rows == sys.matrix.cols && sys.size() == sys.matrix.rows, ErrorCode::invalid_argument,
          "system must be square");
  const double limit = condition_limit.value_or(default_condition_limit<T>());
  auto e = equilibrate_and_factor(sys);
  for (std::size_t j = 0; j < e.scale.size(); ++j)
    require(e.scale[j] != 0, ErrorCode::singular,
            "column " + sys.columns[j].name() + " is identically zero");
  if (!(e.condition <= limit)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", e.condition);
    fail(ErrorCode::singular, std::string("system is singular or ill-conditioned: condition ") + buf +
                                  " exceeds limit for " + std::to_string(sys.size()) + " unknowns");
  }
  auto x = svd_solve(e, sys.rhs);
  SolveReport<T> out;
  out.condition = e.condition;
  out.residual = to_double(relative_residual(sys, x));
  require(out.residual < 1e-8, ErrorCode::numerical,
          "residual " + std::to_string(out.residual) + " exceeds 1e-8 of the right-hand side");
  out.pair = unpack(sys, x);
  return out;
}

Spectrum spectrum_from_coeffs(const std::vector<double>& q) {
  require(!q.empty(), ErrorCode::invalid_argument, "empty polynomial");
  const int d = static_cast<int>(q.size()) - 1;
  require(std::abs(q.back() - 1.0) <= 1e-12, ErrorCode::invalid_argument, "polynomial is not monic");
  int zeros = 0;
  while (zeros < d && q[static_cast<std::size_t>(zeros)] == 0.0) ++zeros;
  std::vector<Complex> roots(static_cast<std::size_t>(zeros), Complex(0.0, 0.0));
  const int rest = d - zeros;
  if (rest > 0) {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(rest, rest);
    for (int i = 1; i < rest; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < rest; ++i) companion(i, rest - 1) = -q[static_cast<std::size_t>(zeros + i)];
    const Spectrum tail = eigenvalues(companion);
    roots.insert(roots.end(), tail.values().begin(), tail.values().end());
  }
  return Spectrum(std::move(roots));
}

// Simultaneous Aberth iteration in the working precision, seeded by the
// double companion roots. Multiple roots only converge to about u^(1/k),
// which at 512 bits is still far below double resolution.
template <class T>
Spectrum spectrum_from_coeffs(const std::vector<T>& q) {
  using C = ComplexT<T>;
  const Spectrum seed = spectrum_from_coeffs(as_double(q));
  const int d = static_cast<int>(q.size()) - 1;
  int zeros = 0;
  while (zeros < d && q[static_cast<std::size_t>(zeros)] == 0) ++zeros;
  const int rest = d - zeros;
  std::vector<Complex> roots(static_cast<std::size_t>(zeros), Complex(0.0, 0.0));
  if (rest == 0) return Spectrum(std::move(roots));

  std::vector<Complex> start;
  for (const auto& z : seed.values())
    if (z != Complex(0.0, 0.0) || static_cast<int>(start.size()) + zeros >= d) start.push_back(z);
  while (static_cast<int>(start.size()) > rest) start.pop_back();
  std::vector<C> z(static_cast<std::size_t>(rest));
  for (int j = 0; j < rest; ++j) {
    const Complex kick = std::polar(1e-6 * (1.0 + std::abs(start[static_cast<std::size_t>(j)])), 0.4 + 2.3 * j);
    z[static_cast<std::size_t>(j)] = make_complex<C>(start[static_cast<std::size_t>(j)] + kick);
  }
  auto eval = [&](const C& x, C& p, C& dp) {
    p = C(1);
    dp = C(0);
    for (int i = d - 1; i >= zeros; --i) {
      dp = dp * x + p;
      p = p * x + C(q[static_cast<std::size_t>(i)]);
    }
  };
  const T stop = T(1e3) * unit_roundoff<T>();
  for (int iter = 0; iter < 4000; ++iter) {
    T worst(0);
    for (int j = 0; j < rest; ++j) {
      auto& zj = z[static_cast<std::size_t>(j)];
      C p, dp;
      eval(zj, p, dp);
      if (p == C(0)) continue;
      const C ratio = p / dp;
      C sum(0);
      for (int k = 0; k < rest; ++k)
        if (k != j) sum += C(1) / (zj - z[static_cast<std::size_t>(k)]);
      const C step = ratio / (C(1) - ratio * sum);
      zj -= step;
      worst = std::max(worst, T(abs(step) / (T(1) + abs(zj))));
    }
    if (worst <= stop) break;
  }
  for (const auto& x : z) roots.emplace_back(to_double(re(x)), to_double(im(x)));
  return Spectrum(std::move(roots));
}

std::string to_string(CumulantSource s) { return s == CumulantSource::forward ? "forward" : "contour"; }
std::string to_string(Precision p) { return p == Precision::extended ? "extended" : "deep"; }

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + ": " + e.what());
  }
}

template <class T>
ReconstructionResult reconstruct_with(const Graph& g, double omega, const AuxEdge& aux,
                                      const ReconstructionOptions& options) {
  const int dim = g.order() * g.order();
  const int m = options.order == 0 ? 2 * (dim - 1) : options.order;
  require(m >= 2 * (dim - 1), ErrorCode::invalid_argument,
          "input: cumulant order " + std::to_string(m) + " is below 2(n^2 - 1) = " + std::to_string(2 * (dim - 1)));

  CumulantSet<T> cumulants = stage("cumulants", [&] {
    if (options.source == CumulantSource::forward)
      return cumulants_forward(split_char_poly<T>(g, omega, aux), m);
    TiltedGenerator gen(g, omega, aux);
    return cumulants_contour<T>(gen, m, options.contour);
  });
  auto sys = stage("assemble", [&] { return assemble_system(cumulants.values, dim); });

  ReconstructionResult out;
  out.cumulants = cumulants.to_double();
  CharPolyPair<T> pair;
  try {
    // Contour cumulants are only as good as their radius consistency.
    double noise = to_double(unit_roundoff<T>());
    if (cumulants.method == CumulantMethod::contour) noise = std::max(noise, cumulants.consistency);
    auto report = stage("solve", [&] { return solve_coefficients(sys, 1e-6 / noise); });
    pair = std::move(report.pair);
    out.residual = report.residual;
    out.condition = report.condition;
  } catch (const Error& e) {
    if (!options.visible_fallback || e.code() != ErrorCode::singular) throw;
    // Extra rows beyond the square block certify the factor.
    CumulantSet<T> longer = stage("cumulants", [&] {
      if (options.source == CumulantSource::forward)
        return cumulants_forward(split_char_poly<T>(g, omega, aux), m + 8);
      TiltedGenerator gen(g, omega, aux);
      return cumulants_contour<T>(gen, m + 8, options.contour);
    });
    const double longer_noise = longer.method == CumulantMethod::contour ? longer.consistency : 0.0;
    auto factor = stage("visible-factor", [&] { return visible_factor(longer.values, dim, std::nullopt, longer_noise); });
    pair = std::move(factor.factor);
    out.residual = factor.consistency;
    out.condition = factor.condition;
    out.partial = true;
  }
  out.degree = pair.degree();
  out.q = pair.q_double();
  out.qprime = pair.qprime_double();
  out.spectrum = stage("roots", [&] { return spectrum_from_coeffs(pair.q); });
  out.direct = stage("direct", [&] { return eigenvalues(compose(g, omega, aux, 0.0)); });
  if (!out.partial) {
    out.delta = spectral_distance(out.spectrum, out.direct);
  } else {
    for (const auto& z : out.spectrum.values()) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& w : out.direct.values()) nearest = std::min(nearest, std::abs(z - w));
      out.delta = std::max(out.delta, nearest);
    }
  }
  return out;
}

}  // namespace

ReconstructionResult reconstruct_spectrum(const Graph& g, double omega, const AuxEdge& aux,
                                          const ReconstructionOptions& options) {
  stage("input", [&] {
    require(g.order() <= 4, ErrorCode::size_limit, "reconstruction is limited to n <= 4");
    require(omega >= 0.0 && omega <= 1.0, ErrorCode::invalid_argument, "omega must lie in [0, 1]");
    validate_aux_edge(g, aux);
    return 0;
  });
  if (options.precision == Precision::deep) return reconstruct_with<Deep>(g, omega, aux, options);
  return reconstruct_with<Extended>(g, omega, aux, options);
}

template <class T>
VisibleFactor<T> visible_factor(const std::vector<T>& cumulants, int max_degree, std::optional<double> tol_in,
                               double noise) {
  const double u = std::max(to_double(unit_roundoff<T>()), noise);
  const double tol = tol_in.value_or(std::pow(u, 0.4));
  const int available = static_cast<int>(cumulants.size());
  for (int d = 2; d <= max_degree; ++d) {
    const int square = 2 * (d - 1);
    if (square + 1 > available) break;
    auto sys = assemble_system(cumulants, d);
    auto e = equilibrate_and_factor(sys);
    bool zero_column = std::any_of(e.scale.begin(), e.scale.end(), [](const T& s) { return s == 0; });
    if (zero_column || !(e.condition * u <= 1e-3)) continue;
    auto x = svd_solve(e, sys.rhs);
    const int last = std::min(available, square + 8);
    auto check = assemble_rows(cumulants, d, square + 1, last);
    const double consistency = to_double(relative_residual(check, x));
    if (consistency <= tol) {
      VisibleFactor<T> out;
      out.degree = d;
      out.factor = unpack(sys, x);
      out.consistency = consistency;
      out.condition = e.condition;
      return out;
    }
  }
  fail(ErrorCode::not_converged, "no consistent visible factor up to degree " + std::to_string(max_degree) +
                                     " with " + std::to_string(available) + " cumulants");
}

template <class T>
int hidden_root_count(const SplitCharPoly<T>& split, double tol) {
  using std::sqrt;
  const T cut = tol > 0.0 ? T(tol) : T(sqrt(unit_roundoff<T>()));
  const auto& a = split.p0.coeffs;
  std::vector<T> b = split.p1.coeffs;
  T bmax(0);
  for (const auto& x : b) bmax = std::max(bmax, abs_value(x));
  require(bmax != 0, ErrorCode::invalid_argument, "tilted part vanishes");
  for (auto& x : b) x /= bmax;
  const int da = static_cast<int>(a.size()) - 1;
  int db = static_cast<int>(b.size()) - 1;
  while (db > 0 && abs_value(b[static_cast<std::size_t>(db)]) <= cut) --db;
  if (db == 0) return 0;
  // Sylvester matrix; its rank deficiency is the degree of gcd(P0, P1).
  const auto size = static_cast<std::size_t>(da + db);
  DenseMatrix<T> s(size, size);
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k)
      s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + k)) = a[static_cast<std::size_t>(da - k)];
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k)
      s(static_cast<std::size_t>(db + r), static_cast<std::size_t>(r + k)) = b[static_cast<std::size_t>(db - k)];
  auto svd = jacobi_svd(s);
  int count = 0;
  for (const auto& sigma : svd.sigma)
    if (sigma <= cut * svd.sigma.front()) ++count;
  return count;
}

#define QSWISO_INSTANTIATE_RECONSTRUCT(T)                                                             \
  template struct CharPolyPair<T>;                                                                    \
  template CharPolyPair<T> char_poly_pair<T>(const SplitCharPoly<T>&);                                \
  template std::pair<T, T> monomial_derivative<T>(int, int, const std::vector<T>&);                    \
  template LinearSystem<T> assemble_rows<T>(const std::vector<T>&, int, int, int);                     \
  template LinearSystem<T> assemble_system<T>(const std::vector<T>&, int);                             \
  template LinearSystem<T> assemble_system<T>(const CumulantSet<T>&, int);                             \
  template double default_condition_limit<T>();                                                       \
  template double system_condition<T>(const LinearSystem<T>&);                                        \
  template SolveReport<T> solve_coefficients<T>(const LinearSystem<T>&, std::optional<double>);       \
  template VisibleFactor<T> visible_factor<T>(const std::vector<T>&, int, std::optional<double>, double);                     \
  template int hidden_root_count<T>(const SplitCharPoly<T>&, double);

QSWISO_INSTANTIATE_RECONSTRUCT(double)
QSWISO_INSTANTIATE_RECONSTRUCT(Extended)
QSWISO_INSTANTIATE_RECONSTRUCT(Deep)

template Spectrum spectrum_from_coeffs<Extended>(const std::vector<Extended>&);
template Spectrum spectrum_from_coeffs<Deep>(const std::vector<Deep>&);

#undef QSWISO_INSTANTIATE_RECONSTRUCT

}  // namespace qswiso
