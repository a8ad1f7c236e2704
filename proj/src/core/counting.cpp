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

#include "counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>

#include "error.hpp"
#include "monomial.hpp"

namespace qswiso {

Complex DensityVector::trace() const {
  Complex t(0.0, 0.0);
  for (int i = 0; i < n; ++i) t += at(i, i);
  return t;
}

double DensityVector::hermiticity_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
  return worst;
}

DensityVector steady_state(const SuperOperator& s) {
  require(s.meta.chi == 0.0, ErrorCode::invalid_argument, "steady state needs the chi = 0 generator");
  const int dim = s.dim();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(s.entries, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  if (dim > 1) {
    require(sigma(dim - 2) > 1e-10, ErrorCode::singular,
            "steady state is not unique: second smallest singular value " +
                std::to_string(sigma(dim - 2)));
  }
  DensityVector rho{s.n, svd.matrixV().col(dim - 1)};
  const Complex tr = rho.trace();
  require(std::abs(tr) > 1e-12, ErrorCode::numerical, "null vector has vanishing trace");
  rho.entries /= tr;
  return rho;
}

Complex dominant_eigenvalue(const Eigen::MatrixXcd& m) {
  auto values = eigenvalues(m).values();
  std::sort(values.begin(), values.end(),
            [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
  if (values.size() > 1) {
    require(values[0].real() - values[1].real() >= 1e-9, ErrorCode::branch_crossing,
            "dominant eigenvalue is not separated (gap " +
                std::to_string(values[0].real() - values[1].real()) + ")");
  }
  return values.front();
}

Complex dominant_eigenvalue(const SuperOperator& s) { return dominant_eigenvalue(s.entries); }

namespace {

struct Eigenpair {
  Complex value;
  Eigen::VectorXcd vector;
};

struct Decomposition {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // unit columns
};

Decomposition decompose(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, true);
  require(solver.info() == Eigen::Success, ErrorCode::not_converged,
          "eigendecomposition along the counting-field path did not converge");
  Decomposition d{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index j = 0; j < d.vectors.cols(); ++j) d.vectors.col(j).normalize();
  return d;
}

void check_isolated(const Decomposition& d, Eigen::Index pick, Complex chi) {
  const Complex nu = d.values(pick);
  double nearest = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < d.values.size(); ++j)
    if (j != pick) nearest = std::min(nearest, std::abs(d.values(j) - nu));
  require(nearest > 1e-9 * std::max(1.0, std::abs(nu)), ErrorCode::branch_crossing,
          "tracked eigenvalue is not isolated at chi = (" + std::to_string(chi.real()) + "," +
              std::to_string(chi.imag()) + ")");
}

class BranchTracker {
 public:
  explicit BranchTracker(const TiltedGenerator& gen) : gen_(gen) {}

  Eigenpair start(Complex chi) {
    Decomposition d = decompose(gen_.at(chi));
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < d.values.size(); ++j)
      if (d.values(j).real() > d.values(best).real()) best = j;
    for (Eigen::Index j = 0; j < d.values.size(); ++j) {
      if (j == best) continue;
      require(d.values(best).real() - d.values(j).real() >= 1e-9, ErrorCode::branch_crossing,
              "no dominant eigenvalue at the start of the counting-field path");
    }
    current_ = {d.values(best), d.vectors.col(best)};
    chi_ = chi;
    return current_;
  }

  Eigenpair advance(Complex chi) {
    step(chi_, chi, 0);
    return current_;
  }

 private:
  void step(Complex from, Complex to, int depth) {
    Decomposition d = decompose(gen_.at(to));
    Eigen::Index best = -1;
    double best_overlap = -1.0;
    double second_overlap = -1.0;
    for (Eigen::Index j = 0; j < d.values.size(); ++j) {
      double ov = std::abs(current_.vector.dot(d.vectors.col(j)));
      if (ov > best_overlap) {
        second_overlap = best_overlap;
        best_overlap = ov;
        best = j;
      } else if (ov > second_overlap) {
        second_overlap = ov;
      }
    }
    const bool clear = best_overlap >= 0.9 && second_overlap <= 0.5 * best_overlap;
    if (!clear) {
      require(depth < 16, ErrorCode::branch_crossing,
              "eigenvector matching is ambiguous near chi = (" + std::to_string(to.real()) + "," +
                  std::to_string(to.imag()) + ")");
      const Complex mid = 0.5 * (from + to);
      step(from, mid, depth + 1);
      step(mid, to, depth + 1);
      return;
    }
    check_isolated(d, best, to);
    current_ = {d.values(best), d.vectors.col(best)};
    chi_ = to;
  }

  const TiltedGenerator& gen_;
  Eigenpair current_;
  Complex chi_;
};

std::vector<Eigenpair> track_pairs(const TiltedGenerator& gen, std::span<const Complex> path) {
  std::vector<Eigenpair> out;
  if (path.empty()) return out;
  BranchTracker tracker(gen);
  out.push_back(tracker.start(path[0]));
  for (std::size_t k = 1; k < path.size(); ++k) out.push_back(tracker.advance(path[k]));
  return out;
}

}  // namespace

std::vector<Complex> track_dominant_branch(const TiltedGenerator& gen, std::span<const Complex> path) {
  std::vector<Complex> values;
  for (const auto& p : track_pairs(gen, path)) values.push_back(p.value);
  return values;
}

template <class T>
ComplexT<T> refine_eigenvalue(const TiltedGenerator& gen, const ComplexT<T>& chi, Complex nu,
                              const Eigen::VectorXcd& vec) {
  using C = ComplexT<T>;
  const auto dim = static_cast<std::size_t>(gen.dim());
  const DenseMatrix<C> m = gen.exact<T>(chi);

  Eigen::Index pivot_index = 0;
  vec.cwiseAbs().maxCoeff(&pivot_index);
  const auto p = static_cast<std::size_t>(pivot_index);
  std::vector<C> x(dim);
  const Complex scale = vec(pivot_index);
  for (std::size_t i = 0; i < dim; ++i) x[i] = make_complex<C>(vec(static_cast<Eigen::Index>(i)) / scale);
  x[p] = C(1);
  C value = make_complex<C>(nu);

  const T floor = unit_roundoff<T>() * T(std::numeric_limits<double>::epsilon());
  for (int iter = 0; iter < 10; ++iter) {
    std::vector<C> residual(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      C s(0);
      for (std::size_t j = 0; j < dim; ++j) s += m(i, j) * x[j];
      residual[i] = -(s - value * x[i]);
    }
    DenseMatrix<C> jac = m;
    for (std::size_t i = 0; i < dim; ++i) jac(i, i) -= value;
    for (std::size_t i = 0; i < dim; ++i) jac(i, p) = -x[i];
    require(lu_solve_in_place(jac, residual), ErrorCode::numerical,
            "singular Jacobian while refining an eigenvalue");
    const C dnu = residual[p];
    for (std::size_t i = 0; i < dim; ++i)
      if (i != p) x[i] += residual[i];
    value += dnu;
    using std::abs;
    T size = abs(value);
    if (abs(dnu) <= T(32) * unit_roundoff<T>() * size || abs(dnu) <= floor) break;
  }
  return value;
}

template <class T>
std::vector<T> SplitCharPoly<T>::q() const {
  std::vector<T> out = p0.coeffs;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += p1.coeffs[i];
  return out;
}

template <class T>
SplitCharPoly<T> split_char_poly(const Graph& g, double omega, const AuxEdge& aux) {
  using C = ComplexT<T>;
  TiltedGenerator gen(g, omega, aux);
  const int dim = gen.dim();
  auto base = gen.exact<T>(C(0));
  const auto row = static_cast<std::size_t>(gen.entry().row);
  const auto col = static_cast<std::size_t>(gen.entry().col);
  base(row, col) = C(0);
  auto unit = base;
  unit(row, col) = C(1);
  // P is affine in the single tilted entry t: P_t = P_0 + t Q.
  SplitCharPoly<T> out;
  out.p0 = real_char_poly_dense<T>(base);
  auto with_unit = real_char_poly_dense<T>(unit);
  out.p1.coeffs.resize(static_cast<std::size_t>(dim + 1));
  const T eps(aux.epsilon);
  for (int i = 0; i <= dim; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.p1.coeffs[k] = eps * (with_unit.coeffs[k] - out.p0.coeffs[k]);
  }
  for (int i = dim - 1; i <= dim; ++i) {
    const auto k = static_cast<std::size_t>(i);
    require(std::abs(to_double(out.p1.coeffs[k])) <= 1e-9 * aux.epsilon, ErrorCode::numerical,
            "tilted polynomial part has nonzero coefficient at degree " + std::to_string(i));
    out.p1.coeffs[k] = T(0);
  }
  return out;
}

std::string to_string(CumulantMethod m) {
  return m == CumulantMethod::forward_recursion ? "forward-recursion" : "contour";
}

template <class T>
std::vector<double> CumulantSet<T>::to_double() const {
  std::vector<double> out;
  for (const auto& v : values) out.push_back(qswiso::to_double(v));
  return out;
}

template <class T>
CumulantSet<T> cumulants_forward(const SplitCharPoly<T>& poly, int m) {
  require(m >= 1, ErrorCode::invalid_argument, "cumulant order must be >= 1");
  const std::vector<T> q = poly.q();
  const std::vector<T>& qp = poly.qprime();
  const int dim = static_cast<int>(q.size()) - 1;
  using std::abs;
  require(abs(q[1]) >= T(1e-12), ErrorCode::singular,
          "q_1 vanishes: the zero eigenvalue is degenerate");

  MonomialDerivatives<T> md(m, dim);
  CumulantSet<T> out;
  out.method = CumulantMethod::forward_recursion;
  for (int l = 1; l <= m; ++l) {
    T acc(0);
    for (int i = 2; i <= std::min(l, dim); ++i) acc += q[static_cast<std::size_t>(i)] * md.partial(l, i);
    for (int i = 0; i <= std::min(l - 1, dim); ++i)
      acc += qp[static_cast<std::size_t>(i)] * md.coeff_on_qprime(l, i);
    T c = -acc / q[1];
    md.push_cumulant(c);
    out.values.push_back(c);
  }
  return out;
}

namespace {

template <class T>
std::vector<T> contour_pass(const TiltedGenerator& gen, int m, double radius, const ContourOptions& options) {
  using C = ComplexT<T>;
  const int n_points = options.points;
  const T pi = boost::math::constants::pi<T>();
  const T r(radius);

  std::vector<C> unit_roots(static_cast<std::size_t>(n_points));
  for (int j = 0; j < n_points; ++j) {
    T theta = T(2) * pi * T(j) / T(n_points);
    using std::cos;
    using std::sin;
    unit_roots[static_cast<std::size_t>(j)] = C(cos(theta), sin(theta));
  }

  std::vector<Complex> path;
  for (int s = 0; s <= options.real_axis_steps; ++s)
    path.emplace_back(radius * s / options.real_axis_steps, 0.0);
  for (int j = 1; j <= n_points; ++j) {
    const double theta = 2.0 * std::acos(-1.0) * j / n_points;
    path.push_back(std::polar(radius, theta));
  }
  const auto pairs = track_pairs(gen, path);
  const std::size_t first = static_cast<std::size_t>(options.real_axis_steps);
  const Complex opened = pairs[first].value;
  const Complex closed = pairs.back().value;
  require(std::abs(opened - closed) <= 1e-8 * std::max(std::abs(opened), 1e-300),
          ErrorCode::branch_crossing, "dominant branch does not close around the contour");

  std::vector<C> samples(static_cast<std::size_t>(n_points));
  for (int j = 0; j < n_points; ++j) {
    const auto& pair = pairs[first + static_cast<std::size_t>(j)];
    const C chi = C(r) * unit_roots[static_cast<std::size_t>(j)];
    samples[static_cast<std::size_t>(j)] = refine_eigenvalue<T>(gen, chi, pair.value, pair.vector);
  }

  std::vector<T> c;
  T factorial(1);
  T r_power(1);
  for (int k = 1; k <= m; ++k) {
    factorial *= T(k);
    r_power *= r;
    C sum(0);
    for (int j = 0; j < n_points; ++j) {
      const auto idx = static_cast<std::size_t>((static_cast<long>(k) * j) % n_points);
      sum += samples[static_cast<std::size_t>(j)] * conj(unit_roots[idx]);
    }
    c.push_back(factorial * re(sum) / (T(n_points) * r_power));
  }
  return c;
}

}  // namespace

template <class T>
CumulantSet<T> cumulants_contour(const TiltedGenerator& gen, int m, const ContourOptions& options) {
  require(m >= 1, ErrorCode::invalid_argument, "cumulant order must be >= 1");
  require(options.radius > 0.0 && options.points >= 2 * m + 2, ErrorCode::invalid_argument,
          "contour needs a positive radius and more than 2m sample points");
  CumulantSet<T> out;
  out.method = CumulantMethod::contour;
  out.radius = options.radius;
  out.points = options.points;
  out.values = contour_pass<T>(gen, m, options.radius, options);
  if (options.check_halving) {
    auto half = contour_pass<T>(gen, m, 0.5 * options.radius, options);
    double worst = 0.0;
    for (int k = 0; k < m; ++k) {
      const T& a = out.values[static_cast<std::size_t>(k)];
      const T& b = half[static_cast<std::size_t>(k)];
      if (a == b) continue;
      worst = std::max(worst, to_double(abs_value(T(a - b)) / abs_value(a)));
    }
    out.consistency = worst;
    require(worst <= options.consistency_tol, ErrorCode::numerical,
            "contour cumulants disagree between radius r and r/2 (relative " + std::to_string(worst) + ")");
  }
  return out;
}

#define QSWISO_INSTANTIATE_COUNTING(T)                                                            \
  template ComplexT<T> refine_eigenvalue<T>(const TiltedGenerator&, const ComplexT<T>&, Complex, \
                                            const Eigen::VectorXcd&);                             \
  template struct SplitCharPoly<T>;                                                               \
  template SplitCharPoly<T> split_char_poly<T>(const Graph&, double, const AuxEdge&);             \
  template struct CumulantSet<T>;                                                                 \
  template CumulantSet<T> cumulants_forward<T>(const SplitCharPoly<T>&, int);                     \
  template CumulantSet<T> cumulants_contour<T>(const TiltedGenerator&, int, const ContourOptions&);

QSWISO_INSTANTIATE_COUNTING(double)
QSWISO_INSTANTIATE_COUNTING(Extended)
QSWISO_INSTANTIATE_COUNTING(Deep)

#undef QSWISO_INSTANTIATE_COUNTING

}  // namespace qswiso
