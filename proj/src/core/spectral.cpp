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

#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace qswiso {

namespace {

bool canonical_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Spectrum::Spectrum(std::vector<Complex> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end(), canonical_less);
}

double Spectrum::max_abs() const {
  double r = 0.0;
  for (const auto& v : values_) r = std::max(r, std::abs(v));
  return r;
}

double Spectrum::max_real() const {
  double r = -std::numeric_limits<double>::infinity();
  for (const auto& v : values_) r = std::max(r, v.real());
  return r;
}

Eigen::MatrixXcd balance(const Eigen::MatrixXcd& input) {
  Eigen::MatrixXcd m = input;
  const Eigen::Index n = m.rows();
  constexpr double kRadix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i).real()) + std::abs(m(j, i).imag());
        r += std::abs(m(i, j).real()) + std::abs(m(i, j).imag());
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadix * kRadix;
      }
      g = r * kRadix;
      while (c >= g) {
        f /= kRadix;
        c /= kRadix * kRadix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
  return m;
}

Spectrum eigenvalues(const Eigen::MatrixXcd& m) {
  require(m.rows() == m.cols(), ErrorCode::invalid_argument, "eigenvalues of a non-square matrix");
  require(static_cast<std::size_t>(m.rows()) <= kEigenDimLimit, ErrorCode::size_limit,
          "eigenvalue computation is capped at dimension 1024");
  if (m.rows() == 0) return Spectrum{};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.setMaxIterations(60 * m.rows());
  solver.compute(balance(m), /*computeEigenvectors=*/false);
  require(solver.info() == Eigen::Success, ErrorCode::not_converged,
          "QR iteration did not converge for a " + std::to_string(m.rows()) + "x" +
              std::to_string(m.rows()) + " matrix");
  const auto& ev = solver.eigenvalues();
  return Spectrum(std::vector<Complex>(ev.data(), ev.data() + ev.size()));
}

Spectrum eigenvalues(const SuperOperator& s) { return eigenvalues(s.entries); }

template <class T>
std::vector<ComplexT<T>> faddeev_leverrier(const Eigen::MatrixXcd& m) {
  using C = ComplexT<T>;
  const auto n = static_cast<std::size_t>(m.rows());
  DenseMatrix<C> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = make_complex<C>(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  return faddeev_leverrier_dense<T>(a);
}

template <class T>
std::vector<ComplexT<T>> faddeev_leverrier_dense(const DenseMatrix<ComplexT<T>>& a) {
  using C = ComplexT<T>;
  const std::size_t n = a.rows;

  std::vector<C> c(n + 1, C(0));
  c[n] = C(1);
  DenseMatrix<C> acc(n, n);  // M_k, starts at identity
  for (std::size_t i = 0; i < n; ++i) acc(i, i) = C(1);
  DenseMatrix<C> prod(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        C s(0);
        for (std::size_t l = 0; l < n; ++l) {
          if (a(i, l) == C(0)) continue;
          s += a(i, l) * acc(l, j);
        }
        prod(i, j) = s;
      }
    }
    C trace(0);
    for (std::size_t i = 0; i < n; ++i) trace += prod(i, i);
    c[n - k] = -trace / C(static_cast<int>(k));
    acc = prod;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[n - k];
  }
  return c;
}

template <class T>
BasicCharPoly<T> real_char_poly(const Eigen::MatrixXcd& m, double imag_tol) {
  return real_part_checked<T>(faddeev_leverrier<T>(m), imag_tol);
}

template <class T>
BasicCharPoly<T> real_char_poly_dense(const DenseMatrix<ComplexT<T>>& m, double imag_tol) {
  return real_part_checked<T>(faddeev_leverrier_dense<T>(m), imag_tol);
}

template <class T>
BasicCharPoly<T> real_part_checked(const std::vector<ComplexT<T>>& c, double imag_tol) {
  BasicCharPoly<T> p;
  p.coeffs.reserve(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    double r = std::abs(to_double(re(c[k])));
    double i = std::abs(to_double(im(c[k])));
    require(i <= imag_tol * std::max(1.0, r), ErrorCode::numerical,
            "characteristic polynomial coefficient " + std::to_string(k) +
                " has imaginary residue " + std::to_string(i));
    p.coeffs.push_back(re(c[k]));
  }
  return p;
}

template std::vector<ComplexT<double>> faddeev_leverrier<double>(const Eigen::MatrixXcd&);
template std::vector<ComplexT<Extended>> faddeev_leverrier<Extended>(const Eigen::MatrixXcd&);
template std::vector<ComplexT<Deep>> faddeev_leverrier<Deep>(const Eigen::MatrixXcd&);
template BasicCharPoly<double> real_char_poly<double>(const Eigen::MatrixXcd&, double);
template BasicCharPoly<double> real_char_poly_dense<double>(const DenseMatrix<ComplexT<double>>&, double);
template std::vector<ComplexT<double>> faddeev_leverrier_dense<double>(const DenseMatrix<ComplexT<double>>&);
template BasicCharPoly<Extended> real_char_poly<Extended>(const Eigen::MatrixXcd&, double);
template BasicCharPoly<Extended> real_char_poly_dense<Extended>(const DenseMatrix<ComplexT<Extended>>&, double);
template std::vector<ComplexT<Extended>> faddeev_leverrier_dense<Extended>(const DenseMatrix<ComplexT<Extended>>&);
template BasicCharPoly<Deep> real_char_poly<Deep>(const Eigen::MatrixXcd&, double);
template BasicCharPoly<Deep> real_char_poly_dense<Deep>(const DenseMatrix<ComplexT<Deep>>&, double);
template std::vector<ComplexT<Deep>> faddeev_leverrier_dense<Deep>(const DenseMatrix<ComplexT<Deep>>&);

CharPoly char_poly_from_roots(const Spectrum& roots) {
  std::vector<Complex> c{Complex(1.0, 0.0)};  // ascending powers
  for (const auto& r : roots.values()) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  CharPoly p;
  for (const auto& z : c) p.coeffs.push_back(z.real());
  return p;
}

CharPoly char_poly(const SuperOperator& s) {
  // The recursion cancels badly: near dim 100 even 128 bits leave O(1)
  // errors in the small coefficients. 512 bits is ample.
  if (s.dim() <= kFaddeevLeverrierDimLimit) return to_double(real_char_poly<Deep>(s.entries));
  return char_poly_from_roots(eigenvalues(s));
}

Spectrum omega_spectrum(const Graph& g, double omega) {
  return eigenvalues(compose(g, omega));
}

Spectrum closed_form_classical_spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g), Eigen::EigenvaluesOnly);
  std::vector<Complex> values;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    values.emplace_back(-solver.eigenvalues()(i), 0.0);
  for (int i = 0; i < g.order(); ++i)
    for (int j = 0; j < g.order(); ++j)
      if (i != j) values.emplace_back(-0.5 * (g.degree(i) + g.degree(j)), 0.0);
  return Spectrum(std::move(values));
}

Spectrum closed_form_quantum_spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency(g), Eigen::EigenvaluesOnly);
  const auto& alpha = solver.eigenvalues();
  std::vector<Complex> values;
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    for (Eigen::Index j = 0; j < alpha.size(); ++j) values.emplace_back(0.0, alpha(i) - alpha(j));
  return Spectrum(std::move(values));
}

double spectral_distance(const Spectrum& a, const Spectrum& b) {
  require(a.size() == b.size(), ErrorCode::invalid_argument,
          "spectral distance needs equal cardinality (" + std::to_string(a.size()) + " vs " +
              std::to_string(b.size()) + ")");
  auto parts = [](const Spectrum& s, bool real_part) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& v : s.values()) out.push_back(real_part ? v.real() : v.imag());
    std::sort(out.begin(), out.end());
    return out;
  };
  double delta = 0.0;
  for (bool real_part : {true, false}) {
    auto x = parts(a, real_part);
    auto y = parts(b, real_part);
    for (std::size_t i = 0; i < x.size(); ++i) delta += std::abs(x[i] - y[i]);
  }
  return delta;
}

double radius_bound(const Graph& g, double omega) {
  return omega * build_quantum(g).entries.norm() + (1.0 - omega) * build_classical(g).entries.norm();
}

ComparisonResult compare_spectra(const Spectrum& a, const Spectrum& b, double omega, double tau) {
  ComparisonResult r;
  r.delta = spectral_distance(a, b);
  r.omega = omega;
  r.tau = tau;
  r.threshold = tau * static_cast<double>(a.size());
  r.distinguished = r.delta > r.threshold;
  return r;
}

ComparisonResult compare(const Graph& a, const Graph& b, double omega, double tau) {
  require(a.order() == b.order(), ErrorCode::invalid_argument,
          "graphs of different order are trivially non-isomorphic; spectra are not comparable");
  return compare_spectra(omega_spectrum(a, omega), omega_spectrum(b, omega), omega, tau);
}

std::size_t count_distinct(const Spectrum& s, double tol) {
  const auto& v = s.values();
  std::vector<std::size_t> parent(v.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      // Sorted by real part: later values only get farther away.
      if (v[j].real() - v[i].real() > tol) break;
      if (std::abs(v[i] - v[j]) <= tol) parent[find(i)] = find(j);
    }
  }
  std::size_t clusters = 0;
  for (std::size_t i = 0; i < v.size(); ++i) clusters += find(i) == i;
  return clusters;
}

double conjugation_defect(const Spectrum& s) {
  const auto& v = s.values();
  std::vector<char> used(v.size(), 0);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex target = std::conj(v[i]);
    std::size_t best = v.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(v[j] - target);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    used[best] = 1;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

double spectral_gap(const Spectrum& s, double zero_tol) {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& v : s.values())
    if (std::abs(v) > zero_tol) gap = std::min(gap, std::abs(v.real()));
  return gap;
}

}  // namespace qswiso
