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

// Scalar types and small dense kernels shared by the extended-precision
// parts of the library (characteristic polynomials, cumulant recursion,
// contour refinement, reconstruction). Everything here is templated on the
// real scalar; double, Extended and Deep are the instantiated choices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace qswiso {

namespace bmp = boost::multiprecision;

template <unsigned Bits>
using BinFloat = bmp::number<bmp::cpp_bin_float<Bits, bmp::digit_base_2>, bmp::et_off>;
template <unsigned Bits>
using BinComplex =
    bmp::number<bmp::complex_adaptor<bmp::cpp_bin_float<Bits, bmp::digit_base_2>>, bmp::et_off>;

// 128-bit significand.
using Extended = BinFloat<128>;
// 512-bit significand, for the reconstruction system at small epsilon.
using Deep = BinFloat<512>;

template <class T>
struct ComplexOf;
template <>
struct ComplexOf<double> {
  using type = std::complex<double>;
};
template <unsigned Bits>
struct ComplexOf<BinFloat<Bits>> {
  using type = BinComplex<Bits>;
};
template <class T>
using ComplexT = typename ComplexOf<T>::type;

inline double re(const std::complex<double>& z) { return z.real(); }
inline double im(const std::complex<double>& z) { return z.imag(); }
template <unsigned Bits>
BinFloat<Bits> re(const BinComplex<Bits>& z) {
  return real(z);
}
template <unsigned Bits>
BinFloat<Bits> im(const BinComplex<Bits>& z) {
  return imag(z);
}

inline double to_double(double x) { return x; }
template <unsigned Bits>
double to_double(const BinFloat<Bits>& x) {
  return x.template convert_to<double>();
}

template <class T>
T unit_roundoff() {
  return std::numeric_limits<T>::epsilon();
}

template <class C>
C make_complex(const std::complex<double>& z) {
  using R = decltype(re(C{}));
  return C(R(z.real()), R(z.imag()));
}

// Row-major dense matrix; only what the kernels below need.
template <class T>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

template <class T>
T abs_value(const T& x) {
  using std::abs;
  return abs(x);
}

// Gaussian elimination with partial pivoting; solves a x = b in place (b
// becomes x). Returns false on an exactly zero pivot.
template <class S>
bool lu_solve_in_place(DenseMatrix<S> a, std::vector<S>& b) {
  const std::size_t n = a.rows;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    auto best = abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      auto mag = abs(a(i, k));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (best == 0) return false;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      S factor = a(i, k) / a(k, k);
      if (factor == S(0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
      b[i] -= factor * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    S acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a(k, j) * b[j];
    b[k] = acc / a(k, k);
  }
  return true;
}

// One-sided Jacobi SVD of a real square or tall matrix: a = U diag(sigma) V^T.
template <class T>
struct SvdResult {
  std::vector<T> sigma;  // descending
  DenseMatrix<T> u;      // rows x cols, columns normalized
  DenseMatrix<T> v;      // cols x cols
};

template <class T>
SvdResult<T> jacobi_svd(DenseMatrix<T> a, int max_sweeps = 80) {
  using std::sqrt;
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  DenseMatrix<T> v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = T(1);
  const T tol = unit_roundoff<T>() * T(static_cast<double>(m));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        T alpha(0), beta(0), gamma(0);
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (gamma == 0 || abs_value(gamma) <= tol * sqrt(alpha * beta)) continue;
        rotated = true;
        T zeta = (beta - alpha) / (T(2) * gamma);
        T sign = zeta >= 0 ? T(1) : T(-1);
        T t = sign / (abs_value(zeta) + sqrt(T(1) + zeta * zeta));
        T c = T(1) / sqrt(T(1) + t * t);
        T s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          T x = a(i, p);
          T y = a(i, q);
          a(i, p) = c * x - s * y;
          a(i, q) = s * x + c * y;
        }
        for (std::size_t i = 0; i < n; ++i) {
          T x = v(i, p);
          T y = v(i, q);
          v(i, p) = c * x - s * y;
          v(i, q) = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<T> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    T norm(0);
    for (std::size_t i = 0; i < m; ++i) norm += a(i, j) * a(i, j);
    sigma[j] = sqrt(norm);
    if (sigma[j] != 0)
      for (std::size_t i = 0; i < m; ++i) a(i, j) /= sigma[j];
  }
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
  SvdResult<T> out{std::vector<T>(n), DenseMatrix<T>(m, n), DenseMatrix<T>(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.sigma[k] = sigma[order[k]];
    for (std::size_t i = 0; i < m; ++i) out.u(i, k) = a(i, order[k]);
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, order[k]);
  }
  return out;
}

template <class T>
T binomial(int n, int k) {
  if (k < 0 || k > n) return T(0);
  T r(1);
  for (int i = 1; i <= k; ++i) {
    r *= T(n - k + i);
    r /= T(i);
  }
  return r;
}

}  // namespace qswiso
