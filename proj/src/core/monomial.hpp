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

// Sums over ordered compositions used by the derivative expansion of
// q_i(chi) nu(chi)^i. With nu(0) = 0,
//
//   d^k/dchi^k nu^i |_0 = sum_{p_1+..+p_i = k, p_j >= 1} multinomial(k; p) c_{p_1}..c_{p_i}
//
// which we tabulate as power_derivative(k, i). The table is filled by
// splitting off the first part p of each composition:
//   power_derivative(k, i) = sum_p binom(k, p) c_p power_derivative(k - p, i - 1).

#include <cstddef>
#include <vector>

#include "precision.hpp"

namespace qswiso {

template <class T>
class MonomialDerivatives {
 public:
  // cumulants[k-1] holds c_k. Rows up to max_order, powers up to max_power.
  MonomialDerivatives(int max_order, int max_power)
      : max_order_(max_order), max_power_(max_power),
        binom_(static_cast<std::size_t>(max_order + 1) * static_cast<std::size_t>(max_order + 1), T(0)),
        table_(static_cast<std::size_t>(max_order + 1) * static_cast<std::size_t>(max_power + 1), T(0)),
        cumulants_(static_cast<std::size_t>(max_order + 1), T(0)) {
    for (int n = 0; n <= max_order; ++n) {
      binom(n, 0) = T(1);
      for (int k = 1; k <= n; ++k) binom(n, k) = binom(n - 1, k - 1) + (k < n ? binom(n - 1, k) : T(0));
    }
    at(0, 0) = T(1);
    filled_ = 0;
  }

  int max_order() const noexcept { return max_order_; }
  int max_power() const noexcept { return max_power_; }
  int filled_order() const noexcept { return filled_; }

  // Supplies c_k for k = filled_order() + 1 and fills row k of the table.
  void push_cumulant(const T& c) {
    const int k = filled_ + 1;
    cumulants_[static_cast<std::size_t>(k)] = c;
    fill_row(k, /*from_power=*/1);
    filled_ = k;
  }

  // Row k of the table for powers >= 2 depends only on c_1..c_{k-1};
  // used by the forward recursion before c_k is known.
  T partial(int k, int i) const {
    T s(0);
    for (int p = 1; p <= k - i + 1; ++p) {
      if (p >= k) break;
      s += binom(k, p) * cumulants_[static_cast<std::size_t>(p)] * at(k - p, i - 1);
    }
    return s;
  }

  const T& power_derivative(int k, int i) const { return at(k, i); }

  // Coefficients multiplying q_i and q_i' in the l-th derivative equation.
  T coeff_on_q(int l, int i) const { return at(l, i); }
  T coeff_on_qprime(int l, int i) const {
    T s(0);
    for (int k = 0; k < l; ++k) s += binom(l, k) * at(k, i);
    return s;
  }

  const T& binomial_coefficient(int n, int k) const { return binom(n, k); }

 private:
  void fill_row(int k, int from_power) {
    for (int i = from_power; i <= max_power_ && i <= k; ++i) {
      T s(0);
      for (int p = 1; p <= k - i + 1; ++p)
        s += binom(k, p) * cumulants_[static_cast<std::size_t>(p)] * at(k - p, i - 1);
      at(k, i) = s;
    }
  }

  T& binom(int n, int k) { return binom_[static_cast<std::size_t>(n * (max_order_ + 1) + k)]; }
  const T& binom(int n, int k) const { return binom_[static_cast<std::size_t>(n * (max_order_ + 1) + k)]; }
  T& at(int k, int i) { return table_[static_cast<std::size_t>(k * (max_power_ + 1) + i)]; }
  const T& at(int k, int i) const { return table_[static_cast<std::size_t>(k * (max_power_ + 1) + i)]; }

  int max_order_;
  int max_power_;
  std::vector<T> binom_;
  std::vector<T> table_;
  std::vector<T> cumulants_;  // 1-based
  int filled_ = 0;
};

}  // namespace qswiso
