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
#include <random>

#include "counting.hpp"
#include "error.hpp"
#include "support.hpp"
#include "trajectory.hpp"

using namespace qswiso;

namespace {

Graph p3() { return named_graph("path", 3); }

SimulationParams params(double omega, double eps, double dt, std::int64_t windows, std::uint64_t seed) {
  SimulationParams p;
  p.omega = omega;
  p.aux = AuxEdge{0, 2, eps};
  p.dt = dt;
  p.windows = windows;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("channel rates") {
  const auto ch = ChannelSet::build(p3(), 0.5, AuxEdge{0, 2, 0.01});
  CHECK(ch.channels.size() == 5);
  CHECK(ch.total_rate(0) == doctest::Approx(0.5 + 0.01));
  CHECK(ch.total_rate(1) == doctest::Approx(1.0));
  CHECK(ch.total_rate(2) == doctest::Approx(0.5));
  CHECK(ch.counted_channel().from == 0);
  CHECK(ch.counted_channel().to == 2);
  CHECK(ch.counted_channel().counted);
  // omega = 1 leaves only the counted channel.
  CHECK(ChannelSet::build(p3(), 1.0, AuxEdge{0, 2, 0.01}).total_rate(1) == 0.0);
}

TEST_CASE("no-jump evolution: survival, decay rate and jump times") {
  const JumpEngine eng(p3(), 0.5, AuxEdge{0, 2, 0.01});
  for (int k = 0; k < 3; ++k) {
    CHECK(eng.survival(k, 0.0) == doctest::Approx(1.0));
    double prev = 1.0;
    for (double t : {0.3, 1.0, 2.5, 7.0}) {
      const double s = eng.survival(k, t);
      CHECK(s <= prev + 1e-14);
      prev = s;
      const double h = 1e-5;
      const double fd = -(eng.survival(k, t + h) - eng.survival(k, t - h)) / (2 * h);
      CHECK(eng.decay_rate(k, t) == doctest::Approx(fd).epsilon(1e-6));
    }
    const auto t = eng.jump_time(k, 0.37, 1e4);
    REQUIRE(t.has_value());
    CHECK(eng.survival(k, *t) == doctest::Approx(0.37).epsilon(1e-9));
  }
  // Horizon too short to reach r.
  CHECK_FALSE(eng.jump_time(1, 1e-300, 1e-3).has_value());
}

TEST_CASE("simulation is deterministic in the seed") {
  const auto a = simulate(p3(), params(0.5, 0.01, 10.0, 600, 42));
  const auto b = simulate(p3(), params(0.5, 0.01, 10.0, 600, 42));
  const auto c = simulate(p3(), params(0.5, 0.01, 10.0, 600, 43));
  CHECK(a.counts == b.counts);
  CHECK(a.counts != c.counts);
  CHECK(a.counts.size() == 600);
  CHECK(a.seed == 42);
  CHECK(a.burn_in == doctest::Approx(default_burn_in(p3(), 0.5, AuxEdge{0, 2, 0.01})));
  for (auto x : a.counts) CHECK(x >= 0);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
}

TEST_CASE("k-statistics on small samples") {
  const auto e = k_statistics(std::vector<std::int64_t>{1, 2, 3}, 1.0, 2);
  CHECK(e.k[0] == doctest::Approx(2.0));
  CHECK(e.k[1] == doctest::Approx(1.0));
  // mean 4, central moments m2 = 12.5, m3 = 45
  const auto f = k_statistics(std::vector<std::int64_t>{1, 2, 3, 10}, 2.0, 3);
  CHECK(f.k[0] == doctest::Approx(4.0));
  CHECK(f.k[1] == doctest::Approx(4.0 / 3.0 * 12.5));
  CHECK(f.k[2] == doctest::Approx(16.0 / 6.0 * 45.0));
  CHECK(f.values[0] == doctest::Approx(2.0));
  const auto g = k_statistics(std::vector<std::int64_t>(50, 7), 1.0, 4);
  CHECK(g.k[0] == doctest::Approx(7.0));
  for (int j = 1; j < 4; ++j) CHECK(g.k[static_cast<std::size_t>(j)] == doctest::Approx(0.0));
  CHECK_THROWS_AS(k_statistics(std::vector<std::int64_t>{1, 2}, 1.0, 2), Error);
  CHECK_THROWS_AS(k_statistics(std::vector<std::int64_t>(10, 1), 1.0, 5), Error);
  CHECK_THROWS_AS(k_statistics(std::vector<std::int64_t>(10, 1), 0.0, 1), Error);
}

TEST_CASE("k-statistics recover Poisson cumulants") {
  std::mt19937_64 rng(5);
  std::poisson_distribution<std::int64_t> pois(3.0);
  std::vector<std::int64_t> x(200000);
  for (auto& v : x) v = pois(rng);
  const auto e = k_statistics(x, 1.0, 4);
  for (int j = 0; j < 4; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    CHECK(std::abs(e.values[sj] - 3.0) < 4.0 * e.stderr_[sj]);
  }
  // Higher orders are noisier.
  CHECK(e.stderr_[1] > e.stderr_[0]);
}

TEST_CASE("diagnostics: survival inversion, channel rates, classical basis") {
  auto p = params(0.5, 0.01, 5.0, 300, 7);
  p.diagnostics = true;
  const auto r = simulate(p3(), p);
  CHECK(r.diagnostics.jumps > 0);
  CHECK(r.diagnostics.max_survival_error < 1e-9);
  CHECK(r.diagnostics.max_rate_error < 1e-12);
  CHECK(r.diagnostics.max_offbasis_weight > 1e-6);

  auto q = params(0.0, 0.01, 5.0, 300, 7);
  q.diagnostics = true;
  const auto c = simulate(p3(), q);
  CHECK(c.diagnostics.max_offbasis_weight == 0.0);
}

TEST_CASE("counting rate and noise match the analytic cumulants") {
  const AuxEdge aux{0, 2, 0.01};
  const auto rec = simulate(p3(), params(0.5, 0.01, 100.0, 3000, 11));
  const auto est = k_statistics(rec, 2);
  const auto exact = cumulants_forward(split_char_poly<Extended>(p3(), 0.5, aux), 2);
  for (int k = 1; k <= 2; ++k) {
    const auto sk = static_cast<std::size_t>(k - 1);
    const double z = (est.values[sk] - to_double(exact.c(k))) / est.stderr_[sk];
    CHECK(std::abs(z) < 4.0);
  }
  const auto rho = steady_state(compose(p3(), 0.5, aux));
  CHECK(to_double(exact.c(1)) == doctest::Approx(0.01 * rho.population(0)).epsilon(1e-9));
}

TEST_CASE("classical count distribution matches an independent Gillespie chain") {
  const AuxEdge aux{0, 2, 0.05};
  auto p = params(0.0, 0.05, 20.0, 4000, 3);
  p.burn_in = 50.0;
  const auto rec = simulate(p3(), p);
  const auto ref = testing::gillespie_counts(p3(), aux, 20.0, 4000, 50.0, 99);
  std::vector<double> a(rec.counts.begin(), rec.counts.end()), b(ref.begin(), ref.end());
  const auto ks = testing::ks_two_sample(a, b);
  MESSAGE("KS D = " << ks.statistic << ", p = " << ks.p_value);
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("time-averaged occupations approach the steady state") {
  const AuxEdge aux{0, 2, 0.05};
  const auto occ = occupation_estimate(p3(), 0.5, aux, 4000, 2.0, 17);
  const auto rho = steady_state(compose(p3(), 0.5, aux));
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto si = static_cast<std::size_t>(i);
    total += occ.mean[si];
    CHECK(std::abs(occ.mean[si] - rho.population(i)) < 4.0 * occ.stderr_[si] + 1e-3);
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("estimator variance falls with sample size") {
  const auto rep = variance_scaling_check(p3(), 0.5, AuxEdge{0, 2, 0.05}, 1, {100, 400}, 24, 20.0, 8);
  CHECK(rep.variances.size() == 2);
  CHECK(rep.variances[1] < rep.variances[0]);
  CHECK(rep.exponent > 0.5);
  CHECK(rep.exponent < 1.5);
}

TEST_CASE("invalid simulation input is rejected") {
  CHECK_THROWS_AS(simulate(p3(), params(0.5, 0.01, 0.0, 10, 1)), Error);
  CHECK_THROWS_AS(simulate(p3(), params(0.5, 0.01, 1.0, 0, 1)), Error);
  CHECK_THROWS_AS(simulate(p3(), params(1.5, 0.01, 1.0, 10, 1)), Error);
  auto p = params(0.5, 0.01, 1.0, 10, 1);
  p.aux = AuxEdge{0, 1, 0.01};
  CHECK_THROWS_AS(simulate(p3(), p), Error);
  p.aux = AuxEdge{0, 2, 0.01};
  p.burn_in = -1.0;
  CHECK_THROWS_AS(simulate(p3(), p), Error);
  CHECK_THROWS_AS(variance_scaling_check(p3(), 0.5, AuxEdge{0, 2, 0.01}, 1, {100}, 4, 1.0, 1), Error);
}
