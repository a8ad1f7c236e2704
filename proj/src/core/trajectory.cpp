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

#include "trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "error.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace qswiso {

namespace {

constexpr double kConditionLimit = 1e8;  // beyond this, propagate with expm
constexpr double kSurvivalTol = 1e-14;

void validate(const Graph& g, double omega, const AuxEdge& aux) {
  require(omega >= 0.0 && omega <= 1.0, ErrorCode::invalid_argument, "omega must lie in [0, 1]");
  validate_aux_edge(g, aux);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ChannelSet ChannelSet::build(const Graph& g, double omega, const AuxEdge& aux) {
  validate(g, omega, aux);
  ChannelSet set;
  set.n = g.order();
  if (omega < 1.0) {
    for (const auto& e : g.edges()) {
      set.channels.push_back({e.first, e.second, 1.0 - omega, false});
      set.channels.push_back({e.second, e.first, 1.0 - omega, false});
    }
  }
  set.channels.push_back({aux.from, aux.to, aux.epsilon, true});
  return set;
}

double ChannelSet::total_rate(int i) const {
  double s = 0.0;
  for (const auto& c : channels)
    if (c.from == i) s += c.rate;
  return s;
}

const Channel& ChannelSet::counted_channel() const {
  for (const auto& c : channels)
    if (c.counted) return c;
  fail(ErrorCode::invalid_argument, "channel set has no counted channel");
}

JumpEngine::JumpEngine(const Graph& g, double omega, const AuxEdge& aux)
    : n_(g.order()), channels_(ChannelSet::build(g, omega, aux)) {
  gamma_ = Eigen::VectorXd::Zero(n_);
  for (int i = 0; i < n_; ++i)
    gamma_(i) = (1.0 - omega) * g.degree(i) + (i == aux.from ? aux.epsilon : 0.0);
  h_eff_ = omega * adjacency(g).cast<Complex>();
  for (int i = 0; i < n_; ++i) h_eff_(i, i) -= Complex(0.0, 0.5 * gamma_(i));

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h_eff_, true);
  if (solver.info() == Eigen::Success) {
    v_ = solver.eigenvectors();
    lambda_ = solver.eigenvalues();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(v_);
    if (lu.isInvertible()) {
      v_inv_ = lu.inverse();
      const double cond = v_.norm() * v_inv_.norm();
      use_eigen_ = std::isfinite(cond) && cond < kConditionLimit;
    } else {
      use_eigen_ = false;
    }
  } else {
    use_eigen_ = false;
  }
}

Eigen::VectorXcd JumpEngine::evolve(int k, double t) const {
  if (use_eigen_) {
    Eigen::VectorXcd w = v_inv_.col(k);
    for (int i = 0; i < n_; ++i) w(i) *= std::exp(Complex(0.0, -1.0) * lambda_(i) * t);
    return v_ * w;
  }
  Eigen::MatrixXcd m = (Complex(0.0, -t) * h_eff_).exp();
  return m.col(k);
}

double JumpEngine::survival(int k, double t) const { return evolve(k, t).squaredNorm(); }

double JumpEngine::decay_rate(int k, double t) const {
  const Eigen::VectorXcd psi = evolve(k, t);
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += gamma_(i) * std::norm(psi(i));
  return s;
}

std::optional<double> JumpEngine::jump_time(int k, double r, double horizon) const {
  if (horizon <= 0.0) return std::nullopt;
  if (survival(k, horizon) > r) return std::nullopt;
  double lo = 0.0;
  double hi = std::min(horizon, 1.0 / std::max(gamma_.maxCoeff(), 1e-300));
  while (survival(k, hi) > r) {
    lo = hi;
    hi = std::min(2.0 * hi, horizon);
  }
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::VectorXcd psi = evolve(k, t);
    const double f = psi.squaredNorm() - r;
    if (std::abs(f) <= kSurvivalTol) break;
    if (f > 0.0) lo = t;
    else hi = t;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    double rate = 0.0;
    for (int i = 0; i < n_; ++i) rate += gamma_(i) * std::norm(psi(i));
    const double newton = rate > 0.0 ? t + f / rate : hi;
    t = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
  }
  return t;
}

namespace {

struct Jump {
  double time;
  const Channel* channel;
};

// Stepwise walker for one stream: a basis state, a clock and an RNG.
class Walker {
 public:
  Walker(const JumpEngine& engine, std::uint64_t seed, int start, bool diagnostics)
      : engine_(engine), rng_(seed), k_(start), diagnostics_(diagnostics) {
    by_source_.resize(static_cast<std::size_t>(engine.n()));
    for (const auto& c : engine.channels().channels) by_source_[static_cast<std::size_t>(c.from)].push_back(&c);
  }

  double time() const noexcept { return t_; }
  int vertex() const noexcept { return k_; }
  const TrajectoryDiagnostics& diagnostics() const noexcept { return diag_; }

  std::optional<Jump> next(double horizon) {
    double r = 0.0;
    while (r <= 0.0) r = uniform_(rng_);
    auto tau = engine_.jump_time(k_, r, horizon - t_);
    if (!tau) {
      t_ = horizon;
      return std::nullopt;
    }
    const Eigen::VectorXcd psi = engine_.evolve(k_, *tau);
    double total = 0.0;
    std::vector<double> weights;
    std::vector<const Channel*> candidates;
    for (int i = 0; i < engine_.n(); ++i) {
      const double p = std::norm(psi(i));
      if (p == 0.0) continue;
      for (const Channel* c : by_source_[static_cast<std::size_t>(i)]) {
        weights.push_back(c->rate * p);
        candidates.push_back(c);
        total += c->rate * p;
      }
    }
    require(total > 0.0, ErrorCode::numerical, "no channel has positive weight at a jump");
    if (diagnostics_) record(psi, r);
    const double pick = uniform_(rng_) * total;
    double acc = 0.0;
    const Channel* chosen = candidates.back();
    for (std::size_t j = 0; j < weights.size(); ++j) {
      acc += weights[j];
      if (pick < acc) {
        chosen = candidates[j];
        break;
      }
    }
    t_ += *tau;
    k_ = chosen->to;
    return Jump{t_, chosen};
  }

 private:
  void record(const Eigen::VectorXcd& psi, double r) {
    ++diag_.jumps;
    const double s = psi.squaredNorm();
    diag_.max_survival_error = std::max(diag_.max_survival_error, std::abs(s - r));
    double expected = 0.0;
    for (const Channel* c : by_source_[static_cast<std::size_t>(k_)]) expected += c->rate;
    diag_.max_rate_error =
        std::max(diag_.max_rate_error, std::abs(expected - engine_.channels().total_rate(k_)));
    diag_.max_offbasis_weight = std::max(diag_.max_offbasis_weight, 1.0 - std::norm(psi(k_)) / s);
  }

  const JumpEngine& engine_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::vector<std::vector<const Channel*>> by_source_;
  double t_ = 0.0;
  int k_ = 0;
  bool diagnostics_ = false;
  TrajectoryDiagnostics diag_;
};

void merge(TrajectoryDiagnostics& into, const TrajectoryDiagnostics& d) {
  into.jumps += d.jumps;
  into.max_survival_error = std::max(into.max_survival_error, d.max_survival_error);
  into.max_rate_error = std::max(into.max_rate_error, d.max_rate_error);
  into.max_offbasis_weight = std::max(into.max_offbasis_weight, d.max_offbasis_weight);
}

}  // namespace

double default_burn_in(const Graph& g, double omega, const AuxEdge& aux) {
  validate(g, omega, aux);
  const double gap = spectral_gap(eigenvalues(compose(g, omega, aux, 0.0)));
  require(std::isfinite(gap) && gap > 1e-12, ErrorCode::numerical,
          "spectral gap vanishes; pass an explicit burn-in");
  return 10.0 / gap;
}

CountRecord simulate(const Graph& g, const SimulationParams& p) {
  validate(g, p.omega, p.aux);
  require(p.dt > 0.0 && std::isfinite(p.dt), ErrorCode::invalid_argument, "window length dt must be positive");
  require(p.windows > 0, ErrorCode::invalid_argument, "number of windows must be positive");
  require(p.stream_windows > 0, ErrorCode::invalid_argument, "stream size must be positive");
  const double burn_in = p.burn_in ? *p.burn_in : default_burn_in(g, p.omega, p.aux);
  require(burn_in >= 0.0 && std::isfinite(burn_in), ErrorCode::invalid_argument, "burn-in must be nonnegative");

  const JumpEngine engine(g, p.omega, p.aux);
  const std::int64_t streams = (p.windows + p.stream_windows - 1) / p.stream_windows;
  std::vector<std::vector<std::int64_t>> parts(static_cast<std::size_t>(streams));
  std::vector<TrajectoryDiagnostics> diags(static_cast<std::size_t>(streams));

  parallel_for(static_cast<std::size_t>(streams), [&](std::size_t s) {
    const std::int64_t first = static_cast<std::int64_t>(s) * p.stream_windows;
    const std::int64_t count = std::min(p.stream_windows, p.windows - first);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(count), 0);
    Walker walker(engine, derive_seed(p.seed, s), 0, p.diagnostics);
    const double horizon = burn_in + static_cast<double>(count) * p.dt;
    while (auto jump = walker.next(horizon)) {
      if (!jump->channel->counted || jump->time < burn_in) continue;
      const auto w = static_cast<std::int64_t>(std::floor((jump->time - burn_in) / p.dt));
      if (w >= 0 && w < count) ++counts[static_cast<std::size_t>(w)];
    }
    parts[s] = std::move(counts);
    diags[s] = walker.diagnostics();
  });

  CountRecord rec;
  rec.windows = p.windows;
  rec.dt = p.dt;
  rec.burn_in = burn_in;
  rec.seed = p.seed;
  rec.omega = p.omega;
  rec.aux = p.aux;
  rec.stream_windows = p.stream_windows;
  rec.counts.reserve(static_cast<std::size_t>(p.windows));
  for (std::size_t s = 0; s < parts.size(); ++s) {
    rec.counts.insert(rec.counts.end(), parts[s].begin(), parts[s].end());
    merge(rec.diagnostics, diags[s]);
  }
  return rec;
}

CumulantEstimates k_statistics(const std::vector<std::int64_t>& counts, double dt, int order) {
  require(order >= 1 && order <= 4, ErrorCode::invalid_argument, "k-statistics are available for orders 1..4");
  require(dt > 0.0, ErrorCode::invalid_argument, "window length dt must be positive");
  const auto s = static_cast<double>(counts.size());
  require(static_cast<int>(counts.size()) > order, ErrorCode::invalid_argument,
          "sample size must exceed the estimator order");
  long double sum = 0.0L;
  for (auto c : counts) sum += static_cast<long double>(c);
  const long double mean = sum / static_cast<long double>(s);
  long double m2 = 0.0L, m3 = 0.0L, m4 = 0.0L;
  for (auto c : counts) {
    const long double d = static_cast<long double>(c) - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= s;
  m3 /= s;
  m4 /= s;
  const long double n = s;
  std::vector<long double> k;
  k.push_back(mean);
  if (order >= 2) k.push_back(n / (n - 1) * m2);
  if (order >= 3) k.push_back(n * n / ((n - 1) * (n - 2)) * m3);
  if (order >= 4) k.push_back(n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3)));

  const long double k2 = n / (n - 1) * m2;
  long double k4 = 0.0L;
  if (n > 3) k4 = n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3));
  // Leading-order sampling variances.
  std::vector<long double> var{k2 / n, std::max(k4 / n + 2 * k2 * k2 / (n - 1), 0.0L),
                               6 * k2 * k2 * k2 / n, 24 * k2 * k2 * k2 * k2 / n};

  CumulantEstimates out;
  out.order = order;
  for (int j = 0; j < order; ++j) {
    const auto kj = static_cast<double>(k[static_cast<std::size_t>(j)]);
    out.k.push_back(kj);
    out.values.push_back(kj / dt);
    out.stderr_.push_back(std::sqrt(static_cast<double>(var[static_cast<std::size_t>(j)])) / dt);
  }
  return out;
}

CumulantEstimates k_statistics(const CountRecord& rec, int order) {
  return k_statistics(rec.counts, rec.dt, order);
}

VarianceScalingReport variance_scaling_check(const Graph& g, double omega, const AuxEdge& aux, int k,
                                             const std::vector<std::int64_t>& sizes, int batches,
                                             double dt, std::uint64_t seed, std::optional<double> burn_in) {
  require(k >= 1 && k <= 4, ErrorCode::invalid_argument, "estimator order must be 1..4");
  require(sizes.size() >= 2, ErrorCode::invalid_argument, "need at least two sample sizes");
  require(batches >= 2, ErrorCode::invalid_argument, "need at least two batches per size");
  const double b_in = burn_in ? *burn_in : default_burn_in(g, omega, aux);
  VarianceScalingReport rep;
  rep.k = k;
  rep.sizes = sizes;
  std::uint64_t run = 0;
  for (auto s : sizes) {
    require(s > k, ErrorCode::invalid_argument, "sample size must exceed the estimator order");
    std::vector<double> est;
    for (int b = 0; b < batches; ++b) {
      SimulationParams p;
      p.omega = omega;
      p.aux = aux;
      p.dt = dt;
      p.windows = s;
      p.burn_in = b_in;
      p.seed = derive_seed(seed, run++);
      est.push_back(k_statistics(simulate(g, p), k).values.back());
    }
    const double mean = std::accumulate(est.begin(), est.end(), 0.0) / batches;
    double var = 0.0;
    for (double e : est) var += (e - mean) * (e - mean);
    var /= batches - 1;
    require(var > 0.0, ErrorCode::invalid_argument, "estimator has zero variance; degenerate input");
    rep.means.push_back(mean);
    rep.variances.push_back(var);
  }
  // Least squares of log var on log s.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double x = std::log(static_cast<double>(sizes[i]));
    const double y = std::log(rep.variances[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.exponent = -slope;
  rep.within_bounds = rep.exponent >= 0.8 && rep.exponent <= 1.2;
  return rep;
}

OccupationEstimate occupation_estimate(const Graph& g, double omega, const AuxEdge& aux, std::int64_t samples,
                                       double spacing, std::uint64_t seed, std::optional<double> burn_in) {
  validate(g, omega, aux);
  require(spacing > 0.0, ErrorCode::invalid_argument, "sample spacing must be positive");
  constexpr std::int64_t kBatches = 20;
  require(samples >= kBatches, ErrorCode::invalid_argument, "need at least 20 samples");
  const double b_in = burn_in ? *burn_in : default_burn_in(g, omega, aux);
  const JumpEngine engine(g, omega, aux);
  const int n = g.order();
  const std::int64_t per = samples / kBatches;
  std::vector<std::vector<double>> batch_means(static_cast<std::size_t>(kBatches));

  parallel_for(static_cast<std::size_t>(kBatches), [&](std::size_t b) {
    std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
    Walker walker(engine, derive_seed(seed, b), 0, false);
    const double horizon = b_in + static_cast<double>(per) * spacing;
    std::int64_t taken = 0;
    auto sample_until = [&](double until, int vertex, double since) {
      while (taken < per) {
        const double ts = b_in + static_cast<double>(taken) * spacing;
        if (ts >= until) break;
        const Eigen::VectorXcd psi = engine.evolve(vertex, ts - since);
        const double norm = psi.squaredNorm();
        for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i)] += std::norm(psi(i)) / norm;
        ++taken;
      }
    };
    while (true) {
      const int vertex = walker.vertex();
      const double since = walker.time();
      auto jump = walker.next(horizon);
      sample_until(jump ? jump->time : horizon + spacing, vertex, since);
      if (!jump) break;
    }
    for (auto& a : acc) a /= static_cast<double>(per);
    batch_means[b] = std::move(acc);
  });

  OccupationEstimate out;
  out.samples = per * kBatches;
  out.mean.assign(static_cast<std::size_t>(n), 0.0);
  out.stderr_.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double mean = 0.0;
    for (const auto& bm : batch_means) mean += bm[static_cast<std::size_t>(i)];
    mean /= kBatches;
    double var = 0.0;
    for (const auto& bm : batch_means) var += std::pow(bm[static_cast<std::size_t>(i)] - mean, 2);
    var /= kBatches - 1;
    out.mean[static_cast<std::size_t>(i)] = mean;
    out.stderr_[static_cast<std::size_t>(i)] = std::sqrt(var / kBatches);
  }
  return out;
}

}  // namespace qswiso
