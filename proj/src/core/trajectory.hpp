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

// Quantum-jump unraveling of the walk with a counted auxiliary edge.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"
#include "liouville.hpp"

namespace qswiso {

struct Channel {
  int from = 0;
  int to = 0;
  double rate = 0.0;
  bool counted = false;
};

// One channel per directed graph edge at rate 1 - omega, plus the counted
// auxiliary channel at rate epsilon.
struct ChannelSet {
  int n = 0;
  std::vector<Channel> channels;

  static ChannelSet build(const Graph& g, double omega, const AuxEdge& aux);

  // (1 - omega) d_i + epsilon [i = u].
  double total_rate(int i) const;
  const Channel& counted_channel() const;
};

struct SimulationParams {
  double omega = 0.5;
  AuxEdge aux{};
  double dt = 1.0;
  std::int64_t windows = 1000;
  std::optional<double> burn_in;  // default 10 / spectral gap
  std::uint64_t seed = 0;
  std::int64_t stream_windows = 256;  // windows per independent stream
  bool diagnostics = false;
};

struct TrajectoryDiagnostics {
  std::int64_t jumps = 0;
  double max_survival_error = 0.0;  // |S(t_jump) - r| at each sampled jump
  double max_rate_error = 0.0;      // total channel rate vs (1 - omega) d_i + eps [i = u]
  double max_offbasis_weight = 0.0; // weight off the occupied vertex; zero at omega = 0
};

struct CountRecord {
  std::int64_t windows = 0;
  double dt = 0.0;
  std::vector<std::int64_t> counts;
  double burn_in = 0.0;
  std::uint64_t seed = 0;
  double omega = 0.0;
  AuxEdge aux{};
  std::int64_t stream_windows = 0;
  TrajectoryDiagnostics diagnostics;
};

double default_burn_in(const Graph& g, double omega, const AuxEdge& aux);

CountRecord simulate(const Graph& g, const SimulationParams& params);

// Jump engine for one stream; exposed for tests.
class JumpEngine {
 public:
  JumpEngine(const Graph& g, double omega, const AuxEdge& aux);

  int n() const noexcept { return n_; }
  const ChannelSet& channels() const noexcept { return channels_; }
  const Eigen::MatrixXcd& effective_hamiltonian() const noexcept { return h_eff_; }

  // Unnormalized state at time t after starting from basis vector k.
  Eigen::VectorXcd evolve(int k, double t) const;
  double survival(int k, double t) const;
  // -d/dt survival = psi^dagger Gamma psi.
  double decay_rate(int k, double t) const;

  // Time at which survival from basis vector k drops to r, or nullopt if it
  // stays above r up to horizon.
  std::optional<double> jump_time(int k, double r, double horizon) const;

 private:
  int n_;
  ChannelSet channels_;
  Eigen::MatrixXcd h_eff_;
  Eigen::VectorXd gamma_;
  bool use_eigen_ = true;
  Eigen::VectorXcd lambda_;
  Eigen::MatrixXcd v_;
  Eigen::MatrixXcd v_inv_;
};

struct CumulantEstimates {
  int order = 0;
  std::vector<double> k;       // raw k-statistics of the counts
  std::vector<double> values;  // k / dt, estimates of c_1..c_order
  std::vector<double> stderr_; // standard errors of values
};

// Unbiased k-statistics up to order 4.
CumulantEstimates k_statistics(const std::vector<std::int64_t>& counts, double dt, int order);
CumulantEstimates k_statistics(const CountRecord& rec, int order);

struct VarianceScalingReport {
  int k = 1;
  std::vector<std::int64_t> sizes;
  std::vector<double> variances;
  std::vector<double> means;
  double exponent = 0.0;  // var ~ s^(-exponent)
  bool within_bounds = false;
};

// Repeats simulation batches at each sample size and regresses the
// estimator variance against s on a log-log scale.
VarianceScalingReport variance_scaling_check(const Graph& g, double omega, const AuxEdge& aux, int k,
                                             const std::vector<std::int64_t>& sizes, int batches,
                                             double dt, std::uint64_t seed,
                                             std::optional<double> burn_in = std::nullopt);

struct OccupationEstimate {
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::int64_t samples = 0;
};

// Populations |psi_i|^2 / |psi|^2 averaged over sample times spaced by
// spacing after burn-in, with batch-means standard errors.
OccupationEstimate occupation_estimate(const Graph& g, double omega, const AuxEdge& aux,
                                       std::int64_t samples, double spacing, std::uint64_t seed,
                                       std::optional<double> burn_in = std::nullopt);

// splitmix64 step, used to derive stream seeds from the master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace qswiso
