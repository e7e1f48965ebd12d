// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAXMIN_HARNESS_HPP
#define MAXMIN_HARNESS_HPP

#include "maxmin/finite_solver.hpp"
#include "maxmin/large_system.hpp"
#include "maxmin/network.hpp"
#include "maxmin/scenario.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace maxmin {

enum class ExperimentKind {
  kFiniteConvergence,
  kLargeConvergence,
  kAsymptoticVsOptimal,
  kConcentrationSweep,
  kPowerSweep,
};

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kFiniteConvergence;
  Scenario scenario;
  std::filesystem::path out_dir = ".";
  int trials = 1;          // channel draws per geometry
  int geometries = 1;      // user drops (power sweep)
  std::uint64_t seed = 1;  // base seed
  std::vector<double> sweep;  // N-list (concentration) or P-list (power sweep)

  /// trials >= 1, geometries >= 1, sweep sorted ascending and (for the
  /// sweep kinds) non-empty.
  void validate() const;
};

/// Seed policy: geometry g uses seed + g; channel draw t of geometry g uses
/// seed + 10^6 + g * trials + t.
std::uint64_t geometry_seed(std::uint64_t base, int geometry);
std::uint64_t channel_seed(std::uint64_t base, int geometry, int trial, int trials);

/// One user drop: layout and large-scale profile.
struct Drop {
  Layout layout;
  LargeScaleProfile profile;
};

Drop make_drop(const Scenario& scenario, int users_per_cell, std::uint64_t seed);

/// Achieved downlink SINRs when transmitting with p_hat along the MVDR
/// filters built non-iteratively from q_hat and the instantaneous channels.
RealVector asymptotic_achieved_sinr(const ChannelRealization& channels,
                                    const AsymptoticState& state, const NetworkConfig& config);

/// Optimal versus asymptotic design on one channel draw.
struct TrialComparison {
  double tau_star = 0.0;
  RealVector achieved;  // per-user SINR under the asymptotic design
  double achieved_mean = 0.0;
  bool converged = false;
  int iterations = 0;
};

TrialComparison compare_trial(const ChannelRealization& channels, const AsymptoticState& state,
                              const NetworkConfig& config);

/// Monte Carlo deviation of the instantaneous SINRs from their deterministic
/// equivalents at one antenna count.
struct ConcentrationRow {
  int antennas = 0;
  int users_per_cell = 0;
  int trials = 0;
  double dual_mean_abs_dev = 0.0;
  double dual_std = 0.0;
  double primal_mean_abs_dev = 0.0;
  double primal_std = 0.0;
  double dual_mean_rel_dev = 0.0;
  double primal_mean_rel_dev = 0.0;
  bool converged = false;
};

ConcentrationRow concentration_point(const Scenario& scenario, int antennas, int trials,
                                     std::uint64_t seed);

struct PowerSweepRow {
  double power_budget = 0.0;
  double optimal_mean = 0.0;
  double asymptotic_mean = 0.0;
  double optimal_mean_db = 0.0;
  double asymptotic_mean_db = 0.0;
  double asymptotic_worst_mean = 0.0;
  int used = 0;
  int excluded = 0;
};

PowerSweepRow power_sweep_point(const Scenario& scenario, double power_budget, int geometries,
                                int trials, std::uint64_t seed);

struct ExperimentOutcome {
  bool all_converged = true;
  int non_converged = 0;
  nlohmann::ordered_json summary;
  std::vector<std::filesystem::path> files;
};

ExperimentOutcome run_finite_convergence(const ExperimentSpec& spec);
ExperimentOutcome run_large_convergence(const ExperimentSpec& spec);
ExperimentOutcome run_asymptotic_vs_optimal(const ExperimentSpec& spec);
ExperimentOutcome run_concentration_sweep(const ExperimentSpec& spec);
ExperimentOutcome run_power_sweep(const ExperimentSpec& spec);
ExperimentOutcome run_experiment(const ExperimentSpec& spec);

/// Shortest round-trip decimal representation used in every CSV cell.
std::string format_number(double v);

}  // namespace maxmin

#endif  // MAXMIN_HARNESS_HPP
