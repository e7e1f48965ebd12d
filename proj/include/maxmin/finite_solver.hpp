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

#ifndef MAXMIN_FINITE_SOLVER_HPP
#define MAXMIN_FINITE_SOLVER_HPP

#include "maxmin/coupling.hpp"
#include "maxmin/perron.hpp"
#include "maxmin/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maxmin {

struct IterationRecord {
  int iteration = 0;
  RealVector p;
  RealVector q;
  RealVector weighted_sinr;  // Gamma^PN_m / beta_m at (p, U) after the step
  double min_weighted_sinr = 0.0;
  double max_weighted_sinr = 0.0;
  double spread = 0.0;       // (max - min) / max
  double p_change = 0.0;     // ||p[k+1] - p[k]||_inf / ||p[k+1]||_inf
  double q_change = 0.0;
};

struct SolveResult {
  PowerVector p_star;
  PowerVector q_star;
  BeamformingMatrix u_star;
  double tau_star = 0.0;
  std::vector<IterationRecord> trace;
  int iterations = 0;
  bool converged = false;
};

struct InitialPoint {
  PowerVector p;
  PowerVector q;
  BeamformingMatrix u;
};

/// Uniform powers meeting both budgets with equality and matched filters.
InitialPoint default_initial_point(const ChannelRealization& channels,
                                   const NetworkConfig& config);

/// Joint beamforming and power control fixed point for the max-min weighted
/// SINR problem. Each iteration performs, in order: multiplicative dual power
/// update with the current beamformers, sigma-normalisation, MVDR refresh,
/// multiplicative primal power update with the new beamformers,
/// w-normalisation. Stops when the relative inf-norm changes of p and q and
/// the weighted-SINR spread all fall below config.tol, or after
/// config.max_iter iterations with converged = false.
SolveResult algorithm_a(const ChannelRealization& channels, const NetworkConfig& config,
                        const std::optional<InitialPoint>& init = std::nullopt);

struct OptimalityReport {
  double equalization_gap = 0.0;      // max_m |Gamma_m/beta_m - tau| / tau
  double primal_budget_gap = 0.0;     // |(1/N) w^T p - P| / P
  double dual_budget_gap = 0.0;       // |(1/N) sigma^T q - P| / P
  double eigen_residual = 0.0;        // ||B (p/N) - (p/N)/tau||_inf / ||(p/N)/tau||_inf
  double primal_spectral_gap = 0.0;   // |tau - 1/rho(B)| / tau
  double dual_spectral_gap = 0.0;     // |tau - 1/rho(B')| / tau
  double duality_gap = 0.0;           // |min_m Gamma^DN_m/beta_m - tau| / tau
  double tolerance = 0.0;
  std::vector<std::string> failures;

  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Checks a solution against the optimality, tightness, eigenvector and
/// duality conditions; every gap above `tolerance` is listed in failures.
OptimalityReport verify_optimality(const SolveResult& result, const ChannelRealization& channels,
                                   const NetworkConfig& config, double tolerance = 1e-6);

/// Random search lower bound on the optimum for tiny networks (J*K <= 3,
/// N <= 2): unit beamformers drawn uniformly on the complex sphere (with
/// local refinement around the incumbent), powers on a coarse simplex grid
/// refined by pairwise share transfers, with the weighted budget tight.
/// `budget` counts objective evaluations.
/// The candidate sequence does not depend on the budget, so the result is
/// non-decreasing in it.
double brute_force_maxmin(const ChannelRealization& channels, const NetworkConfig& config,
                          long long budget, std::uint64_t seed);

}  // namespace maxmin

#endif  // MAXMIN_FINITE_SOLVER_HPP
