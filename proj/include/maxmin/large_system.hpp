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

#ifndef MAXMIN_LARGE_SYSTEM_HPP
#define MAXMIN_LARGE_SYSTEM_HPP

#include "maxmin/coupling.hpp"
#include "maxmin/types.hpp"

#include <optional>
#include <vector>

// Deterministic equivalents of the dual and primal SINRs under i.i.d.
// Rayleigh fading with large-scale gains d, and the statistics-only power
// iterations built on them. Only the profile D and the configuration enter;
// no instantaneous channel is used anywhere in this module.

namespace maxmin {

/// Effective interference seen by user m in the virtual uplink:
/// (1/N) sum_{n != m} q_n d(m,n) / (1 + q_n d(m,n) phi_m).
double dual_effective_interference(const RealVector& q, const LargeScaleProfile& d,
                                   const NetworkConfig& config, int m, double phi_m);

/// Auxiliary fixed point phi(q): phi_m = 1 / (w_m + dual interference).
/// Iterates from `init` (default 1/w) until the relative change drops below
/// tol. Throws ConvergenceFailure after max_iter sweeps.
RealVector algorithm_b(const PowerVector& q_hat, const LargeScaleProfile& d,
                       const NetworkConfig& config, double tol,
                       const std::optional<RealVector>& init = std::nullopt,
                       int max_iter = 100000);

/// max_m |phi_m - 1/(w_m + I_m(q, phi_m))| / phi_m.
double phi_fixed_point_residual(const RealVector& phi, const RealVector& q,
                                const LargeScaleProfile& d, const NetworkConfig& config);

/// Deterministic equivalent of the MVDR uplink SINR, q_m d(m,m) phi_m(q).
RealVector gamma_dual(const PowerVector& q, const LargeScaleProfile& d,
                      const NetworkConfig& config);

/// Closed form phi'_m = -phi_m / (w_m + (1/N) sum_{n != m} q_n d(m,n) / (1 + q_n d(m,n) phi_m)^2),
/// the derivative of phi_m with respect to the uplink noise level w_m.
RealVector phi_derivative(const RealVector& phi_hat, const PowerVector& q_hat,
                          const LargeScaleProfile& d, const NetworkConfig& config);

/// Deterministic equivalent of the downlink SINR when the beamformers are the
/// MVDR filters for q_hat.
RealVector gamma_primal(const PowerVector& p, const PowerVector& q_hat, const RealVector& phi_hat,
                        const RealVector& phi_prime, const LargeScaleProfile& d,
                        const NetworkConfig& config);

/// A power iterate together with the normalisation factor applied at the
/// last step, which equals the weighted asymptotic SINR at the fixed point.
struct PowerIteration {
  PowerVector power;
  double weighted_sinr = 0.0;
  std::vector<RealVector> iterates;
  int iterations = 0;
  bool converged = false;
};

/// Virtual-uplink powers for fixed phi: q_m <- (beta_m/d(m,m))(w_m + I_m),
/// then sigma-normalisation. weighted_sinr is varsigma*.
PowerIteration algorithm_c(const RealVector& phi_hat, const LargeScaleProfile& d,
                           const NetworkConfig& config, double tol,
                           const std::optional<RealVector>& init = std::nullopt,
                           int max_iter = 100000);

/// Downlink powers for fixed (q, phi, phi'), then w-normalisation.
/// weighted_sinr is zeta*.
PowerIteration algorithm_d(const PowerVector& q_hat, const RealVector& phi_hat,
                           const RealVector& phi_prime, const LargeScaleProfile& d,
                           const NetworkConfig& config, double tol,
                           const std::optional<RealVector>& init = std::nullopt,
                           int max_iter = 100000);

/// e and E of the effective uplink (dual) or downlink (primal) network.
struct EffectiveNetwork {
  RealVector e_vec;
  RealMatrix e_mat;
  NetworkKind kind = NetworkKind::kDual;
};

EffectiveNetwork build_effective(const PowerVector& q_hat, const RealVector& phi_hat,
                                 const RealVector& phi_prime, const LargeScaleProfile& d,
                                 const NetworkConfig& config, NetworkKind kind);

/// diag(beta o e)(E + w sigma^T / P) (dual) or diag(beta o e)(E + sigma w^T / P) (primal).
RealMatrix effective_extended_matrix(const EffectiveNetwork& eff, const NetworkConfig& config);

/// ||M (v/N) - v/s||_inf / ||v/s||_inf for the effective extended matrix M.
double effective_eigen_residual(const EffectiveNetwork& eff, const RealVector& power,
                                double weighted_sinr, const NetworkConfig& config);

/// How phi is refreshed inside the combined loop.
enum class PhiUpdate {
  // phi_m = (beta_m / d(m,m)) / q~_m with q~ the dual update before
  // normalisation, i.e. one sweep of the phi fixed point.
  kPreNormalization,
  // phi_m = (beta_m / d(m,m)) / q_m with the normalised q. Agrees with the
  // phi fixed point only when varsigma* = 1.
  kNormalized,
};

struct AsymptoticRecord {
  int iteration = 0;
  RealVector q_hat;
  RealVector p_hat;
  RealVector weighted_sinr;  // gamma^PN_m(p_hat) / beta_m
  double varsigma = 0.0;
  double zeta = 0.0;
  double residual = 0.0;
};

struct AsymptoticState {
  PowerVector q_hat;
  PowerVector p_hat;
  RealVector phi;
  RealVector phi_prime;
  double varsigma = 0.0;
  double zeta = 0.0;
  std::vector<AsymptoticRecord> trace;
  int iterations = 0;
  bool converged = false;
  // Final values of the stopping families.
  double phi_residual = 0.0;
  double phi_prime_residual = 0.0;
  double dual_eigen_residual = 0.0;
  double primal_eigen_residual = 0.0;
};

struct AlgorithmEOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  PhiUpdate phi_update = PhiUpdate::kPreNormalization;
};

/// Single-timescale statistics-only loop: dual update, sigma-normalise, phi,
/// phi', primal update, w-normalise; stops when the phi, phi', effective dual
/// and effective primal residuals and the relative power changes are all
/// below tol.
AsymptoticState algorithm_e(const LargeScaleProfile& d, const NetworkConfig& config,
                            const AlgorithmEOptions& options = {});

}  // namespace maxmin

#endif  // MAXMIN_LARGE_SYSTEM_HPP
