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

#include "maxmin/large_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace maxmin {

namespace {

void check_profile(const LargeScaleProfile& d, const NetworkConfig& config) {
  config.validate();
  if (d.users() != config.users()) {
    throw InvalidArgument("large-scale profile does not match J*K");
  }
}

void check_vector(const RealVector& v, const NetworkConfig& config, const char* name) {
  if (v.size() != config.users()) throw InvalidArgument(std::string(name) + " must have length J*K");
  if (!v.allFinite()) throw InvalidArgument(std::string(name) + " must be finite");
}

double relative_change(const RealVector& next, const RealVector& prev) {
  return ((next - prev).array().abs() / next.array().abs()).maxCoeff();
}

RealVector normalized(const RealVector& v, const RealVector& prices, const NetworkConfig& c,
                      double* factor) {
  const double f = c.antennas * c.power_budget / prices.dot(v);
  if (factor != nullptr) *factor = f;
  return f * v;
}

// (1/N) sum_{n != m} p_n d(n,m) / (1 + q_m d(n,m) phi_n)^2
double primal_effective_interference(const RealVector& p, const RealVector& q,
                                     const RealVector& phi, const LargeScaleProfile& d,
                                     const NetworkConfig& config, int m) {
  double sum = 0.0;
  for (int n = 0; n < config.users(); ++n) {
    if (n == m) continue;
    const double dnm = d(n, m);
    const double den = 1.0 + q[m] * dnm * phi[n];
    sum += p[n] * dnm / (den * den);
  }
  return sum / config.antennas;
}

RealVector phi_derivative_raw(const RealVector& phi, const RealVector& q,
                              const LargeScaleProfile& d, const NetworkConfig& config) {
  const int users = config.users();
  RealVector out(users);
  for (int m = 0; m < users; ++m) {
    double sum = 0.0;
    for (int n = 0; n < users; ++n) {
      if (n == m) continue;
      const double a = q[n] * d(m, n);
      const double den = 1.0 + a * phi[m];
      sum += a / (den * den);
    }
    out[m] = -phi[m] / (config.weights[m] + sum / config.antennas);
  }
  return out;
}

RealVector primal_update(const RealVector& p, const RealVector& q, const RealVector& phi,
                         const RealVector& phi_prime, const LargeScaleProfile& d,
                         const NetworkConfig& config) {
  const int users = config.users();
  RealVector next(users);
  for (int m = 0; m < users; ++m) {
    const double scale = -phi_prime[m] * config.priorities[m] / (phi[m] * phi[m] * d(m, m));
    next[m] = scale * (config.noise[m] +
                       primal_effective_interference(p, q, phi, d, config, m));
  }
  return next;
}

RealVector dual_update(const RealVector& q, const RealVector& phi, const LargeScaleProfile& d,
                       const NetworkConfig& config) {
  const int users = config.users();
  RealVector next(users);
  for (int m = 0; m < users; ++m) {
    next[m] = config.priorities[m] / d(m, m) *
              (config.weights[m] + dual_effective_interference(q, d, config, m, phi[m]));
  }
  return next;
}

}  // namespace

double dual_effective_interference(const RealVector& q, const LargeScaleProfile& d,
                                   const NetworkConfig& config, int m, double phi_m) {
  double sum = 0.0;
  for (int n = 0; n < config.users(); ++n) {
    if (n == m) continue;
    const double a = q[n] * d(m, n);
    sum += a / (1.0 + a * phi_m);
  }
  return sum / config.antennas;
}

RealVector algorithm_b(const PowerVector& q_hat, const LargeScaleProfile& d,
                       const NetworkConfig& config, double tol,
                       const std::optional<RealVector>& init, int max_iter) {
  check_profile(d, config);
  check_vector(q_hat.values, config, "q_hat");
  const int users = config.users();
  RealVector phi = init ? *init : config.weights.cwiseInverse();
  check_vector(phi, config, "phi[0]");
  if ((phi.array() <= 0.0).any()) throw InvalidArgument("phi[0] must be positive");
  double change = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    RealVector next(users);
    for (int m = 0; m < users; ++m) {
      next[m] = 1.0 / (config.weights[m] +
                       dual_effective_interference(q_hat.values, d, config, m, phi[m]));
    }
    change = relative_change(next, phi);
    phi = std::move(next);
    if (change < tol) return phi;
  }
  std::ostringstream msg;
  msg << "phi fixed point did not converge in " << max_iter << " sweeps (last change " << change
      << ")";
  throw ConvergenceFailure(msg.str());
}

double phi_fixed_point_residual(const RealVector& phi, const RealVector& q,
                                const LargeScaleProfile& d, const NetworkConfig& config) {
  double worst = 0.0;
  for (int m = 0; m < config.users(); ++m) {
    const double rhs =
        1.0 / (config.weights[m] + dual_effective_interference(q, d, config, m, phi[m]));
    worst = std::max(worst, std::abs(phi[m] - rhs) / phi[m]);
  }
  return worst;
}

RealVector gamma_dual(const PowerVector& q, const LargeScaleProfile& d,
                      const NetworkConfig& config) {
  const RealVector phi = algorithm_b(q, d, config, 1e-15);
  return q.values.cwiseProduct(d.matrix().diagonal()).cwiseProduct(phi);
}

RealVector phi_derivative(const RealVector& phi_hat, const PowerVector& q_hat,
                          const LargeScaleProfile& d, const NetworkConfig& config) {
  check_profile(d, config);
  check_vector(phi_hat, config, "phi_hat");
  check_vector(q_hat.values, config, "q_hat");
  return phi_derivative_raw(phi_hat, q_hat.values, d, config);
}

RealVector gamma_primal(const PowerVector& p, const PowerVector& q_hat, const RealVector& phi_hat,
                        const RealVector& phi_prime, const LargeScaleProfile& d,
                        const NetworkConfig& config) {
  check_profile(d, config);
  check_vector(p.values, config, "p");
  const int users = config.users();
  RealVector out(users);
  for (int m = 0; m < users; ++m) {
    const double signal = p[m] * d(m, m) * phi_hat[m] * phi_hat[m] / (-phi_prime[m]);
    out[m] = signal / (config.noise[m] + primal_effective_interference(
                                             p.values, q_hat.values, phi_hat, d, config, m));
  }
  return out;
}

PowerIteration algorithm_c(const RealVector& phi_hat, const LargeScaleProfile& d,
                           const NetworkConfig& config, double tol,
                           const std::optional<RealVector>& init, int max_iter) {
  check_profile(d, config);
  check_vector(phi_hat, config, "phi_hat");
  if ((phi_hat.array() <= 0.0).any()) throw InvalidArgument("phi_hat must be positive");
  RealVector q = init ? *init : RealVector::Ones(config.users());
  check_vector(q, config, "q[0]");
  q = normalized(q, config.noise, config, nullptr);

  PowerIteration out;
  out.iterates.push_back(q);
  for (int it = 1; it <= max_iter; ++it) {
    double factor = 0.0;
    RealVector next = normalized(dual_update(q, phi_hat, d, config), config.noise, config, &factor);
    const double change = relative_change(next, q);
    q = std::move(next);
    out.iterates.push_back(q);
    out.iterations = it;
    out.weighted_sinr = factor;
    if (change < tol) {
      out.converged = true;
      break;
    }
  }
  out.power = PowerVector(q, PowerKind::kAsymptoticDual);
  return out;
}

PowerIteration algorithm_d(const PowerVector& q_hat, const RealVector& phi_hat,
                           const RealVector& phi_prime, const LargeScaleProfile& d,
                           const NetworkConfig& config, double tol,
                           const std::optional<RealVector>& init, int max_iter) {
  check_profile(d, config);
  check_vector(q_hat.values, config, "q_hat");
  check_vector(phi_hat, config, "phi_hat");
  check_vector(phi_prime, config, "phi_prime");
  RealVector p = init ? *init : RealVector::Ones(config.users());
  check_vector(p, config, "p[0]");
  p = normalized(p, config.weights, config, nullptr);

  PowerIteration out;
  out.iterates.push_back(p);
  for (int it = 1; it <= max_iter; ++it) {
    double factor = 0.0;
    RealVector next = normalized(primal_update(p, q_hat.values, phi_hat, phi_prime, d, config),
                                 config.weights, config, &factor);
    const double change = relative_change(next, p);
    p = std::move(next);
    out.iterates.push_back(p);
    out.iterations = it;
    out.weighted_sinr = factor;
    if (change < tol) {
      out.converged = true;
      break;
    }
  }
  out.power = PowerVector(p, PowerKind::kAsymptoticPrimal);
  return out;
}

EffectiveNetwork build_effective(const PowerVector& q_hat, const RealVector& phi_hat,
                                 const RealVector& phi_prime, const LargeScaleProfile& d,
                                 const NetworkConfig& config, NetworkKind kind) {
  check_profile(d, config);
  const int users = config.users();
  const RealVector& q = q_hat.values;
  EffectiveNetwork eff;
  eff.kind = kind;
  eff.e_vec.resize(users);
  eff.e_mat = RealMatrix::Zero(users, users);
  for (int m = 0; m < users; ++m) {
    if (kind == NetworkKind::kDual) {
      eff.e_vec[m] = 1.0 / d(m, m);
    } else {
      eff.e_vec[m] = -phi_prime[m] / (d(m, m) * phi_hat[m] * phi_hat[m]);
    }
    for (int n = 0; n < users; ++n) {
      if (n == m) continue;
      if (kind == NetworkKind::kDual) {
        eff.e_mat(m, n) = d(m, n) / (1.0 + q[n] * d(m, n) * phi_hat[m]);
      } else {
        const double den = 1.0 + q[m] * d(n, m) * phi_hat[n];
        eff.e_mat(m, n) = d(n, m) / (den * den);
      }
    }
  }
  return eff;
}

RealMatrix effective_extended_matrix(const EffectiveNetwork& eff, const NetworkConfig& config) {
  const double inv_p = 1.0 / config.power_budget;
  const RealMatrix rank_one = eff.kind == NetworkKind::kDual
                                  ? RealMatrix(inv_p * config.weights * config.noise.transpose())
                                  : RealMatrix(inv_p * config.noise * config.weights.transpose());
  return config.priorities.cwiseProduct(eff.e_vec).asDiagonal() * (eff.e_mat + rank_one);
}

double effective_eigen_residual(const EffectiveNetwork& eff, const RealVector& power,
                                double weighted_sinr, const NetworkConfig& config) {
  const RealVector lhs = effective_extended_matrix(eff, config) * (power / config.antennas);
  const RealVector rhs = power / weighted_sinr;
  return (lhs - rhs).lpNorm<Eigen::Infinity>() / rhs.lpNorm<Eigen::Infinity>();
}

AsymptoticState algorithm_e(const LargeScaleProfile& d, const NetworkConfig& config,
                            const AlgorithmEOptions& options) {
  check_profile(d, config);
  const int users = config.users();
  const RealVector ones = RealVector::Ones(users);
  RealVector q = normalized(ones, config.noise, config, nullptr);
  RealVector p = normalized(ones, config.weights, config, nullptr);
  RealVector phi = config.weights.cwiseInverse();
  RealVector phi_prime = phi_derivative_raw(phi, q, d, config);
  const RealVector& beta = config.priorities;
  const RealVector d_diag = d.matrix().diagonal();

  AsymptoticState state;
  for (int it = 1; it <= options.max_iter; ++it) {
    // Steps 1-2: dual update and sigma-normalisation.
    const RealVector q_raw = dual_update(q, phi, d, config);
    double varsigma = 0.0;
    RealVector q_next = normalized(q_raw, config.noise, config, &varsigma);

    // Step 3: phi from the dual update.
    const RealVector& q_for_phi =
        options.phi_update == PhiUpdate::kPreNormalization ? q_raw : q_next;
    RealVector phi_next = beta.cwiseQuotient(d_diag).cwiseQuotient(q_for_phi);

    // Step 4: phi'.
    RealVector phi_prime_next = phi_derivative_raw(phi_next, q_next, d, config);

    // Steps 5-6: primal update and w-normalisation.
    double zeta = 0.0;
    RealVector p_next = normalized(primal_update(p, q_next, phi_next, phi_prime_next, d, config),
                                   config.weights, config, &zeta);

    const double q_change = relative_change(q_next, q);
    const double p_change = relative_change(p_next, p);
    q = std::move(q_next);
    p = std::move(p_next);
    phi = std::move(phi_next);
    phi_prime = std::move(phi_prime_next);

    const PowerVector qv(q, PowerKind::kAsymptoticDual);
    state.phi_residual = phi_fixed_point_residual(phi, q, d, config);
    state.phi_prime_residual =
        ((phi_prime - phi_derivative_raw(phi, q, d, config)).array().abs() / phi_prime.array().abs())
            .maxCoeff();
    state.dual_eigen_residual = effective_eigen_residual(
        build_effective(qv, phi, phi_prime, d, config, NetworkKind::kDual), q, varsigma, config);
    state.primal_eigen_residual = effective_eigen_residual(
        build_effective(qv, phi, phi_prime, d, config, NetworkKind::kPrimal), p, zeta, config);

    double residual = std::max({state.phi_prime_residual, state.dual_eigen_residual,
                                state.primal_eigen_residual, q_change, p_change});
    // The normalised-q variant has a different phi fixed point; its phi
    // residual is reported but not used to stop.
    if (options.phi_update == PhiUpdate::kPreNormalization) {
      residual = std::max(residual, state.phi_residual);
    }

    AsymptoticRecord rec;
    rec.iteration = it;
    rec.q_hat = q;
    rec.p_hat = p;
    rec.weighted_sinr =
        gamma_primal(PowerVector(p, PowerKind::kAsymptoticPrimal), qv, phi, phi_prime, d, config)
            .cwiseQuotient(beta);
    rec.varsigma = varsigma;
    rec.zeta = zeta;
    rec.residual = residual;
    state.trace.push_back(std::move(rec));

    state.varsigma = varsigma;
    state.zeta = zeta;
    state.iterations = it;
    if (residual < options.tol) {
      state.converged = true;
      break;
    }
  }
  state.q_hat = PowerVector(q, PowerKind::kAsymptoticDual);
  state.p_hat = PowerVector(p, PowerKind::kAsymptoticPrimal);
  state.phi = phi;
  state.phi_prime = phi_prime;
  return state;
}

}  // namespace maxmin
