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

#include "maxmin/finite_solver.hpp"

#include "maxmin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace maxmin {

namespace {

RealVector normalized(const RealVector& v, const RealVector& prices, const NetworkConfig& c) {
  return scale_to_budget(v, prices, c.antennas, c.power_budget);
}

double relative_change(const RealVector& next, const RealVector& prev) {
  return (next - prev).lpNorm<Eigen::Infinity>() / next.lpNorm<Eigen::Infinity>();
}

void check_feasible(const PowerVector& v, const RealVector& prices, const NetworkConfig& c,
                    const char* name) {
  if (v.size() != c.users()) throw InvalidArgument(std::string(name) + " must have length J*K");
  const double used = prices.dot(v.values) / c.antennas;
  if (used > c.power_budget * (1.0 + 1e-12)) {
    throw InvalidArgument(std::string(name) + " violates its power budget");
  }
}

}  // namespace

InitialPoint default_initial_point(const ChannelRealization& channels,
                                   const NetworkConfig& config) {
  config.validate();
  const RealVector ones = RealVector::Ones(config.users());
  return {PowerVector(normalized(ones, config.weights, config), PowerKind::kPrimal),
          PowerVector(normalized(ones, config.noise, config), PowerKind::kDual),
          matched_filters(channels)};
}

SolveResult algorithm_a(const ChannelRealization& channels, const NetworkConfig& config,
                        const std::optional<InitialPoint>& init) {
  config.validate();
  if (channels.cells() != config.cells || channels.users_per_cell() != config.users_per_cell ||
      channels.antennas() != config.antennas) {
    throw InvalidArgument("channel realization does not match the network dimensions");
  }
  InitialPoint start = init ? *init : default_initial_point(channels, config);
  check_feasible(start.p, config.weights, config, "p[0]");
  check_feasible(start.q, config.noise, config, "q[0]");
  if (start.u.users() != config.users() || start.u.antennas() != config.antennas) {
    throw InvalidArgument("U[0] does not match the network dimensions");
  }

  const RealVector& beta = config.priorities;
  RealVector p = start.p.values;
  RealVector q = start.q.values;
  BeamformingMatrix u = start.u;
  RealVector weighted;

  SolveResult result;
  for (int it = 1; it <= config.max_iter; ++it) {
    // Dual update with U[k].
    const GainMatrix before = build_gain(channels, u);
    const RealVector dual = dual_sinr(PowerVector(q, PowerKind::kDual), before, config);
    RealVector q_next = beta.cwiseQuotient(dual).cwiseProduct(q);
    q_next = normalized(q_next, config.noise, config);

    // Beamformers from the fresh dual powers.
    u = mvdr_all(channels, PowerVector(q_next, PowerKind::kDual), config).u;

    // Primal update with U[k+1].
    const GainMatrix after = build_gain(channels, u);
    const RealVector primal = primal_sinr(PowerVector(p, PowerKind::kPrimal), after, config);
    RealVector p_next = beta.cwiseQuotient(primal).cwiseProduct(p);
    p_next = normalized(p_next, config.weights, config);

    weighted = primal_sinr(PowerVector(p_next, PowerKind::kPrimal), after, config)
                   .cwiseQuotient(beta);

    IterationRecord rec;
    rec.iteration = it;
    rec.min_weighted_sinr = weighted.minCoeff();
    rec.max_weighted_sinr = weighted.maxCoeff();
    rec.spread = (rec.max_weighted_sinr - rec.min_weighted_sinr) / rec.max_weighted_sinr;
    rec.p_change = relative_change(p_next, p);
    rec.q_change = relative_change(q_next, q);
    rec.p = p_next;
    rec.q = q_next;
    rec.weighted_sinr = weighted;
    result.trace.push_back(std::move(rec));

    p = std::move(p_next);
    q = std::move(q_next);
    result.iterations = it;

    const auto& last = result.trace.back();
    if (last.p_change < config.tol && last.q_change < config.tol && last.spread < config.tol) {
      result.converged = true;
      break;
    }
  }

  result.p_star = PowerVector(p, PowerKind::kPrimal);
  result.q_star = PowerVector(q, PowerKind::kDual);
  result.u_star = u;
  result.tau_star = weighted.minCoeff();
  return result;
}

OptimalityReport verify_optimality(const SolveResult& result, const ChannelRealization& channels,
                                   const NetworkConfig& config, double tolerance) {
  config.validate();
  OptimalityReport report;
  report.tolerance = tolerance;
  const double tau = result.tau_star;
  const double n = config.antennas;
  const double budget = config.power_budget;

  const GainMatrix gm = build_gain(channels, result.u_star);
  const RealVector weighted = primal_sinr(result.p_star, gm, config).cwiseQuotient(config.priorities);
  report.equalization_gap = (weighted.array() - tau).abs().maxCoeff() / tau;
  report.primal_budget_gap =
      std::abs(config.weights.dot(result.p_star.values) / n - budget) / budget;
  report.dual_budget_gap = std::abs(config.noise.dot(result.q_star.values) / n - budget) / budget;

  const ExtendedCouplingMatrix primal = extended_matrix(gm, config, NetworkKind::kPrimal);
  const ExtendedCouplingMatrix dual = extended_matrix(gm, config, NetworkKind::kDual);
  const RealVector v = result.p_star.values / n;
  report.eigen_residual =
      (primal.b_mat * v - v / tau).lpNorm<Eigen::Infinity>() / (v / tau).lpNorm<Eigen::Infinity>();

  const double inf = std::numeric_limits<double>::infinity();
  report.primal_spectral_gap = inf;
  report.dual_spectral_gap = inf;
  try {
    const PerronPair pp = perron_pair(primal.b_mat);
    report.primal_spectral_gap = std::abs(tau - 1.0 / pp.rho) / tau;
  } catch (const ConvergenceFailure& e) {
    report.failures.push_back(std::string("primal perron pair: ") + e.what());
  }
  try {
    const PerronPair pd = perron_pair(dual.b_mat);
    report.dual_spectral_gap = std::abs(tau - 1.0 / pd.rho) / tau;
  } catch (const ConvergenceFailure& e) {
    report.failures.push_back(std::string("dual perron pair: ") + e.what());
  }

  const RealVector dual_weighted =
      dual_sinr(result.q_star, gm, config).cwiseQuotient(config.priorities);
  report.duality_gap = std::abs(dual_weighted.minCoeff() - tau) / tau;

  auto flag = [&](const char* name, double gap) {
    if (!(gap <= tolerance)) {
      std::ostringstream msg;
      msg << name << " = " << gap << " exceeds " << tolerance;
      report.failures.push_back(msg.str());
    }
  };
  flag("equalization gap", report.equalization_gap);
  flag("primal budget gap", report.primal_budget_gap);
  flag("dual budget gap", report.dual_budget_gap);
  flag("eigen residual", report.eigen_residual);
  flag("primal spectral gap", report.primal_spectral_gap);
  flag("dual spectral gap", report.dual_spectral_gap);
  flag("duality gap", report.duality_gap);
  return report;
}

namespace {

// Weighted budget shares on the interior of the simplex: compositions of
// `resolution` into `parts` positive integers, divided by `resolution`.
std::vector<RealVector> simplex_grid(int parts, int resolution) {
  std::vector<RealVector> grid;
  RealVector share(parts);
  auto rec = [&](auto&& self, int index, int remaining) -> void {
    if (index == parts - 1) {
      share[index] = static_cast<double>(remaining) / resolution;
      grid.push_back(share);
      return;
    }
    for (int c = 1; c <= remaining - (parts - 1 - index); ++c) {
      share[index] = static_cast<double>(c) / resolution;
      self(self, index + 1, remaining - c);
    }
  };
  rec(rec, 0, resolution);
  return grid;
}

ComplexVector random_unit(Rng& rng, int n) {
  ComplexVector v(n);
  for (;;) {
    for (int i = 0; i < n; ++i) v[i] = rng.complex_normal();
    const double norm = v.norm();
    if (norm > 1e-300) return v / norm;
  }
}

}  // namespace

double brute_force_maxmin(const ChannelRealization& channels, const NetworkConfig& config,
                          long long budget, std::uint64_t seed) {
  config.validate();
  const int users = config.users();
  const int ant = config.antennas;
  if (users > 3 || ant > 2) {
    throw InvalidArgument("brute force search is limited to J*K <= 3 and N <= 2");
  }
  if (budget < 1) throw InvalidArgument("budget must be at least one evaluation");
  if (channels.users() != users || channels.antennas() != ant) {
    throw InvalidArgument("channel realization does not match the network dimensions");
  }

  // Coarse simplex grid, then a pattern search that moves budget share
  // between pairs of users with halving steps. The minimum weighted SINR is
  // quasi-concave in the shares (each SINR is linear-fractional in p), so the
  // refinement cannot be trapped away from the grid optimum's basin.
  constexpr int kResolution[] = {1, 1, 100, 20};
  constexpr int kHalvings = 16;
  const std::vector<RealVector> shares = simplex_grid(users, kResolution[users]);
  const int pairs = users * (users - 1);
  const long long per_candidate =
      static_cast<long long>(shares.size()) + static_cast<long long>(pairs) * kHalvings;
  const long long candidates = std::max<long long>(1, budget / per_candidate);
  const double inv_n = 1.0 / ant;
  const double total = ant * config.power_budget;

  auto evaluate = [&](const ComplexMatrix& u) {
    const GainMatrix gm = build_gain(channels, BeamformingMatrix(u));
    auto objective = [&](const RealVector& share) {
      const RealVector p = total * share.cwiseQuotient(config.weights);
      const RealVector interference = inv_n * (gm.f_mat * p) + config.noise;
      const RealVector sinr =
          (inv_n * p.array() * gm.g_mat.diagonal().array() / interference.array()).matrix();
      return sinr.cwiseQuotient(config.priorities).minCoeff();
    };
    RealVector incumbent = shares.front();
    double best = -1.0;
    for (const auto& sh : shares) {
      const double v = objective(sh);
      if (v > best) {
        best = v;
        incumbent = sh;
      }
    }
    double step = 0.5 / kResolution[users];
    for (int h = 0; h < kHalvings && pairs > 0; ++h, step *= 0.5) {
      for (int i = 0; i < users; ++i) {
        for (int j = 0; j < users; ++j) {
          if (i == j || incumbent[j] <= step) continue;
          RealVector trial = incumbent;
          trial[i] += step;
          trial[j] -= step;
          const double v = objective(trial);
          if (v > best) {
            best = v;
            incumbent = trial;
          }
        }
      }
    }
    return best;
  };

  Rng rng(seed);
  ComplexMatrix incumbent(ant, users);
  double best = -1.0;
  double radius = 0.5;
  constexpr long long kWarmup = 64;
  for (long long i = 0; i < candidates; ++i) {
    ComplexMatrix u(ant, users);
    const bool global = best < 0.0 || i < kWarmup || i % 4 == 0;
    if (global) {
      for (int m = 0; m < users; ++m) u.col(m) = random_unit(rng, ant);
    } else {
      // Perturb one user's beamformer, or occasionally all of them.
      u = incumbent;
      const int pick = static_cast<int>(rng.uniform() * (users + 1));
      for (int m = 0; m < users; ++m) {
        if (pick < users && m != pick) continue;
        ComplexVector step(ant);
        for (int a = 0; a < ant; ++a) step[a] = rng.complex_normal();
        const ComplexVector v = incumbent.col(m) + radius * step;
        u.col(m) = v / v.norm();
      }
    }
    double value = 0.0;
    try {
      value = evaluate(u);
    } catch (const DegenerateBeamformer&) {
      value = 0.0;
    }
    if (value > best) {
      best = value;
      incumbent = u;
      if (!global) radius = std::min(1.0, radius * 1.5);
    } else if (!global) {
      radius *= 0.9;
      // Restart the step size once it collapses so a stalled incumbent can
      // still be left.
      if (radius < 1e-4) radius = 0.5;
    }
  }
  return best;
}

}  // namespace maxmin
