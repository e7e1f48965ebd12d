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
#include "maxmin/perron.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace maxmin;
using testing::rel_inf;

namespace {

struct Scene {
  LargeScaleProfile d;
  NetworkConfig cfg;
};

// Cellular drop at the given dimensions.
Scene scene(std::uint64_t seed, int K = 4, int N = 4, double P = 10.0) {
  const auto inst = testing::cellular(seed, K, N, P);
  return {inst.d, inst.cfg};
}

Scene single(double d, double w, double sigma, double beta, int N = 3, double P = 2.0) {
  auto cfg = NetworkConfig::uniform(1, 1, N, P, w, beta, sigma);
  return {LargeScaleProfile(RealMatrix::Constant(1, 1, d)), cfg};
}

PowerVector dual(const RealVector& v) { return PowerVector(v, PowerKind::kAsymptoticDual); }
PowerVector primal(const RealVector& v) { return PowerVector(v, PowerKind::kAsymptoticPrimal); }

}  // namespace

TEST_CASE("single user closed forms") {
  const auto s = single(0.7, 1.5, 0.4, 2.0);
  const auto& c = s.cfg;
  const RealVector q = RealVector::Constant(1, 3.0);
  CHECK(dual_effective_interference(q, s.d, c, 0, 1.0) == 0.0);
  const RealVector phi = algorithm_b(dual(q), s.d, c, 1e-14);
  CHECK(phi[0] == doctest::Approx(1.0 / 1.5).epsilon(1e-15));
  CHECK(gamma_dual(dual(q), s.d, c)[0] == doctest::Approx(3.0 * 0.7 / 1.5).epsilon(1e-14));
  const RealVector dphi = phi_derivative(phi, dual(q), s.d, c);
  CHECK(dphi[0] == doctest::Approx(-1.0 / (1.5 * 1.5)).epsilon(1e-14));
  const RealVector p = RealVector::Constant(1, 5.0);
  CHECK(gamma_primal(primal(p), dual(q), phi, dphi, s.d, c)[0] ==
        doctest::Approx(5.0 * 0.7 / 0.4).epsilon(1e-14));

  const auto cq = algorithm_c(phi, s.d, c, 1e-12);
  CHECK(cq.converged);
  CHECK(cq.power[0] == doctest::Approx(c.antennas * c.power_budget / 0.4).epsilon(1e-14));
  // N * P * d / (sigma * beta * w)
  CHECK(cq.weighted_sinr == doctest::Approx(3 * 2.0 * 0.7 / (0.4 * 2.0 * 1.5)).epsilon(1e-13));
  const auto dp = algorithm_d(cq.power, phi, dphi, s.d, c, 1e-12);
  CHECK(dp.power[0] == doctest::Approx(c.antennas * c.power_budget / 1.5).epsilon(1e-14));

  for (auto kind : {NetworkKind::kDual, NetworkKind::kPrimal}) {
    const auto eff = build_effective(cq.power, phi, dphi, s.d, c, kind);
    CHECK(eff.e_mat(0, 0) == 0.0);
    CHECK(eff.e_vec[0] == doctest::Approx(1.0 / 0.7).epsilon(1e-14));
  }
}

TEST_CASE("phi fixed point: uniqueness, bound and residual") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = scene(seed, 10, 12);
    const auto& c = s.cfg;
    RealVector q = RealVector::Constant(c.users(), 1.0);
    Rng r(seed);
    for (int m = 0; m < c.users(); ++m) q[m] = 1e10 * (0.5 + r.uniform());
    const RealVector lo = algorithm_b(dual(q), s.d, c, 1e-14, RealVector::Constant(c.users(), 0.1));
    const RealVector hi = algorithm_b(dual(q), s.d, c, 1e-14, RealVector::Constant(c.users(), 10.0));
    CHECK(rel_inf(lo, hi) < 1e-10);
    CHECK((lo.array() <= c.weights.cwiseInverse().array()).all());
    CHECK(phi_fixed_point_residual(lo, q, s.d, c) < 1e-12);
  }
}

TEST_CASE("phi fixed point iteration cap") {
  const auto s = scene(1);
  const RealVector q = RealVector::Constant(s.cfg.users(), 1e12);
  CHECK_THROWS_AS(algorithm_b(dual(q), s.d, s.cfg, 1e-300, std::nullopt, 2), ConvergenceFailure);
  CHECK_THROWS_AS(algorithm_b(dual(q), s.d, s.cfg, 1e-12, RealVector::Zero(s.cfg.users())),
                  InvalidArgument);
}

TEST_CASE("dual deterministic equivalent satisfies its defining equation") {
  const auto s = scene(2, 6, 8);
  const auto& c = s.cfg;
  const RealVector q = RealVector::LinSpaced(c.users(), 1e10, 5e10);
  const RealVector g = gamma_dual(dual(q), s.d, c);
  for (int m = 0; m < c.users(); ++m) {
    // gamma_m = q_m d_mm / (w_m + (1/N) sum_n q_n d_mn / (1 + q_n d_mn gamma_m / (q_m d_mm)))
    double acc = 0.0;
    for (int n = 0; n < c.users(); ++n) {
      if (n == m) continue;
      const double a = q[n] * s.d(m, n);
      acc += a / (1.0 + a * g[m] / (q[m] * s.d(m, m)));
    }
    const double rhs = q[m] * s.d(m, m) / (c.weights[m] + acc / c.antennas);
    CHECK(g[m] == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("phi derivative matches central differences in the noise level") {
  const auto s = scene(3, 6, 8);
  const auto& c = s.cfg;
  const RealVector q = RealVector::LinSpaced(c.users(), 1e10, 4e10);
  const RealVector phi = algorithm_b(dual(q), s.d, c, 1e-15);
  const RealVector dphi = phi_derivative(phi, dual(q), s.d, c);
  const double eps = 1e-6;
  for (int m = 0; m < c.users(); ++m) {
    CHECK(dphi[m] < 0.0);
    CHECK(-dphi[m] <= phi[m] / c.weights[m] * (1 + 1e-12));
    auto up = c, down = c;
    up.weights[m] += eps;
    down.weights[m] -= eps;
    const double fd =
        (algorithm_b(dual(q), s.d, up, 1e-15)[m] - algorithm_b(dual(q), s.d, down, 1e-15)[m]) /
        (2 * eps);
    CHECK(dphi[m] == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("primal deterministic equivalent matches the effective-network form") {
  const auto s = scene(4, 5, 6);
  const auto& c = s.cfg;
  const RealVector q = RealVector::LinSpaced(c.users(), 1e10, 3e10);
  const RealVector p = RealVector::LinSpaced(c.users(), 2.0, 9.0);
  const RealVector phi = algorithm_b(dual(q), s.d, c, 1e-15);
  const RealVector dphi = phi_derivative(phi, dual(q), s.d, c);
  const RealVector g = gamma_primal(primal(p), dual(q), phi, dphi, s.d, c);
  const auto eff = build_effective(dual(q), phi, dphi, s.d, c, NetworkKind::kPrimal);
  const RealVector interference = eff.e_mat * p / c.antennas + c.noise;
  for (int m = 0; m < c.users(); ++m) {
    const double ratio = p[m] / (eff.e_vec[m] * interference[m]);
    CHECK(g[m] == doctest::Approx(ratio).epsilon(1e-12));
  }
  CHECK((eff.e_mat.diagonal().array() == 0.0).all());
  CHECK((eff.e_mat.array() >= 0.0).all());
}

TEST_CASE("symmetric network gives uniform powers") {
  const int n = 6;
  const auto d = testing::symmetric_profile(n, 2.0, 0.3);
  const auto c = NetworkConfig::uniform(2, 3, 4, 5.0, 1.0, 1.0, 0.5);
  const RealVector phi = algorithm_b(dual(RealVector::Constant(n, 2.0)), d, c, 1e-14);
  const auto cq = algorithm_c(phi, d, c, 1e-13, RealVector::LinSpaced(n, 1.0, 3.0));
  CHECK(cq.converged);
  CHECK((cq.power.values.array() - cq.power[0]).abs().maxCoeff() < 1e-10 * cq.power[0]);
  const RealVector dphi = phi_derivative(phi, cq.power, d, c);
  const auto dp = algorithm_d(cq.power, phi, dphi, d, c, 1e-13, RealVector::LinSpaced(n, 3.0, 1.0));
  CHECK(dp.converged);
  CHECK((dp.power.values.array() - dp.power[0]).abs().maxCoeff() < 1e-10 * dp.power[0]);
  const auto st = algorithm_e(d, c);
  REQUIRE(st.converged);
  for (const RealVector* v : {&st.q_hat.values, &st.p_hat.values, &st.phi}) {
    CHECK(((v->array() - (*v)[0]).abs().maxCoeff()) < 1e-10 * std::abs((*v)[0]));
  }
}

TEST_CASE("power iterations meet their effective eigen equations") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = scene(seed);
    const auto& c = s.cfg;
    const RealVector q0 = RealVector::Constant(c.users(), c.antennas * c.power_budget / c.noise.sum());
    const RealVector phi = algorithm_b(dual(q0), s.d, c, 1e-15);
    const auto cq = algorithm_c(phi, s.d, c, 1e-13);
    REQUIRE(cq.converged);
    const RealVector dphi = phi_derivative(phi, cq.power, s.d, c);
    const auto eff_d = build_effective(cq.power, phi, dphi, s.d, c, NetworkKind::kDual);
    CHECK(effective_eigen_residual(eff_d, cq.power.values, cq.weighted_sinr, c) < 1e-8);
    const auto dp = algorithm_d(cq.power, phi, dphi, s.d, c, 1e-13);
    REQUIRE(dp.converged);
    const auto eff_p = build_effective(cq.power, phi, dphi, s.d, c, NetworkKind::kPrimal);
    CHECK(effective_eigen_residual(eff_p, dp.power.values, dp.weighted_sinr, c) < 1e-8);

    CHECK(testing::max_error_ratio(cq.iterates, cq.power.values, 3) < 0.95);
    CHECK(testing::max_error_ratio(dp.iterates, dp.power.values, 3) < 0.95);
  }
}

TEST_CASE("iteration caps are flagged") {
  const auto s = scene(1);
  const RealVector phi = s.cfg.weights.cwiseInverse();
  const auto cq = algorithm_c(phi, s.d, s.cfg, 1e-300, std::nullopt, 3);
  CHECK_FALSE(cq.converged);
  CHECK(cq.iterations == 3);
  AlgorithmEOptions o;
  o.max_iter = 2;
  const auto st = algorithm_e(s.d, s.cfg, o);
  CHECK_FALSE(st.converged);
  CHECK(st.iterations == 2);
}

TEST_CASE("combined loop reaches a consistent fixed point") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = scene(seed);
    const auto& c = s.cfg;
    const auto st = algorithm_e(s.d, c);
    REQUIRE(st.converged);
    CHECK(st.phi_residual < 1e-8);
    CHECK(st.phi_prime_residual < 1e-8);
    CHECK(st.dual_eigen_residual < 1e-8);
    CHECK(st.primal_eigen_residual < 1e-8);
    CHECK(st.varsigma == doctest::Approx(st.zeta).epsilon(1e-8));

    // Equalized deterministic SINRs.
    const RealVector g =
        gamma_primal(st.p_hat, st.q_hat, st.phi, st.phi_prime, s.d, c).cwiseQuotient(c.priorities);
    CHECK((g.array() - st.zeta).abs().maxCoeff() / st.zeta < 1e-8);

    // Alternating phi and dual-power solves do not move the state.
    const RealVector phi_b = algorithm_b(st.q_hat, s.d, c, 1e-15, st.phi);
    CHECK(rel_inf(phi_b, st.phi) < 10 * c.tol);
    const auto cq = algorithm_c(phi_b, s.d, c, 1e-14, st.q_hat.values);
    CHECK(rel_inf(cq.power.values, st.q_hat.values) < 10 * c.tol);

    // Perron pairs of the effective extended matrices.
    for (auto kind : {NetworkKind::kDual, NetworkKind::kPrimal}) {
      const auto eff = build_effective(st.q_hat, st.phi, st.phi_prime, s.d, c, kind);
      const auto pp = perron_pair(effective_extended_matrix(eff, c));
      const RealVector& v = kind == NetworkKind::kDual ? st.q_hat.values : st.p_hat.values;
      const double s_star = kind == NetworkKind::kDual ? st.varsigma : st.zeta;
      CHECK(rel_inf(pp.x, v / v.sum()) < 1e-6);
      CHECK(std::abs(pp.rho - c.antennas / s_star) / pp.rho < 1e-8);
    }
  }
}

TEST_CASE("verbatim phi coupling leaves a residual of varsigma - 1") {
  const auto s = scene(2);
  AlgorithmEOptions o;
  o.phi_update = PhiUpdate::kNormalized;
  const auto st = algorithm_e(s.d, s.cfg, o);
  REQUIRE(st.converged);
  CHECK(std::abs(st.varsigma - 1.0) > 1e-3);
  CHECK(st.phi_residual == doctest::Approx(std::abs(st.varsigma - 1.0)).epsilon(1e-6));
}

TEST_CASE("combined loop is deterministic") {
  const auto s = scene(6);
  const auto a = algorithm_e(s.d, s.cfg);
  const auto b = algorithm_e(s.d, s.cfg);
  CHECK(a.q_hat.values == b.q_hat.values);
  CHECK(a.p_hat.values == b.p_hat.values);
  CHECK(a.iterations == b.iterations);
}
