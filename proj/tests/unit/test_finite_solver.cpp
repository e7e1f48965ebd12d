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

#include "helpers.hpp"

#include <doctest.h>

using namespace maxmin;
using testing::cellular;
using testing::random_instance;

namespace {

InitialPoint random_start(const NetworkConfig& c, std::uint64_t seed) {
  Rng r(seed);
  const int n = c.users();
  RealVector p(n), q(n);
  ComplexMatrix u(c.antennas, n);
  for (int m = 0; m < n; ++m) {
    p[m] = 0.1 + r.uniform();
    q[m] = 0.1 + r.uniform();
    for (int i = 0; i < c.antennas; ++i) u(i, m) = r.complex_normal();
    u.col(m).normalize();
  }
  // Strictly inside the budgets.
  p *= 0.7 * c.antennas * c.power_budget / c.weights.dot(p);
  q *= 0.9 * c.antennas * c.power_budget / c.noise.dot(q);
  return {PowerVector(p, PowerKind::kPrimal), PowerVector(q, PowerKind::kDual), BeamformingMatrix(u)};
}

}  // namespace

TEST_CASE("single user closed form") {
  const auto inst = random_instance(1, 1, 3, 21);
  const auto& c = inst.cfg;
  const auto r = algorithm_a(inst.ch, c);
  const ComplexVector& h = inst.ch.h(0, 0);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.trace.size() == 1);
  CHECK(r.p_star[0] == doctest::Approx(c.antennas * c.power_budget / c.weights[0]).epsilon(1e-14));
  CHECK((r.u_star.column(0) - h.normalized()).norm() < 1e-12);
  const double tau = c.power_budget * h.squaredNorm() / (c.weights[0] * c.noise[0] * c.priorities[0]);
  CHECK(r.tau_star == doctest::Approx(tau).epsilon(1e-13));
  const auto rep = verify_optimality(r, inst.ch, c);
  CHECK(rep.ok());
  CHECK(rep.eigen_residual < 1e-12);
}

TEST_CASE("cellular instances converge quickly and pass every optimality check") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = cellular(seed);
    const auto r = algorithm_a(inst.ch, inst.cfg);
    REQUIRE(r.converged);
    int first = -1;
    for (const auto& rec : r.trace) {
      if (rec.spread < 1e-6) {
        first = rec.iteration;
        break;
      }
    }
    CHECK(first > 0);
    CHECK(first <= 50);
    const auto rep = verify_optimality(r, inst.ch, inst.cfg);
    CHECK_MESSAGE(rep.ok(), (rep.failures.empty() ? std::string() : rep.failures.front()));
    CHECK(rep.eigen_residual < 1e-8);
  }
}

TEST_CASE("random instances with heterogeneous prices and priorities") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto inst = random_instance(3, 2, 3, seed);
    const auto r = algorithm_a(inst.ch, inst.cfg);
    REQUIRE(r.converged);
    const auto rep = verify_optimality(r, inst.ch, inst.cfg);
    CHECK_MESSAGE(rep.ok(), (rep.failures.empty() ? std::string() : rep.failures.front()));
  }
}

TEST_CASE("perturbed solution fails the equalization check") {
  const auto inst = cellular(3);
  auto r = algorithm_a(inst.ch, inst.cfg);
  RealVector p = r.p_star.values;
  p[2] *= 1.01;
  r.p_star = PowerVector(p, PowerKind::kPrimal);
  const auto rep = verify_optimality(r, inst.ch, inst.cfg);
  CHECK_FALSE(rep.ok());
  CHECK(rep.equalization_gap > 1e-6);
}

TEST_CASE("solution does not depend on the initial point") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto inst = random_instance(2, 2, 2, seed);
    const auto a = algorithm_a(inst.ch, inst.cfg);
    const auto b = algorithm_a(inst.ch, inst.cfg, random_start(inst.cfg, seed + 50));
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(std::abs(a.tau_star - b.tau_star) / a.tau_star < 10 * inst.cfg.tol);
  }
}

TEST_CASE("infeasible initial point is rejected") {
  const auto inst = random_instance(2, 1, 2, 4);
  auto start = default_initial_point(inst.ch, inst.cfg);
  start.p = PowerVector(start.p.values * 1.5, PowerKind::kPrimal);
  CHECK_THROWS_AS(algorithm_a(inst.ch, inst.cfg, start), InvalidArgument);
}

TEST_CASE("iteration cap returns a flagged result") {
  auto inst = cellular(2);
  inst.cfg.max_iter = 2;
  const auto r = algorithm_a(inst.ch, inst.cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
  CHECK(r.trace.size() == 2);
  CHECK(r.tau_star > 0.0);
}

TEST_CASE("solver is deterministic") {
  const auto inst = cellular(4);
  const auto a = algorithm_a(inst.ch, inst.cfg);
  const auto b = algorithm_a(inst.ch, inst.cfg);
  CHECK(a.p_star.values == b.p_star.values);
  CHECK(a.tau_star == b.tau_star);
}

TEST_CASE("power iterates decay geometrically") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = cellular(seed);
    const auto r = algorithm_a(inst.ch, inst.cfg);
    std::vector<RealVector> ps;
    for (const auto& rec : r.trace) ps.push_back(rec.p);
    const double ratio = testing::max_error_ratio(ps, r.p_star.values, 3);
    CHECK(ratio < 0.95);
  }
}

TEST_CASE("brute force oracle") {
  SUBCASE("single antenna single user is exact") {
    const auto inst = random_instance(1, 1, 1, 5);
    const auto& c = inst.cfg;
    const double exact =
        c.power_budget * inst.ch.h(0, 0).squaredNorm() / (c.weights[0] * c.noise[0] * c.priorities[0]);
    CHECK(brute_force_maxmin(inst.ch, c, 10, 1) == doctest::Approx(exact).epsilon(1e-14));
  }
  SUBCASE("lower bound close to the optimum") {
    const auto inst = random_instance(2, 1, 2, 8);
    const auto r = algorithm_a(inst.ch, inst.cfg);
    const double bf = brute_force_maxmin(inst.ch, inst.cfg, 200000, 3);
    CHECK(bf <= r.tau_star * (1 + 1e-9));
    CHECK(bf >= r.tau_star * 0.99);
  }
  SUBCASE("non-decreasing in the budget") {
    const auto inst = random_instance(2, 1, 2, 9);
    const double small = brute_force_maxmin(inst.ch, inst.cfg, 10000, 4);
    const double large = brute_force_maxmin(inst.ch, inst.cfg, 100000, 4);
    CHECK(large >= small);
    CHECK(brute_force_maxmin(inst.ch, inst.cfg, 10000, 4) == small);
  }
  SUBCASE("dimension guard") {
    const auto big = random_instance(2, 2, 2, 1);
    CHECK_THROWS_AS(brute_force_maxmin(big.ch, big.cfg, 100, 1), InvalidArgument);
    const auto wide = random_instance(1, 1, 3, 1);
    CHECK_THROWS_AS(brute_force_maxmin(wide.ch, wide.cfg, 100, 1), InvalidArgument);
  }
}
