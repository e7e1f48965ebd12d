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

#ifndef MAXMIN_TEST_HELPERS_HPP
#define MAXMIN_TEST_HELPERS_HPP

#include "maxmin/network.hpp"
#include "maxmin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace testing {

using namespace maxmin;

struct Instance {
  LargeScaleProfile d;
  ChannelRealization ch;
  NetworkConfig cfg;
};

// Hexagonal three-cell drop with the default geometry constants.
inline Instance cellular(std::uint64_t seed, int K = 4, int N = 4, double P = 10.0, int J = 3) {
  GeometrySpec g;
  const Layout lay = generate_layout(g, J, K, seed);
  LargeScaleProfile d = generate_large_scale(g, lay, seed);
  NetworkConfig cfg = NetworkConfig::uniform(J, K, N, P, 1.0, 1.0, g.noise_power_w());
  ChannelRealization ch = sample_channel(d, J, N, seed + 1000000);
  return {std::move(d), std::move(ch), std::move(cfg)};
}

// Log-normal gains around 1 with rows replicated inside each cell.
inline LargeScaleProfile random_profile(int J, int K, std::uint64_t seed, double spread = 1.0) {
  Rng rng(seed);
  const int n = J * K;
  RealMatrix d(n, n);
  for (int c = 0; c < J; ++c) {
    for (int b = 0; b < n; ++b) {
      const double v = std::exp(spread * rng.normal());
      for (int k = 0; k < K; ++k) d(c * K + k, b) = v;
    }
  }
  return LargeScaleProfile(d);
}

// Unit-scale instance: random gains, unit noise and prices, random priorities.
inline Instance random_instance(int J, int K, int N, std::uint64_t seed, double P = 2.0) {
  LargeScaleProfile d = random_profile(J, K, seed);
  NetworkConfig cfg = NetworkConfig::uniform(J, K, N, P, 1.0, 1.0, 1.0);
  Rng rng(seed ^ 0x5a5aULL);
  for (int m = 0; m < cfg.users(); ++m) {
    cfg.weights[m] = 0.5 + rng.uniform();
    cfg.priorities[m] = 0.5 + rng.uniform();
    cfg.noise[m] = 0.5 + rng.uniform();
  }
  ChannelRealization ch = sample_channel(d, J, N, seed + 17);
  return {std::move(d), std::move(ch), std::move(cfg)};
}

// Every off-diagonal gain equal, every diagonal gain equal.
inline LargeScaleProfile symmetric_profile(int n, double diag, double off) {
  RealMatrix d = RealMatrix::Constant(n, n, off);
  d.diagonal().setConstant(diag);
  return LargeScaleProfile(d);
}

inline double rel_inf(const RealVector& a, const RealVector& b) {
  return (a - b).lpNorm<Eigen::Infinity>() / b.lpNorm<Eigen::Infinity>();
}

// Largest ratio ||x[k+1] - x*|| / ||x[k] - x*|| over k >= burn_in, ignoring
// errors already below floor * ||x*|| (round-off plateau). Returns 0 when no
// pair qualifies.
inline double max_error_ratio(const std::vector<RealVector>& iterates, const RealVector& limit,
                              int burn_in, double floor = 1e-9) {
  const double scale = limit.lpNorm<Eigen::Infinity>();
  double worst = 0.0;
  for (std::size_t k = static_cast<std::size_t>(burn_in); k + 1 < iterates.size(); ++k) {
    const double e0 = (iterates[k] - limit).lpNorm<Eigen::Infinity>();
    const double e1 = (iterates[k + 1] - limit).lpNorm<Eigen::Infinity>();
    if (e0 < floor * scale || e1 < floor * scale) break;
    worst = std::max(worst, e1 / e0);
  }
  return worst;
}

}  // namespace testing

#endif  // MAXMIN_TEST_HELPERS_HPP
