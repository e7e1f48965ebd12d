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

#ifndef MAXMIN_NETWORK_HPP
#define MAXMIN_NETWORK_HPP

#include "maxmin/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace maxmin {

/// 1-based (cell j, user k) -> 1-based flat index m = (j-1)K + k.
int flatten_index(int j, int k, int users_per_cell, int cells);

/// Inverse of flatten_index: m -> (ceil(m/K), m - (ceil(m/K)-1)K), 1-based.
std::pair<int, int> unflatten_index(int m, int users_per_cell, int cells);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Base-station sites and user positions; users are ordered by flat index.
struct Layout {
  std::vector<Point> base_stations;
  std::vector<Point> users;
  int users_per_cell = 0;

  [[nodiscard]] int cells() const { return static_cast<int>(base_stations.size()); }
};

/// Sites on a hexagonal lattice with spacing inter_site_distance, filled ring
/// by ring; the first three form an equilateral triangle.
std::vector<Point> hexagonal_sites(int cells, double inter_site_distance);

/// Users uniform in each cell disk outside the exclusion radius. Cell j draws
/// its users sequentially from its own stream, so the first K users of a
/// K' > K layout coincide with the K-user layout for the same seed.
Layout generate_layout(const GeometrySpec& geometry, int cells, int users_per_cell,
                       std::uint64_t seed);

/// Path loss in dB at the given distance in metres.
double pathloss_db(const GeometrySpec& geometry, double distance_m);

/// d(a,b) = 10^((G - PL(dist) + S)/10), S ~ N(0, std^2) drawn once per
/// (base station, user) pair. Rejects users within min_user_distance of any
/// base station.
LargeScaleProfile generate_large_scale(const GeometrySpec& geometry, const Layout& layout,
                                       std::uint64_t seed);

/// h(a,b) = sqrt(d(a,b)) * h~, h~ i.i.d. CN(0,1), one draw per (cell, user).
/// Requires d rows to coincide within each cell.
ChannelRealization sample_channel(const LargeScaleProfile& profile, int cells, int antennas,
                                  std::uint64_t seed);

}  // namespace maxmin

#endif  // MAXMIN_NETWORK_HPP
