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

#include "maxmin/network.hpp"

#include "maxmin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace maxmin {

int flatten_index(int j, int k, int users_per_cell, int cells) {
  if (users_per_cell < 1 || cells < 1) throw InvalidArgument("dimensions must be positive");
  if (j < 1 || j > cells) throw InvalidArgument("cell index out of range: " + std::to_string(j));
  if (k < 1 || k > users_per_cell) {
    throw InvalidArgument("user index out of range: " + std::to_string(k));
  }
  return (j - 1) * users_per_cell + k;
}

std::pair<int, int> unflatten_index(int m, int users_per_cell, int cells) {
  if (users_per_cell < 1 || cells < 1) throw InvalidArgument("dimensions must be positive");
  if (m < 1 || m > users_per_cell * cells) {
    throw InvalidArgument("flat index out of range: " + std::to_string(m));
  }
  const int j = (m + users_per_cell - 1) / users_per_cell;
  return {j, m - (j - 1) * users_per_cell};
}

std::vector<Point> hexagonal_sites(int cells, double inter_site_distance) {
  if (cells < 1) throw InvalidArgument("cells must be positive");
  struct Site {
    int ring;
    double angle;
    Point p;
  };
  int rings = 0;
  while (1 + 3 * rings * (rings + 1) < cells) ++rings;
  std::vector<Site> sites;
  for (int q = -rings; q <= rings; ++q) {
    for (int r = -rings; r <= rings; ++r) {
      const int ring = std::max({std::abs(q), std::abs(r), std::abs(q + r)});
      if (ring > rings) continue;
      const Point p{inter_site_distance * (q + 0.5 * r),
                    inter_site_distance * (std::numbers::sqrt3 / 2.0) * r};
      double angle = std::atan2(p.y, p.x);
      if (angle < -1e-12) angle += 2.0 * std::numbers::pi;
      sites.push_back({ring, ring == 0 ? 0.0 : angle, p});
    }
  }
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    if (a.ring != b.ring) return a.ring < b.ring;
    return a.angle < b.angle;
  });
  std::vector<Point> out;
  for (int i = 0; i < cells; ++i) out.push_back(sites[static_cast<std::size_t>(i)].p);
  return out;
}

Layout generate_layout(const GeometrySpec& geometry, int cells, int users_per_cell,
                       std::uint64_t seed) {
  geometry.validate();
  if (users_per_cell < 1) throw InvalidArgument("users_per_cell must be positive");
  Layout layout;
  layout.users_per_cell = users_per_cell;
  layout.base_stations = hexagonal_sites(cells, geometry.inter_site_distance);
  const double r_min2 = geometry.min_user_distance * geometry.min_user_distance;
  const double r_max2 = geometry.cell_radius * geometry.cell_radius;
  for (int j = 0; j < cells; ++j) {
    Rng rng = Rng::stream(seed, {0, static_cast<std::uint64_t>(j)});
    const Point bs = layout.base_stations[static_cast<std::size_t>(j)];
    for (int k = 0; k < users_per_cell; ++k) {
      // Uniform over the annulus: inverse CDF of the squared radius.
      double r = std::sqrt(r_min2 + (r_max2 - r_min2) * rng.uniform_open_low());
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      r = std::max(r, std::nextafter(geometry.min_user_distance, r_max2));
      layout.users.push_back({bs.x + r * std::cos(theta), bs.y + r * std::sin(theta)});
    }
  }
  return layout;
}

double pathloss_db(const GeometrySpec& geometry, double distance_m) {
  if (!(distance_m > 0.0)) throw InvalidArgument("distance must be positive");
  return geometry.pathloss_intercept_db + geometry.pathloss_slope * std::log10(distance_m);
}

LargeScaleProfile generate_large_scale(const GeometrySpec& geometry, const Layout& layout,
                                       std::uint64_t seed) {
  geometry.validate();
  const int cells = layout.cells();
  const int per_cell = layout.users_per_cell;
  const int n = static_cast<int>(layout.users.size());
  if (cells < 1 || per_cell < 1 || n != cells * per_cell) {
    throw InvalidArgument("layout must hold users_per_cell users for every base station");
  }
  // gain[j][b]: base station j towards user b.
  RealMatrix gain(cells, n);
  for (int j = 0; j < cells; ++j) {
    const Point bs = layout.base_stations[static_cast<std::size_t>(j)];
    for (int b = 0; b < n; ++b) {
      const Point u = layout.users[static_cast<std::size_t>(b)];
      const double dist = std::hypot(u.x - bs.x, u.y - bs.y);
      if (!(dist > geometry.min_user_distance)) {
        throw InvalidArgument("user " + std::to_string(b + 1) + " lies within " +
                              std::to_string(geometry.min_user_distance) +
                              " m of base station " + std::to_string(j + 1));
      }
      double shadow_db = 0.0;
      if (geometry.shadowing_std_db > 0.0) {
        Rng rng = Rng::stream(seed, {1, static_cast<std::uint64_t>(j),
                                     static_cast<std::uint64_t>(b / per_cell),
                                     static_cast<std::uint64_t>(b % per_cell)});
        shadow_db = geometry.shadowing_std_db * rng.normal();
      }
      const double db = geometry.antenna_gain_db - pathloss_db(geometry, dist) + shadow_db;
      gain(j, b) = std::pow(10.0, db / 10.0);
    }
  }
  RealMatrix d(n, n);
  for (int a = 0; a < n; ++a) d.row(a) = gain.row(a / per_cell);
  return LargeScaleProfile(std::move(d));
}

ChannelRealization sample_channel(const LargeScaleProfile& profile, int cells, int antennas,
                                  std::uint64_t seed) {
  const int n = profile.users();
  if (cells < 1 || n % cells != 0) throw InvalidArgument("user count must be a multiple of cells");
  if (antennas < 1) throw InvalidArgument("antennas must be positive");
  const int per_cell = n / cells;
  const RealMatrix& d = profile.matrix();
  for (int a = 0; a < n; ++a) {
    if (d.row(a) != d.row((a / per_cell) * per_cell)) {
      throw InvalidArgument("large-scale rows must coincide within a cell");
    }
  }
  std::vector<ComplexVector> per_cell_vectors;
  per_cell_vectors.reserve(static_cast<std::size_t>(cells * n));
  for (int l = 0; l < cells; ++l) {
    for (int b = 0; b < n; ++b) {
      Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(b)});
      const double amp = std::sqrt(d(l * per_cell, b));
      ComplexVector h(antennas);
      for (int i = 0; i < antennas; ++i) h[i] = amp * rng.complex_normal();
      per_cell_vectors.push_back(std::move(h));
    }
  }
  return ChannelRealization(cells, per_cell, antennas, std::move(per_cell_vectors), seed);
}

}  // namespace maxmin
