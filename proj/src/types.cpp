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

#include "maxmin/types.hpp"

#include <cmath>
#include <string>

namespace maxmin {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

bool all_positive(const RealVector& v) {
  return v.allFinite() && (v.array() > 0.0).all();
}

}  // namespace

void NetworkConfig::validate() const {
  require(cells > 0, "cells must be positive");
  require(users_per_cell > 0, "users_per_cell must be positive");
  require(antennas > 0, "antennas must be positive");
  require(std::isfinite(power_budget) && power_budget > 0.0, "power budget must be positive");
  require(tol > 0.0, "tol must be positive");
  require(max_iter > 0, "max_iter must be positive");
  const Eigen::Index n = users();
  require(weights.size() == n, "weights must have length J*K");
  require(priorities.size() == n, "priorities must have length J*K");
  require(noise.size() == n, "noise must have length J*K");
  require(all_positive(weights), "weights must be strictly positive");
  require(all_positive(priorities), "priorities must be strictly positive");
  require(all_positive(noise), "noise must be strictly positive");
}

NetworkConfig NetworkConfig::uniform(int cells, int users_per_cell, int antennas,
                                     double power_budget, double weight, double priority,
                                     double noise) {
  NetworkConfig c;
  c.cells = cells;
  c.users_per_cell = users_per_cell;
  c.antennas = antennas;
  c.power_budget = power_budget;
  const int n = cells * users_per_cell;
  require(n > 0, "cells and users_per_cell must be positive");
  c.weights = RealVector::Constant(n, weight);
  c.priorities = RealVector::Constant(n, priority);
  c.noise = RealVector::Constant(n, noise);
  c.validate();
  return c;
}

LargeScaleProfile::LargeScaleProfile(RealMatrix gains) : d_(std::move(gains)) {
  require(d_.rows() == d_.cols() && d_.rows() > 0, "large-scale profile must be square");
  require(d_.allFinite() && (d_.array() > 0.0).all(),
          "large-scale gains must be strictly positive and finite");
}

ChannelRealization::ChannelRealization(int cells, int users_per_cell, int antennas,
                                       std::vector<ComplexVector> per_cell, std::uint64_t seed)
    : cells_(cells),
      users_per_cell_(users_per_cell),
      antennas_(antennas),
      per_cell_(std::move(per_cell)),
      seed_(seed) {
  require(cells > 0 && users_per_cell > 0 && antennas > 0, "channel dimensions must be positive");
  require(per_cell_.size() == static_cast<std::size_t>(cells * users()),
          "expected one channel vector per (cell, user)");
  for (const auto& v : per_cell_) {
    require(v.size() == antennas, "channel vector length must equal the antenna count");
  }
}

std::string to_string(PowerKind kind) {
  switch (kind) {
    case PowerKind::kPrimal:
      return "primal";
    case PowerKind::kDual:
      return "dual";
    case PowerKind::kAsymptoticPrimal:
      return "asymptotic-primal";
    case PowerKind::kAsymptoticDual:
      return "asymptotic-dual";
  }
  return "unknown";
}

PowerVector::PowerVector(RealVector v, PowerKind k) : values(std::move(v)), kind(k) {
  require(values.size() > 0, "power vector must be non-empty");
  require(all_positive(values), "powers must be strictly positive");
}

BeamformingMatrix::BeamformingMatrix(ComplexMatrix columns) : u_(std::move(columns)) {
  require(u_.cols() > 0 && u_.rows() > 0, "beamforming matrix must be non-empty");
  for (Eigen::Index m = 0; m < u_.cols(); ++m) {
    require(std::abs(u_.col(m).norm() - 1.0) <= 1e-12, "beamformers must have unit norm");
  }
}

void GeometrySpec::validate() const {
  require(cell_radius > 0 && inter_site_distance > 0 && min_user_distance > 0,
          "distances must be positive");
  require(min_user_distance < cell_radius, "exclusion radius must be below the cell radius");
  require(bandwidth_hz > 0, "bandwidth must be positive");
  require(shadowing_std_db >= 0, "shadowing std must be nonnegative");
}

double GeometrySpec::noise_power_w() const {
  const double dbm = noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz);
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

}  // namespace maxmin
