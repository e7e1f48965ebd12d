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

#ifndef MAXMIN_SCENARIO_HPP
#define MAXMIN_SCENARIO_HPP

#include "maxmin/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>

namespace maxmin {

/// Everything needed to rebuild an experiment: geometry constants, network
/// dimensions and prices, solver tolerances and the base seed.
///
/// JSON schema (every key optional, defaults shown):
///
///   {
///     "geometry": {
///       "cell_radius_m": 1500, "inter_site_distance_m": 2598.076...,
///       "min_user_distance_m": 35, "antenna_gain_dbi": 15,
///       "pathloss_intercept_db": 15.3, "pathloss_slope_db": 37.6,
///       "shadowing_std_db": 8, "noise_psd_dbm_hz": -162, "bandwidth_hz": 1e7
///     },
///     "network": {
///       "cells": 3, "users_per_cell": 4, "antennas": 4, "power_budget_w": 10,
///       "weights": 1, "priorities": 1,        // scalar or list of length J*K
///       "noise_w": null,                      // scalar or list; null: from geometry
///       "load_factor": 0.8                    // K/N for concentration sweeps
///     },
///     "solver": { "tol": 1e-10, "max_iter": 500,
///                 "large_tol": 1e-10, "large_max_iter": 10000 },
///     "experiment": { "seed": 1, "trials": 1, "geometries": 1 }
///   }
struct Scenario {
  GeometrySpec geometry;
  int cells = 3;
  int users_per_cell = 4;
  int antennas = 4;
  double power_budget = 10.0;
  std::optional<RealVector> weights;     // default all ones
  std::optional<RealVector> priorities;  // default all ones
  std::optional<RealVector> noise;       // default thermal noise from geometry
  double load_factor = 0.8;
  double tol = 1e-10;
  int max_iter = 500;
  double large_tol = 1e-10;
  int large_max_iter = 10000;
  std::uint64_t seed = 1;
  int trials = 1;
  int geometries = 1;

  /// NetworkConfig for this scenario, optionally overriding K, N and P.
  [[nodiscard]] NetworkConfig network(std::optional<int> users_per_cell_override = std::nullopt,
                                      std::optional<int> antennas_override = std::nullopt,
                                      std::optional<double> power_override = std::nullopt) const;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::ordered_json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::ordered_json config_to_json(const NetworkConfig& c);

}  // namespace maxmin

#endif  // MAXMIN_SCENARIO_HPP
