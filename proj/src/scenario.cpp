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

#include "maxmin/scenario.hpp"

#include <fstream>
#include <vector>

namespace maxmin {

namespace {

using nlohmann::json;

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key) && !obj.at(key).is_null()) out = obj.at(key).get<T>();
}

std::optional<RealVector> read_vector(const json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  const json& v = obj.at(key);
  if (v.is_number()) return RealVector::Constant(1, v.get<double>());
  const auto values = v.get<std::vector<double>>();
  return Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

RealVector expand(const std::optional<RealVector>& v, int n, double fallback, const char* name) {
  if (!v) return RealVector::Constant(n, fallback);
  if (v->size() == 1) return RealVector::Constant(n, (*v)[0]);
  if (v->size() != n) {
    throw InvalidArgument(std::string(name) + " must be a scalar or a list of length J*K");
  }
  return *v;
}

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

NetworkConfig Scenario::network(std::optional<int> users_per_cell_override,
                                std::optional<int> antennas_override,
                                std::optional<double> power_override) const {
  NetworkConfig c;
  c.cells = cells;
  c.users_per_cell = users_per_cell_override.value_or(users_per_cell);
  c.antennas = antennas_override.value_or(antennas);
  c.power_budget = power_override.value_or(power_budget);
  const int n = c.users();
  c.weights = expand(weights, n, 1.0, "weights");
  c.priorities = expand(priorities, n, 1.0, "priorities");
  c.noise = expand(noise, n, geometry.noise_power_w(), "noise_w");
  c.tol = tol;
  c.max_iter = max_iter;
  c.validate();
  return c;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  if (j.contains("geometry")) {
    const json& g = j.at("geometry");
    read(g, "cell_radius_m", s.geometry.cell_radius);
    read(g, "inter_site_distance_m", s.geometry.inter_site_distance);
    read(g, "min_user_distance_m", s.geometry.min_user_distance);
    read(g, "antenna_gain_dbi", s.geometry.antenna_gain_db);
    read(g, "pathloss_intercept_db", s.geometry.pathloss_intercept_db);
    read(g, "pathloss_slope_db", s.geometry.pathloss_slope);
    read(g, "shadowing_std_db", s.geometry.shadowing_std_db);
    read(g, "noise_psd_dbm_hz", s.geometry.noise_psd_dbm_hz);
    read(g, "bandwidth_hz", s.geometry.bandwidth_hz);
  }
  if (j.contains("network")) {
    const json& n = j.at("network");
    read(n, "cells", s.cells);
    read(n, "users_per_cell", s.users_per_cell);
    read(n, "antennas", s.antennas);
    read(n, "power_budget_w", s.power_budget);
    read(n, "load_factor", s.load_factor);
    s.weights = read_vector(n, "weights");
    s.priorities = read_vector(n, "priorities");
    s.noise = read_vector(n, "noise_w");
  }
  if (j.contains("solver")) {
    const json& v = j.at("solver");
    read(v, "tol", s.tol);
    read(v, "max_iter", s.max_iter);
    read(v, "large_tol", s.large_tol);
    read(v, "large_max_iter", s.large_max_iter);
  }
  if (j.contains("experiment")) {
    const json& e = j.at("experiment");
    read(e, "seed", s.seed);
    read(e, "trials", s.trials);
    read(e, "geometries", s.geometries);
  }
  s.geometry.validate();
  if (s.load_factor <= 0.0) throw InvalidArgument("load_factor must be positive");
  if (s.trials < 1 || s.geometries < 1) throw InvalidArgument("trials and geometries must be >= 1");
  (void)s.network();  // validates dimensions and vector lengths
  return s;
}

nlohmann::ordered_json scenario_to_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["geometry"] = {{"cell_radius_m", s.geometry.cell_radius},
                   {"inter_site_distance_m", s.geometry.inter_site_distance},
                   {"min_user_distance_m", s.geometry.min_user_distance},
                   {"antenna_gain_dbi", s.geometry.antenna_gain_db},
                   {"pathloss_intercept_db", s.geometry.pathloss_intercept_db},
                   {"pathloss_slope_db", s.geometry.pathloss_slope},
                   {"shadowing_std_db", s.geometry.shadowing_std_db},
                   {"noise_psd_dbm_hz", s.geometry.noise_psd_dbm_hz},
                   {"bandwidth_hz", s.geometry.bandwidth_hz}};
  nlohmann::ordered_json net = {{"cells", s.cells},
                                {"users_per_cell", s.users_per_cell},
                                {"antennas", s.antennas},
                                {"power_budget_w", s.power_budget},
                                {"load_factor", s.load_factor}};
  net["weights"] = s.weights ? nlohmann::ordered_json(to_std(*s.weights)) : nlohmann::ordered_json(1.0);
  net["priorities"] =
      s.priorities ? nlohmann::ordered_json(to_std(*s.priorities)) : nlohmann::ordered_json(1.0);
  net["noise_w"] = s.noise ? nlohmann::ordered_json(to_std(*s.noise)) : nlohmann::ordered_json();
  j["network"] = net;
  j["solver"] = {{"tol", s.tol},
                 {"max_iter", s.max_iter},
                 {"large_tol", s.large_tol},
                 {"large_max_iter", s.large_max_iter}};
  j["experiment"] = {{"seed", s.seed}, {"trials", s.trials}, {"geometries", s.geometries}};
  return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open scenario file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidArgument("malformed scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

nlohmann::ordered_json config_to_json(const NetworkConfig& c) {
  return {{"cells", c.cells},
          {"users_per_cell", c.users_per_cell},
          {"antennas", c.antennas},
          {"power_budget_w", c.power_budget},
          {"weights", to_std(c.weights)},
          {"priorities", to_std(c.priorities)},
          {"noise_w", to_std(c.noise)},
          {"tol", c.tol},
          {"max_iter", c.max_iter}};
}

}  // namespace maxmin
