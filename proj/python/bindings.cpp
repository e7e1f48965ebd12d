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
#include "maxmin/harness.hpp"
#include "maxmin/large_system.hpp"
#include "maxmin/network.hpp"
#include "maxmin/perron.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace maxmin;

namespace {

struct PyDrop {
  std::vector<std::pair<double, double>> base_stations;
  std::vector<std::pair<double, double>> users;
  LargeScaleProfile profile;
};

std::vector<std::pair<double, double>> points(const std::vector<Point>& v) {
  std::vector<std::pair<double, double>> out;
  out.reserve(v.size());
  for (const auto& p : v) out.emplace_back(p.x, p.y);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Max-min weighted SINR beamforming and power control";

  py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", PyExc_RuntimeError);
  py::register_exception<DegenerateBeamformer>(m, "DegenerateBeamformer", PyExc_RuntimeError);

  py::class_<GeometrySpec>(m, "GeometrySpec")
      .def(py::init<>())
      .def_readwrite("cell_radius", &GeometrySpec::cell_radius)
      .def_readwrite("inter_site_distance", &GeometrySpec::inter_site_distance)
      .def_readwrite("min_user_distance", &GeometrySpec::min_user_distance)
      .def_readwrite("antenna_gain_db", &GeometrySpec::antenna_gain_db)
      .def_readwrite("pathloss_intercept_db", &GeometrySpec::pathloss_intercept_db)
      .def_readwrite("pathloss_slope", &GeometrySpec::pathloss_slope)
      .def_readwrite("shadowing_std_db", &GeometrySpec::shadowing_std_db)
      .def_readwrite("noise_psd_dbm_hz", &GeometrySpec::noise_psd_dbm_hz)
      .def_readwrite("bandwidth_hz", &GeometrySpec::bandwidth_hz)
      .def("noise_power_w", &GeometrySpec::noise_power_w);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_static("uniform", &NetworkConfig::uniform, py::arg("cells"), py::arg("users_per_cell"),
                  py::arg("antennas"), py::arg("power_budget"), py::arg("weight") = 1.0,
                  py::arg("priority") = 1.0, py::arg("noise") = GeometrySpec{}.noise_power_w())
      .def_readwrite("cells", &NetworkConfig::cells)
      .def_readwrite("users_per_cell", &NetworkConfig::users_per_cell)
      .def_readwrite("antennas", &NetworkConfig::antennas)
      .def_readwrite("power_budget", &NetworkConfig::power_budget)
      .def_readwrite("weights", &NetworkConfig::weights)
      .def_readwrite("priorities", &NetworkConfig::priorities)
      .def_readwrite("noise", &NetworkConfig::noise)
      .def_readwrite("tol", &NetworkConfig::tol)
      .def_readwrite("max_iter", &NetworkConfig::max_iter)
      .def("users", &NetworkConfig::users)
      .def("validate", &NetworkConfig::validate);

  py::class_<LargeScaleProfile>(m, "LargeScaleProfile")
      .def(py::init<RealMatrix>(), py::arg("gains"))
      .def("matrix", &LargeScaleProfile::matrix)
      .def("users", &LargeScaleProfile::users)
      .def("__call__", &LargeScaleProfile::operator());

  py::class_<ChannelRealization>(m, "ChannelRealization")
      .def("h", [](const ChannelRealization& c, int a, int b) { return ComplexVector(c.h(a, b)); })
      .def_property_readonly("cells", &ChannelRealization::cells)
      .def_property_readonly("users_per_cell", &ChannelRealization::users_per_cell)
      .def_property_readonly("antennas", &ChannelRealization::antennas)
      .def_property_readonly("seed", &ChannelRealization::seed);

  py::class_<PyDrop>(m, "Drop")
      .def_readonly("base_stations", &PyDrop::base_stations)
      .def_readonly("users", &PyDrop::users)
      .def_readonly("profile", &PyDrop::profile);

  m.def(
      "make_drop",
      [](const GeometrySpec& g, int cells, int users_per_cell, std::uint64_t seed) {
        const Layout layout = generate_layout(g, cells, users_per_cell, seed);
        return PyDrop{points(layout.base_stations), points(layout.users),
                      generate_large_scale(g, layout, seed)};
      },
      py::arg("geometry"), py::arg("cells"), py::arg("users_per_cell"), py::arg("seed"));
  m.def("sample_channel", &sample_channel, py::arg("profile"), py::arg("cells"),
        py::arg("antennas"), py::arg("seed"));
  m.def("flatten_index", &flatten_index);
  m.def("unflatten_index", &unflatten_index);

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("p_star", [](const SolveResult& r) { return r.p_star.values; })
      .def_property_readonly("q_star", [](const SolveResult& r) { return r.q_star.values; })
      .def_property_readonly("u_star", [](const SolveResult& r) { return r.u_star.matrix(); })
      .def_readonly("tau_star", &SolveResult::tau_star)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("converged", &SolveResult::converged)
      .def_property_readonly("spread_trace", [](const SolveResult& r) {
        std::vector<double> s;
        for (const auto& rec : r.trace) s.push_back(rec.spread);
        return s;
      });
  m.def("algorithm_a",
        [](const ChannelRealization& ch, const NetworkConfig& cfg) { return algorithm_a(ch, cfg); },
        py::arg("channels"), py::arg("config"));

  py::class_<OptimalityReport>(m, "OptimalityReport")
      .def_readonly("equalization_gap", &OptimalityReport::equalization_gap)
      .def_readonly("primal_budget_gap", &OptimalityReport::primal_budget_gap)
      .def_readonly("dual_budget_gap", &OptimalityReport::dual_budget_gap)
      .def_readonly("eigen_residual", &OptimalityReport::eigen_residual)
      .def_readonly("primal_spectral_gap", &OptimalityReport::primal_spectral_gap)
      .def_readonly("dual_spectral_gap", &OptimalityReport::dual_spectral_gap)
      .def_readonly("duality_gap", &OptimalityReport::duality_gap)
      .def_readonly("failures", &OptimalityReport::failures)
      .def("ok", &OptimalityReport::ok);
  m.def("verify_optimality", &verify_optimality, py::arg("result"), py::arg("channels"),
        py::arg("config"), py::arg("tolerance") = 1e-6);
  m.def("brute_force_maxmin", &brute_force_maxmin, py::arg("channels"), py::arg("config"),
        py::arg("budget"), py::arg("seed"));

  m.def(
      "mvdr_beamformers",
      [](const ChannelRealization& ch, const RealVector& q, const NetworkConfig& cfg) {
        const MvdrSolution s = mvdr_all(ch, PowerVector(q, PowerKind::kDual), cfg);
        return py::make_tuple(s.u.matrix(), s.dual_sinr);
      },
      py::arg("channels"), py::arg("q"), py::arg("config"));

  py::class_<PerronPair>(m, "PerronPair")
      .def_readonly("rho", &PerronPair::rho)
      .def_readonly("x", &PerronPair::x)
      .def_readonly("y", &PerronPair::y)
      .def_readonly("residual", &PerronPair::residual)
      .def_readonly("iterations", &PerronPair::iterations);
  m.def("perron_pair", &perron_pair, py::arg("b"), py::arg("tol") = 1e-13,
        py::arg("max_iter") = 100000);

  m.def(
      "algorithm_b",
      [](const RealVector& q, const LargeScaleProfile& d, const NetworkConfig& cfg, double tol) {
        return algorithm_b(PowerVector(q, PowerKind::kAsymptoticDual), d, cfg, tol);
      },
      py::arg("q"), py::arg("profile"), py::arg("config"), py::arg("tol") = 1e-12);
  m.def(
      "gamma_dual",
      [](const RealVector& q, const LargeScaleProfile& d, const NetworkConfig& cfg) {
        return gamma_dual(PowerVector(q, PowerKind::kAsymptoticDual), d, cfg);
      },
      py::arg("q"), py::arg("profile"), py::arg("config"));

  py::enum_<PhiUpdate>(m, "PhiUpdate")
      .value("PRE_NORMALIZATION", PhiUpdate::kPreNormalization)
      .value("NORMALIZED", PhiUpdate::kNormalized);
  py::class_<AlgorithmEOptions>(m, "AlgorithmEOptions")
      .def(py::init<>())
      .def_readwrite("tol", &AlgorithmEOptions::tol)
      .def_readwrite("max_iter", &AlgorithmEOptions::max_iter)
      .def_readwrite("phi_update", &AlgorithmEOptions::phi_update);
  py::class_<AsymptoticState>(m, "AsymptoticState")
      .def_property_readonly("q_hat", [](const AsymptoticState& s) { return s.q_hat.values; })
      .def_property_readonly("p_hat", [](const AsymptoticState& s) { return s.p_hat.values; })
      .def_readonly("phi", &AsymptoticState::phi)
      .def_readonly("phi_prime", &AsymptoticState::phi_prime)
      .def_readonly("varsigma", &AsymptoticState::varsigma)
      .def_readonly("zeta", &AsymptoticState::zeta)
      .def_readonly("iterations", &AsymptoticState::iterations)
      .def_readonly("converged", &AsymptoticState::converged)
      .def_readonly("phi_residual", &AsymptoticState::phi_residual)
      .def_readonly("phi_prime_residual", &AsymptoticState::phi_prime_residual)
      .def_readonly("dual_eigen_residual", &AsymptoticState::dual_eigen_residual)
      .def_readonly("primal_eigen_residual", &AsymptoticState::primal_eigen_residual);
  m.def("algorithm_e", &algorithm_e, py::arg("profile"), py::arg("config"),
        py::arg("options") = AlgorithmEOptions{});
  m.def(
      "gamma_primal",
      [](const AsymptoticState& s, const LargeScaleProfile& d, const NetworkConfig& cfg) {
        return gamma_primal(s.p_hat, s.q_hat, s.phi, s.phi_prime, d, cfg);
      },
      py::arg("state"), py::arg("profile"), py::arg("config"));
  m.def("asymptotic_achieved_sinr", &asymptotic_achieved_sinr, py::arg("channels"),
        py::arg("state"), py::arg("config"));

  m.def(
      "_run_experiment",
      [](const std::string& kind, const std::filesystem::path& out_dir,
         const std::optional<std::filesystem::path>& scenario, std::optional<int> trials,
         std::optional<int> geometries, std::optional<std::uint64_t> seed,
         const std::vector<double>& sweep) {
        ExperimentSpec spec;
        spec.kind = parse_experiment_kind(kind);
        if (scenario) spec.scenario = load_scenario(*scenario);
        spec.trials = trials.value_or(spec.scenario.trials);
        spec.geometries = geometries.value_or(spec.scenario.geometries);
        spec.seed = seed.value_or(spec.scenario.seed);
        spec.out_dir = out_dir;
        spec.sweep = sweep;
        const ExperimentOutcome o = run_experiment(spec);
        return py::make_tuple(o.summary.dump(), o.all_converged);
      },
      py::arg("kind"), py::arg("out_dir"), py::arg("scenario") = std::nullopt,
      py::arg("trials") = std::nullopt, py::arg("geometries") = std::nullopt,
      py::arg("seed") = std::nullopt, py::arg("sweep") = std::vector<double>{});
}
