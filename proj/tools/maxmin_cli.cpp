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

// Command-line experiment runner. Exit status: 0 when every sub-solve
// converged, 1 when some did not, 2 on invalid input or I/O failure.

#include "maxmin/harness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

namespace {

struct Options {
  std::string scenario;
  std::string out = "out";
  std::optional<int> trials;
  std::optional<int> geometries;
  std::optional<std::uint64_t> seed;
  std::string sweep;
  std::optional<double> tol;
  std::optional<int> max_iter;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw maxmin::InvalidArgument("bad sweep entry: " + item);
    values.push_back(v);
  }
  return values;
}

void add_common(CLI::App* sub, Options& o, bool with_sweep) {
  sub->add_option("--scenario", o.scenario, "Scenario JSON file (defaults built in when omitted)")
      ->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  sub->add_option("--trials", o.trials, "Channel draws per geometry");
  sub->add_option("--geometries", o.geometries, "Independent user drops");
  sub->add_option("--seed", o.seed, "Base seed");
  sub->add_option("--tol", o.tol, "Stopping tolerance for every iteration");
  sub->add_option("--max-iter", o.max_iter, "Iteration cap of the finite solver");
  if (with_sweep) {
    sub->add_option("--sweep", o.sweep, "Comma-separated, ascending list")->required();
  }
}

maxmin::ExperimentSpec make_spec(maxmin::ExperimentKind kind, const Options& o) {
  maxmin::ExperimentSpec spec;
  spec.kind = kind;
  if (!o.scenario.empty()) spec.scenario = maxmin::load_scenario(o.scenario);
  auto& s = spec.scenario;
  if (o.tol) {
    s.tol = *o.tol;
    s.large_tol = *o.tol;
  }
  if (o.max_iter) s.max_iter = *o.max_iter;
  spec.trials = o.trials.value_or(s.trials);
  spec.geometries = o.geometries.value_or(s.geometries);
  spec.seed = o.seed.value_or(s.seed);
  spec.out_dir = o.out;
  spec.sweep = parse_list(o.sweep);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-min weighted SINR beamforming and power control experiments"};
  app.require_subcommand(1);

  Options opts;
  struct Entry {
    maxmin::ExperimentKind kind;
    const char* help;
    bool sweep;
  };
  const Entry entries[] = {
      {maxmin::ExperimentKind::kFiniteConvergence, "Per-iteration traces of the finite solver", false},
      {maxmin::ExperimentKind::kLargeConvergence, "Traces of the statistics-only iteration", false},
      {maxmin::ExperimentKind::kAsymptoticVsOptimal, "Asymptotic design versus the optimum", false},
      {maxmin::ExperimentKind::kConcentrationSweep, "SINR deviation from deterministic equivalents over N", true},
      {maxmin::ExperimentKind::kPowerSweep, "Optimal and asymptotic mean SINR over the power budget", true},
  };
  std::vector<std::pair<CLI::App*, maxmin::ExperimentKind>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(maxmin::to_string(e.kind), e.help);
    add_common(sub, opts, e.sweep);
    subs.emplace_back(sub, e.kind);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [sub, kind] : subs) {
      if (!sub->parsed()) continue;
      const auto outcome = maxmin::run_experiment(make_spec(kind, opts));
      for (const auto& f : outcome.files) std::cout << f.string() << '\n';
      if (!outcome.all_converged) {
        std::cerr << outcome.non_converged << " sub-solve(s) did not converge\n";
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
