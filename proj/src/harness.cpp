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

#include "maxmin/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace maxmin {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::uint64_t kChannelOffset = 1000000;

// Bumped whenever a column is added, removed or reinterpreted.
constexpr const char* kFiniteTraceSchema = "finite-trace/1";
constexpr const char* kLargeTraceSchema = "large-trace/1";
constexpr const char* kComparisonSchema = "comparison/1";
constexpr const char* kConcentrationSchema = "concentration/1";
constexpr const char* kPowerSweepSchema = "power-sweep/1";

using Row = std::vector<std::string>;

class CsvTable {
 public:
  explicit CsvTable(Row header) : header_(std::move(header)) {}

  void add(Row row) {
    if (row.size() != header_.size()) throw std::logic_error("csv row width mismatch");
    rows_.push_back(std::move(row));
  }

  void write(const fs::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    emit(out, header_);
    for (const auto& r : rows_) emit(out, r);
    if (!out) throw std::runtime_error("failed writing " + path.string());
  }

 private:
  static void emit(std::ostream& out, const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ',';
      out << r[i];
    }
    out << '\n';
  }

  Row header_;
  std::vector<Row> rows_;
};

std::string num(double v) { return format_number(v); }
std::string num(int v) { return std::to_string(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

void append_indexed(Row& header, const std::string& prefix, int n) {
  for (int m = 1; m <= n; ++m) header.push_back(prefix + std::to_string(m));
}

void append_values(Row& row, const RealVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(num(v[i]));
}

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string());
  }
}

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ordered_json header_json(const ExperimentSpec& spec, const NetworkConfig& config,
                         const char* schema) {
  ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["csv_schema"] = schema;
  j["seed"] = spec.seed;
  j["trials"] = spec.trials;
  j["geometries"] = spec.geometries;
  j["sweep"] = spec.sweep;
  j["config"] = config_to_json(config);
  j["scenario"] = scenario_to_json(spec.scenario);
  return j;
}

AlgorithmEOptions large_options(const Scenario& s) {
  AlgorithmEOptions o;
  o.tol = s.large_tol;
  o.max_iter = s.large_max_iter;
  return o;
}

ordered_json report_json(const OptimalityReport& r) {
  return {{"equalization_gap", r.equalization_gap},
          {"primal_budget_gap", r.primal_budget_gap},
          {"dual_budget_gap", r.dual_budget_gap},
          {"eigen_residual", r.eigen_residual},
          {"primal_spectral_gap", r.primal_spectral_gap},
          {"dual_spectral_gap", r.dual_spectral_gap},
          {"duality_gap", r.duality_gap},
          {"tolerance", r.tolerance},
          {"failures", r.failures}};
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// One optimal-vs-asymptotic trial, tagged with its seeds.
struct ComparisonTrial {
  int geometry = 0;
  int trial = 0;
  std::uint64_t channel_seed = 0;
  bool large_converged = false;
  TrialComparison cmp;
  [[nodiscard]] bool used() const { return large_converged && cmp.converged; }
};

// Runs every (geometry, trial) pair at the given budget. Shared by the
// comparison and the power sweep so both see identical draws.
std::vector<ComparisonTrial> comparison_trials(const Scenario& scenario, double power_budget,
                                               int geometries, int trials, std::uint64_t seed) {
  const NetworkConfig config = scenario.network(std::nullopt, std::nullopt, power_budget);
  std::vector<ComparisonTrial> out;
  for (int g = 0; g < geometries; ++g) {
    const Drop drop = make_drop(scenario, config.users_per_cell, geometry_seed(seed, g));
    std::optional<AsymptoticState> state;
    try {
      state = algorithm_e(drop.profile, config, large_options(scenario));
    } catch (const std::runtime_error&) {
      state.reset();
    }
    const bool large_ok = state && state->converged;
    for (int t = 0; t < trials; ++t) {
      ComparisonTrial ct;
      ct.geometry = g;
      ct.trial = t;
      ct.channel_seed = channel_seed(seed, g, t, trials);
      ct.large_converged = large_ok;
      if (state) {
        const auto ch = sample_channel(drop.profile, config.cells, config.antennas, ct.channel_seed);
        ct.cmp = compare_trial(ch, *state, config);
      }
      out.push_back(std::move(ct));
    }
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, res.ptr};
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kFiniteConvergence: return "finite-convergence";
    case ExperimentKind::kLargeConvergence: return "large-convergence";
    case ExperimentKind::kAsymptoticVsOptimal: return "asymptotic-vs-optimal";
    case ExperimentKind::kConcentrationSweep: return "concentration-sweep";
    case ExperimentKind::kPowerSweep: return "power-sweep";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (auto k : {ExperimentKind::kFiniteConvergence, ExperimentKind::kLargeConvergence,
                 ExperimentKind::kAsymptoticVsOptimal, ExperimentKind::kConcentrationSweep,
                 ExperimentKind::kPowerSweep}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown experiment kind: " + name);
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (geometries < 1) throw InvalidArgument("geometries must be >= 1");
  if (!std::is_sorted(sweep.begin(), sweep.end())) {
    throw InvalidArgument("sweep list must be sorted ascending");
  }
  for (double v : sweep) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("sweep values must be positive");
  }
  const bool needs_sweep =
      kind == ExperimentKind::kConcentrationSweep || kind == ExperimentKind::kPowerSweep;
  if (needs_sweep && sweep.empty()) throw InvalidArgument("sweep list must be non-empty");
  if (kind == ExperimentKind::kConcentrationSweep) {
    for (double v : sweep) {
      if (v != std::floor(v)) throw InvalidArgument("antenna counts must be integers");
    }
  }
}

std::uint64_t geometry_seed(std::uint64_t base, int geometry) {
  return base + static_cast<std::uint64_t>(geometry);
}

std::uint64_t channel_seed(std::uint64_t base, int geometry, int trial, int trials) {
  return base + kChannelOffset + static_cast<std::uint64_t>(geometry) * static_cast<std::uint64_t>(trials) +
         static_cast<std::uint64_t>(trial);
}

Drop make_drop(const Scenario& scenario, int users_per_cell, std::uint64_t seed) {
  Layout layout = generate_layout(scenario.geometry, scenario.cells, users_per_cell, seed);
  LargeScaleProfile profile = generate_large_scale(scenario.geometry, layout, seed);
  return {std::move(layout), std::move(profile)};
}

RealVector asymptotic_achieved_sinr(const ChannelRealization& channels,
                                    const AsymptoticState& state, const NetworkConfig& config) {
  const MvdrSolution mv = mvdr_all(channels, state.q_hat, config);
  const GainMatrix gm = build_gain(channels, mv.u);
  return primal_sinr(state.p_hat, gm, config);
}

TrialComparison compare_trial(const ChannelRealization& channels, const AsymptoticState& state,
                              const NetworkConfig& config) {
  TrialComparison out;
  try {
    const SolveResult r = algorithm_a(channels, config);
    out.tau_star = r.tau_star;
    out.iterations = r.iterations;
    out.converged = r.converged;
    out.achieved = asymptotic_achieved_sinr(channels, state, config).cwiseQuotient(config.priorities);
    out.achieved_mean = out.achieved.mean();
  } catch (const DegenerateBeamformer&) {
    out.converged = false;
  }
  return out;
}

ConcentrationRow concentration_point(const Scenario& scenario, int antennas, int trials,
                                     std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  ConcentrationRow row;
  row.antennas = antennas;
  row.users_per_cell = std::max(1, static_cast<int>(std::lround(scenario.load_factor * antennas)));
  row.trials = trials;
  const NetworkConfig config = scenario.network(row.users_per_cell, antennas);
  const Drop drop = make_drop(scenario, row.users_per_cell, geometry_seed(seed, 0));
  AsymptoticState st;
  try {
    st = algorithm_e(drop.profile, config, large_options(scenario));
  } catch (const std::runtime_error&) {
    return row;
  }
  row.converged = st.converged;
  const RealVector gd = gamma_dual(st.q_hat, drop.profile, config);
  const RealVector gp = gamma_primal(st.p_hat, st.q_hat, st.phi, st.phi_prime, drop.profile, config);

  std::vector<double> dev_d, dev_p, rel_d, rel_p;
  for (int t = 0; t < trials; ++t) {
    const auto ch = sample_channel(drop.profile, config.cells, antennas, channel_seed(seed, 0, t, trials));
    const MvdrSolution mv = mvdr_all(ch, st.q_hat, config);
    const RealVector sp = primal_sinr(st.p_hat, build_gain(ch, mv.u), config);
    for (int m = 0; m < config.users(); ++m) {
      dev_d.push_back(mv.dual_sinr[m] - gd[m]);
      dev_p.push_back(sp[m] - gp[m]);
      rel_d.push_back(std::abs(mv.dual_sinr[m] - gd[m]) / gd[m]);
      rel_p.push_back(std::abs(sp[m] - gp[m]) / gp[m]);
    }
  }
  auto mean_abs = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s / static_cast<double>(v.size());
  };
  row.dual_mean_abs_dev = mean_abs(dev_d);
  row.primal_mean_abs_dev = mean_abs(dev_p);
  row.dual_std = stddev(dev_d);
  row.primal_std = stddev(dev_p);
  row.dual_mean_rel_dev = mean(rel_d);
  row.primal_mean_rel_dev = mean(rel_p);
  return row;
}

PowerSweepRow power_sweep_point(const Scenario& scenario, double power_budget, int geometries,
                                int trials, std::uint64_t seed) {
  if (trials < 1 || geometries < 1) throw InvalidArgument("trials and geometries must be >= 1");
  PowerSweepRow row;
  row.power_budget = power_budget;
  std::vector<double> opt, asy, opt_db, asy_db, worst;
  for (const auto& ct : comparison_trials(scenario, power_budget, geometries, trials, seed)) {
    if (!ct.used()) {
      ++row.excluded;
      continue;
    }
    opt.push_back(ct.cmp.tau_star);
    asy.push_back(ct.cmp.achieved_mean);
    opt_db.push_back(10.0 * std::log10(ct.cmp.tau_star));
    asy_db.push_back(10.0 * ct.cmp.achieved.array().log10().mean());
    worst.push_back(ct.cmp.achieved.minCoeff());
  }
  row.used = static_cast<int>(opt.size());
  row.optimal_mean = mean(opt);
  row.asymptotic_mean = mean(asy);
  row.optimal_mean_db = mean(opt_db);
  row.asymptotic_mean_db = mean(asy_db);
  row.asymptotic_worst_mean = mean(worst);
  return row;
}

ExperimentOutcome run_finite_convergence(const ExperimentSpec& spec) {
  spec.validate();
  prepare_dir(spec.out_dir);
  const NetworkConfig config = spec.scenario.network();
  ExperimentOutcome out;
  ordered_json summary = header_json(spec, config, kFiniteTraceSchema);
  ordered_json runs = ordered_json::array();
  std::vector<std::pair<fs::path, CsvTable>> tables;

  for (int g = 0; g < spec.geometries; ++g) {
    const Drop drop = make_drop(spec.scenario, config.users_per_cell, geometry_seed(spec.seed, g));
    for (int t = 0; t < spec.trials; ++t) {
      const std::uint64_t cs = channel_seed(spec.seed, g, t, spec.trials);
      const auto ch = sample_channel(drop.profile, config.cells, config.antennas, cs);
      const SolveResult r = algorithm_a(ch, config);
      const OptimalityReport rep = verify_optimality(r, ch, config);

      Row header{"iteration"};
      append_indexed(header, "p_", config.users());
      append_indexed(header, "q_", config.users());
      append_indexed(header, "weighted_sinr_", config.users());
      for (const char* c : {"min_weighted_sinr", "max_weighted_sinr", "spread", "p_change", "q_change"}) {
        header.emplace_back(c);
      }
      CsvTable table(header);
      for (const auto& rec : r.trace) {
        Row row{num(rec.iteration)};
        append_values(row, rec.p);
        append_values(row, rec.q);
        append_values(row, rec.weighted_sinr);
        for (double v : {rec.min_weighted_sinr, rec.max_weighted_sinr, rec.spread, rec.p_change,
                         rec.q_change}) {
          row.push_back(num(v));
        }
        table.add(std::move(row));
      }
      const std::string name =
          "finite_trace_g" + std::to_string(g) + "_t" + std::to_string(t) + ".csv";
      tables.emplace_back(spec.out_dir / name, std::move(table));

      if (!r.converged) {
        out.all_converged = false;
        ++out.non_converged;
      }
      runs.push_back({{"geometry", g},
                      {"trial", t},
                      {"geometry_seed", geometry_seed(spec.seed, g)},
                      {"channel_seed", cs},
                      {"trace", name},
                      {"converged", r.converged},
                      {"iterations", r.iterations},
                      {"tau_star", r.tau_star},
                      {"p_star", to_std(r.p_star.values)},
                      {"q_star", to_std(r.q_star.values)},
                      {"optimality", report_json(rep)}});
    }
  }
  summary["converged"] = out.all_converged;
  summary["non_converged"] = out.non_converged;
  summary["runs"] = runs;

  for (const auto& [path, table] : tables) {
    table.write(path);
    out.files.push_back(path);
  }
  const fs::path sp = spec.out_dir / "finite_summary.json";
  write_json(sp, summary);
  out.files.push_back(sp);
  out.summary = std::move(summary);
  return out;
}

ExperimentOutcome run_large_convergence(const ExperimentSpec& spec) {
  spec.validate();
  prepare_dir(spec.out_dir);
  const NetworkConfig config = spec.scenario.network();
  ExperimentOutcome out;
  ordered_json summary = header_json(spec, config, kLargeTraceSchema);
  ordered_json runs = ordered_json::array();
  std::vector<std::pair<fs::path, CsvTable>> tables;

  for (int g = 0; g < spec.geometries; ++g) {
    const Drop drop = make_drop(spec.scenario, config.users_per_cell, geometry_seed(spec.seed, g));
    const AsymptoticState st = algorithm_e(drop.profile, config, large_options(spec.scenario));

    Row header{"iteration"};
    append_indexed(header, "q_hat_", config.users());
    append_indexed(header, "p_hat_", config.users());
    append_indexed(header, "weighted_sinr_", config.users());
    for (const char* c : {"varsigma", "zeta", "residual"}) header.emplace_back(c);
    CsvTable table(header);
    for (const auto& rec : st.trace) {
      Row row{num(rec.iteration)};
      append_values(row, rec.q_hat);
      append_values(row, rec.p_hat);
      append_values(row, rec.weighted_sinr);
      for (double v : {rec.varsigma, rec.zeta, rec.residual}) row.push_back(num(v));
      table.add(std::move(row));
    }
    const std::string name = "large_trace_g" + std::to_string(g) + ".csv";
    tables.emplace_back(spec.out_dir / name, std::move(table));

    if (!st.converged) {
      out.all_converged = false;
      ++out.non_converged;
    }
    runs.push_back({{"geometry", g},
                    {"geometry_seed", geometry_seed(spec.seed, g)},
                    {"trace", name},
                    {"converged", st.converged},
                    {"iterations", st.iterations},
                    {"varsigma", st.varsigma},
                    {"zeta", st.zeta},
                    {"phi_residual", st.phi_residual},
                    {"phi_prime_residual", st.phi_prime_residual},
                    {"dual_eigen_residual", st.dual_eigen_residual},
                    {"primal_eigen_residual", st.primal_eigen_residual},
                    {"q_hat", to_std(st.q_hat.values)},
                    {"p_hat", to_std(st.p_hat.values)}});
  }
  summary["converged"] = out.all_converged;
  summary["non_converged"] = out.non_converged;
  summary["runs"] = runs;

  for (const auto& [path, table] : tables) {
    table.write(path);
    out.files.push_back(path);
  }
  const fs::path sp = spec.out_dir / "large_summary.json";
  write_json(sp, summary);
  out.files.push_back(sp);
  out.summary = std::move(summary);
  return out;
}

ExperimentOutcome run_asymptotic_vs_optimal(const ExperimentSpec& spec) {
  spec.validate();
  prepare_dir(spec.out_dir);
  const NetworkConfig config = spec.scenario.network();
  ExperimentOutcome out;
  ordered_json summary = header_json(spec, config, kComparisonSchema);

  CsvTable trials_csv({"geometry", "trial", "channel_seed", "used", "optimal_converged",
                       "large_converged", "iterations", "tau_star", "achieved_mean",
                       "achieved_min", "achieved_max", "relative_gap"});
  CsvTable users_csv({"geometry", "trial", "user", "achieved_weighted_sinr", "tau_star"});

  std::vector<double> taus, means, gaps, ratios;
  const auto all = comparison_trials(spec.scenario, config.power_budget, spec.geometries,
                                     spec.trials, spec.seed);
  for (const auto& ct : all) {
    const auto& c = ct.cmp;
    const bool have = c.achieved.size() > 0;
    const double gap = have ? (c.achieved_mean - c.tau_star) / c.tau_star : std::nan("");
    trials_csv.add({num(ct.geometry), num(ct.trial), num(ct.channel_seed), num(int(ct.used())),
                    num(int(c.converged)), num(int(ct.large_converged)), num(c.iterations),
                    num(c.tau_star), num(have ? c.achieved_mean : std::nan("")),
                    num(have ? c.achieved.minCoeff() : std::nan("")),
                    num(have ? c.achieved.maxCoeff() : std::nan("")), num(gap)});
    if (have) {
      for (Eigen::Index m = 0; m < c.achieved.size(); ++m) {
        users_csv.add({num(ct.geometry), num(ct.trial), num(static_cast<int>(m + 1)),
                       num(c.achieved[m]), num(c.tau_star)});
      }
    }
    if (!ct.used()) {
      ++out.non_converged;
      continue;
    }
    taus.push_back(c.tau_star);
    means.push_back(c.achieved_mean);
    gaps.push_back(gap);
    for (Eigen::Index m = 0; m < c.achieved.size(); ++m) ratios.push_back(c.achieved[m] / c.tau_star);
  }
  out.all_converged = out.non_converged == 0;

  summary["converged"] = out.all_converged;
  summary["used"] = static_cast<int>(taus.size());
  summary["excluded"] = out.non_converged;
  summary["mean_tau_star"] = mean(taus);
  summary["mean_achieved"] = mean(means);
  summary["mean_relative_gap"] = mean(gaps);
  summary["aggregate_relative_gap"] = (mean(means) - mean(taus)) / mean(taus);
  summary["per_user_ratio_std"] = stddev(ratios);
  summary["per_user_ratio_min"] = ratios.empty() ? std::nan("") : *std::min_element(ratios.begin(), ratios.end());
  summary["per_user_ratio_max"] = ratios.empty() ? std::nan("") : *std::max_element(ratios.begin(), ratios.end());

  const fs::path tp = spec.out_dir / "comparison_trials.csv";
  const fs::path up = spec.out_dir / "comparison_users.csv";
  const fs::path sp = spec.out_dir / "comparison_summary.json";
  trials_csv.write(tp);
  users_csv.write(up);
  write_json(sp, summary);
  out.files = {tp, up, sp};
  out.summary = std::move(summary);
  return out;
}

ExperimentOutcome run_concentration_sweep(const ExperimentSpec& spec) {
  spec.validate();
  prepare_dir(spec.out_dir);
  ExperimentOutcome out;
  ordered_json summary = header_json(spec, spec.scenario.network(), kConcentrationSchema);
  CsvTable table({"antennas", "users_per_cell", "trials", "converged", "dual_mean_abs_dev",
                  "dual_std", "primal_mean_abs_dev", "primal_std", "dual_mean_rel_dev",
                  "primal_mean_rel_dev"});
  ordered_json rows = ordered_json::array();
  for (double nv : spec.sweep) {
    const int n = static_cast<int>(nv);
    const ConcentrationRow r = concentration_point(spec.scenario, n, spec.trials, spec.seed);
    if (!r.converged) {
      out.all_converged = false;
      ++out.non_converged;
    }
    table.add({num(r.antennas), num(r.users_per_cell), num(r.trials), num(int(r.converged)),
               num(r.dual_mean_abs_dev), num(r.dual_std), num(r.primal_mean_abs_dev),
               num(r.primal_std), num(r.dual_mean_rel_dev), num(r.primal_mean_rel_dev)});
    rows.push_back({{"antennas", r.antennas},
                    {"users_per_cell", r.users_per_cell},
                    {"converged", r.converged},
                    {"dual_mean_abs_dev", r.dual_mean_abs_dev},
                    {"dual_std", r.dual_std},
                    {"primal_mean_abs_dev", r.primal_mean_abs_dev},
                    {"primal_std", r.primal_std},
                    {"dual_mean_rel_dev", r.dual_mean_rel_dev},
                    {"primal_mean_rel_dev", r.primal_mean_rel_dev}});
  }
  summary["converged"] = out.all_converged;
  summary["excluded"] = out.non_converged;
  summary["rows"] = rows;

  const fs::path tp = spec.out_dir / "concentration.csv";
  const fs::path sp = spec.out_dir / "concentration_summary.json";
  table.write(tp);
  write_json(sp, summary);
  out.files = {tp, sp};
  out.summary = std::move(summary);
  return out;
}

ExperimentOutcome run_power_sweep(const ExperimentSpec& spec) {
  spec.validate();
  prepare_dir(spec.out_dir);
  ExperimentOutcome out;
  ordered_json summary = header_json(spec, spec.scenario.network(), kPowerSweepSchema);
  CsvTable table({"power_budget_w", "used", "excluded", "optimal_mean", "asymptotic_mean",
                  "optimal_mean_db", "asymptotic_mean_db", "asymptotic_worst_mean"});
  ordered_json rows = ordered_json::array();
  for (double p : spec.sweep) {
    const PowerSweepRow r = power_sweep_point(spec.scenario, p, spec.geometries, spec.trials, spec.seed);
    out.non_converged += r.excluded;
    table.add({num(r.power_budget), num(r.used), num(r.excluded), num(r.optimal_mean),
               num(r.asymptotic_mean), num(r.optimal_mean_db), num(r.asymptotic_mean_db),
               num(r.asymptotic_worst_mean)});
    rows.push_back({{"power_budget_w", r.power_budget},
                    {"used", r.used},
                    {"excluded", r.excluded},
                    {"optimal_mean", r.optimal_mean},
                    {"asymptotic_mean", r.asymptotic_mean},
                    {"optimal_mean_db", r.optimal_mean_db},
                    {"asymptotic_mean_db", r.asymptotic_mean_db},
                    {"asymptotic_worst_mean", r.asymptotic_worst_mean}});
  }
  out.all_converged = out.non_converged == 0;
  summary["converged"] = out.all_converged;
  summary["excluded"] = out.non_converged;
  summary["rows"] = rows;

  const fs::path tp = spec.out_dir / "power_sweep.csv";
  const fs::path sp = spec.out_dir / "power_sweep_summary.json";
  table.write(tp);
  write_json(sp, summary);
  out.files = {tp, sp};
  out.summary = std::move(summary);
  return out;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::kFiniteConvergence: return run_finite_convergence(spec);
    case ExperimentKind::kLargeConvergence: return run_large_convergence(spec);
    case ExperimentKind::kAsymptoticVsOptimal: return run_asymptotic_vs_optimal(spec);
    case ExperimentKind::kConcentrationSweep: return run_concentration_sweep(spec);
    case ExperimentKind::kPowerSweep: return run_power_sweep(spec);
  }
  throw InvalidArgument("unknown experiment kind");
}

}  // namespace maxmin
