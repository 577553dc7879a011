/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "frangine/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <utility>

#include "frangine/config.hpp"
#include "frangine/csv.hpp"
#include "frangine/errors.hpp"

namespace frangine::cli {

namespace {

namespace fs = std::filesystem;

/// An invocation problem detected before any simulation starts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string param;
  std::string grid;
  bool show_defaults = false;
};

sim::ScenarioConfig load(const Options& o) {
  auto config = o.config_path.empty() ? sim::ScenarioConfig{} : config::parse_config(o.config_path);
  if (o.seed) config.seed = *o.seed;
  if (o.trials) config.mc_trials = *o.trials;
  config.validate();
  return config;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    auto token = text.substr(start, comma - start);
    token.erase(0, token.find_first_not_of(' '));
    token.erase(token.find_last_not_of(' ') + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw UsageError("--grid: '" + token + "' is not a number");
    }
    grid.push_back(v);
    start = comma + 1;
  }
  return grid;
}

fs::path prepare_out(const Options& o) {
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageError("--out: cannot create directory '" + o.out_dir + "'");
  return dir;
}

/// Every file's content is built before the first write.
void write_all(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& files) {
  for (const auto& [name, content] : files) csv::write_atomic(dir / name, content);
}

void print_summary(const sim::MetricsReport& r, std::ostream& out) {
  out << std::setprecision(6);
  out << "architecture        " << sim::to_string(r.architecture) << "\n"
      << "nodes               hpn=" << r.n_hpn << " fap=" << r.n_fap << " fue=" << r.n_fue << "\n"
      << "requests            " << r.n_requests << "\n"
      << "d2d rate            " << r.spatial_average_rate.mean << " +- " << r.spatial_average_rate.half_width
      << " bit/s/Hz\n"
      << "cellular success    " << r.cellular_success_probability.value << " +- "
      << r.cellular_success_probability.half_width << "\n"
      << "d2d success         " << r.d2d_success_probability.value << " +- "
      << r.d2d_success_probability.half_width << "\n"
      << "edge hit ratio      " << r.hit_ratio_edge << "\n"
      << "clusters            " << r.partition.blocks.size() << " (mean size " << r.partition.mean_block_size()
      << ")\n"
      << "energy efficiency   " << r.energy_efficiency << " bit/s/Hz/W\n"
      << "fronthaul bits      " << r.load.fronthaul_bits << "\n"
      << "backhaul bits       " << r.load.backhaul_bits << "\n";
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto config = load(o);
  if (o.show_defaults) {
    out << config::emit_config(config);
  } else {
    out << "config ok" << (o.config_path.empty() ? " (defaults)" : ": " + o.config_path) << "\n";
  }
  return kExitOk;
}

int cmd_run(const Options& o, std::ostream& out) {
  const auto config = load(o);
  const auto dir = prepare_out(o);
  const auto report = sim::run_scenario(config);
  write_all(dir, {{"metrics.csv", csv::metrics_csv(std::span(&report, 1))},
                  {"ledger.csv", csv::ledger_csv(report.load)},
                  {"cache_trace.csv", csv::cache_trace_csv(report.cache_trace)},
                  {"clusters.csv", csv::clusters_csv(report.partition)},
                  {"subchannels.csv", csv::subchannels_csv(report.assignment)}});
  print_summary(report, out);
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.param.empty()) throw UsageError("sweep: --param is required");
  if (o.grid.empty()) throw UsageError("sweep: --grid is required");
  const auto config = load(o);
  const auto grid = parse_grid(o.grid);
  (void)sim::with_parameter(config, o.param, grid.front());
  const auto dir = prepare_out(o);
  const auto points = sim::sweep(config, o.param, grid);
  std::vector<sim::MetricsReport> reports;
  for (const auto& p : points) reports.push_back(p.report);
  write_all(dir, {{"sweep.csv", csv::sweep_csv(o.param, points)}, {"metrics.csv", csv::metrics_csv(reports)}});
  out << std::setprecision(6) << o.param << "  d2d_rate  cellular_success  d2d_success  edge_hit  energy_eff\n";
  for (const auto& p : points) {
    out << p.value << "  " << p.report.spatial_average_rate.mean << "  "
        << p.report.cellular_success_probability.value << "  " << p.report.d2d_success_probability.value << "  "
        << p.report.hit_ratio_edge << "  " << p.report.energy_efficiency << "\n";
  }
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto base = load(o);
  const auto dir = prepare_out(o);
  std::vector<sim::MetricsReport> reports;
  for (const auto arch : {sim::Architecture::CRAN, sim::Architecture::HCRAN, sim::Architecture::FRAN}) {
    auto config = base;
    config.architecture = arch;
    reports.push_back(sim::run_scenario(config));
  }
  write_all(dir, {{"metrics.csv", csv::metrics_csv(reports)}});

  out << std::left << std::setw(8) << "arch" << std::setw(18) << "fronthaul_bits" << std::setw(16) << "backhaul_bits"
      << std::setw(18) << "bbu_processed" << std::setw(18) << "edge_served" << std::setw(10) << "edge_hit"
      << "energy_eff\n";
  for (const auto& r : reports) {
    out << std::setw(8) << sim::to_string(r.architecture) << std::setw(18) << r.load.fronthaul_bits << std::setw(16)
        << r.load.backhaul_bits << std::setw(18) << r.load.bbu_processed_bits << std::setw(18)
        << r.load.edge_served_bits << std::setw(10) << std::setprecision(4) << r.hit_ratio_edge
        << r.energy_efficiency << "\n";
  }

  std::vector<const sim::MetricsReport*> order;
  for (const auto& r : reports) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* a, auto* b) { return a->load.fronthaul_bits < b->load.fronthaul_bits; });
  out << "fronthaul ordering: ";
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out << (order[i - 1]->load.fronthaul_bits == order[i]->load.fronthaul_bits ? " = " : " < ");
    out << sim::to_string(order[i]->architecture);
  }
  out << "\n";
  for (const auto& r : reports) {
    if (!r.load.conserved()) throw std::runtime_error(std::string("load conservation violated for ") +
                                                      sim::to_string(r.architecture));
  }
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fog radio access network simulator", "frangine"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "scenario config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "override the master seed");
    sub->add_option("--trials", o.trials, "override the Monte-Carlo trial count");
  };
  auto* run = app.add_subcommand("run", "run one scenario and write CSVs");
  auto* sweep = app.add_subcommand("sweep", "run one scenario per grid value");
  auto* compare = app.add_subcommand("compare-arch", "run CRAN, HCRAN and FRAN on matched seeds");
  auto* validate = app.add_subcommand("validate", "check a config without simulating");
  for (auto* sub : {run, sweep, compare, validate}) add_common(sub);
  for (auto* sub : {run, sweep, compare}) sub->add_option("--out", o.out_dir, "output directory");
  sweep->add_option("--param", o.param, "parameter name")
      ->check(CLI::IsMember(sim::sweep_parameters()));
  sweep->add_option("--grid", o.grid, "comma-separated values");
  validate->add_flag("--show-defaults", o.show_defaults, "print every key with its effective value");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: arguments: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*run) return cmd_run(o, out);
    if (*sweep) return cmd_sweep(o, out);
    return cmd_compare(o, out);
  } catch (const ParseError& e) {
    err << "error: config: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ValidationError& e) {
    err << "error: config: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const UnknownParameter& e) {
    err << "error: sweep: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const UsageError& e) {
    err << "error: arguments: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: simulation: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace frangine::cli
