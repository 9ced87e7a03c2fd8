// Copyright 2026 The ssmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssmkit/cli.hpp"
#include "ssmkit/config.hpp"
#include "ssmkit/version.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace
{

/// Options shared by every subcommand. Command-line flags override the
/// config file, which overrides built-in defaults.
struct CommonOptions
{
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::string classifier;
  std::uint64_t seed{0};
  int n_series{0};

  CLI::Option * config_opt{nullptr};
  CLI::Option * out_opt{nullptr};
  CLI::Option * format_opt{nullptr};
  CLI::Option * classifier_opt{nullptr};
  CLI::Option * seed_opt{nullptr};
  CLI::Option * n_series_opt{nullptr};
};

void add_config_option(CLI::App * cmd, CommonOptions & opts)
{
  opts.config_opt =
    cmd->add_option("--config", opts.config_path, "JSON config file (overrides defaults)");
}

void add_out_option(CLI::App * cmd, CommonOptions & opts)
{
  opts.out_opt = cmd->add_option("--out", opts.out_dir, "Output directory (default '.')");
}

void add_format_option(CLI::App * cmd, CommonOptions & opts)
{
  opts.format_opt = cmd->add_option("--format", opts.format, "Table output format: csv or json");
}

void add_classifier_option(CLI::App * cmd, CommonOptions & opts)
{
  opts.classifier_opt =
    cmd->add_option("--classifier", opts.classifier, "Verdict backend: adss or tts");
}

/// Builds the effective run configuration from defaults, then the config
/// file (if given), then explicit command-line flags.
ssm::RunConfig resolve_config(const CommonOptions & opts)
{
  ssm::RunConfig cfg;
  if (opts.config_opt != nullptr && opts.config_opt->count() > 0) {
    cfg = ssm::load_run_config(opts.config_path);
  }
  if (opts.seed_opt != nullptr && opts.seed_opt->count() > 0) {
    cfg.scenario.seed = opts.seed;
  }
  if (opts.n_series_opt != nullptr && opts.n_series_opt->count() > 0) {
    cfg.scenario.n_series = opts.n_series;
  }
  if (opts.out_opt != nullptr && opts.out_opt->count() > 0) {
    cfg.out_dir = opts.out_dir;
  }
  if (opts.format_opt != nullptr && opts.format_opt->count() > 0) {
    if (opts.format != "csv" && opts.format != "json") {
      throw ssm::ConfigError("format must be 'csv' or 'json'");
    }
    cfg.format = opts.format;
  }
  if (opts.classifier_opt != nullptr && opts.classifier_opt->count() > 0) {
    if (opts.classifier == "adss") {
      cfg.classifier = ssm::ClassifierBackend::Adss;
    } else if (opts.classifier == "tts") {
      cfg.classifier = ssm::ClassifierBackend::Tts;
    } else {
      throw ssm::ConfigError("classifier must be 'adss' or 'tts'");
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{std::string("ssmkit ") + ssm::kVersionString +
               " - longitudinal-driving safety indicator toolkit"};
  app.require_subcommand(1);

  CommonOptions sim_opts;
  auto * simulate = app.add_subcommand(
    "simulate", "Generate a synthetic follow-up-drive batch (batch.csv + batch.meta.json)");
  add_config_option(simulate, sim_opts);
  add_out_option(simulate, sim_opts);
  sim_opts.seed_opt = simulate->add_option("--seed", sim_opts.seed, "Master RNG seed");
  sim_opts.n_series_opt =
    simulate->add_option("--n-series", sim_opts.n_series, "Number of series to generate");
  std::string grids_mode{"default"};
  simulate->add_option(
    "--grids", grids_mode,
    "Variation grids: 'default' or 'zero' (collapse both grids to {0} for a fully "
    "deterministic trajectory)");

  CommonOptions met_opts;
  std::string metrics_input;
  std::string metric_sel{"all"};
  auto * metrics_cmd =
    app.add_subcommand("metrics", "Evaluate indicator metrics per sample (metrics.csv/.json)");
  metrics_cmd->add_option("input", metrics_input, "Trajectory CSV file")->required();
  add_config_option(metrics_cmd, met_opts);
  add_out_option(metrics_cmd, met_opts);
  add_format_option(metrics_cmd, met_opts);
  metrics_cmd->add_option(
    "--metric", metric_sel, "Metric to evaluate (ttc, mttc, attc, thw, tts, dss, adss) or 'all'");

  CommonOptions cls_opts;
  std::string classify_input;
  auto * classify_cmd = app.add_subcommand(
    "classify", "Classify series as safety-critical (verdicts table + report.json)");
  classify_cmd->add_option("input", classify_input, "Trajectory CSV file")->required();
  add_config_option(classify_cmd, cls_opts);
  add_out_option(classify_cmd, cls_opts);
  add_format_option(classify_cmd, cls_opts);
  add_classifier_option(classify_cmd, cls_opts);

  CommonOptions rep_opts;
  std::string report_input;
  std::vector<std::uint64_t> series_ids;
  bool exemplars = false;
  auto * report_cmd = app.add_subcommand(
    "report", "Emit plot-ready difference series for selected scenarios (plot_data.csv)");
  report_cmd->add_option("input", report_input, "Trajectory CSV file")->required();
  add_config_option(report_cmd, rep_opts);
  add_out_option(report_cmd, rep_opts);
  add_classifier_option(report_cmd, rep_opts);
  report_cmd->add_option("--series", series_ids, "Series ids to include (repeatable)");
  report_cmd->add_flag(
    "--exemplars", exemplars, "Auto-select the first critical and first non-critical series");

  CommonOptions val_opts;
  std::string validate_input;
  auto * validate_cmd =
    app.add_subcommand("validate", "Check a trajectory file against the data invariants");
  validate_cmd->add_option("input", validate_input, "Trajectory CSV file")->required();
  add_config_option(validate_cmd, val_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      ssm::RunConfig cfg = resolve_config(sim_opts);
      if (grids_mode == "zero") {
        cfg.scenario.v0_var_grid = {0.0};
        cfg.scenario.a_brake_var_grid = {0.0};
      } else if (grids_mode != "default") {
        throw ssm::ConfigError("--grids must be 'default' or 'zero'");
      }
      return ssm::cmd_simulate(cfg);
    }
    if (metrics_cmd->parsed()) {
      return ssm::cmd_metrics(resolve_config(met_opts), metrics_input, metric_sel);
    }
    if (classify_cmd->parsed()) {
      return ssm::cmd_classify(resolve_config(cls_opts), classify_input);
    }
    if (report_cmd->parsed()) {
      return ssm::cmd_report(resolve_config(rep_opts), report_input, series_ids, exemplars);
    }
    if (validate_cmd->parsed()) {
      return ssm::cmd_validate(resolve_config(val_opts), validate_input);
    }
  } catch (const ssm::ConfigError & e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ssm::kExitConfig;
  } catch (const ssm::IoError & e) {
    std::cerr << "io error: " << e.what() << '\n';
    return ssm::kExitIo;
  }
  return ssm::kExitOk;
}
