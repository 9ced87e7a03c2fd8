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

#ifndef SSMKIT__CLI_HPP_
#define SSMKIT__CLI_HPP_

#include "ssmkit/classify.hpp"
#include "ssmkit/config.hpp"
#include "ssmkit/core.hpp"
#include "ssmkit/io.hpp"
#include "ssmkit/metrics.hpp"
#include "ssmkit/simulator.hpp"
#include "ssmkit/version.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace ssm
{

inline constexpr int kExitOk = 0;
/// The validate command found data violations (not a tool failure).
inline constexpr int kExitViolations = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitIo = 4;

namespace detail
{

template <class F>
int guarded(F && f)
{
  try {
    return f();
  } catch (const ConfigError & e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError & e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError & e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitParse;
  } catch (const IoError & e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

inline void require_valid_config(const RunConfig & cfg)
{
  const auto violations = validate_run_config(cfg);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto & v : violations) os << " [" << v << "]";
    throw ConfigError(os.str());
  }
}

inline std::filesystem::path prepare_out_dir(const RunConfig & cfg)
{
  const std::filesystem::path dir{cfg.out_dir};
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError(dir, "cannot create output directory: " + ec.message());
  }
  return dir;
}

inline std::vector<SeriesRecord> load_batch(const std::filesystem::path & input)
{
  const std::string content = read_file(input);
  std::istringstream is(content);
  return parse_batch_csv(is);
}

/// Cell pair (status, value) for one metric outcome; the value cell is empty
/// unless a value is present.
inline void csv_metric_cells(std::ostream & os, const MetricOutcome & m)
{
  os << ',' << to_string(m.status) << ',';
  if (m.has_value()) os << format_double(*m.value);
}

inline void json_metric_cells(
  nlohmann::json & row, const std::string & prefix, const MetricOutcome & m)
{
  row[prefix + "_status"] = to_string(m.status);
  row[prefix + "_value"] = m.has_value() ? nlohmann::json(*m.value) : nlohmann::json(nullptr);
}

}  // namespace detail

/// Known metric table selections.
inline const std::vector<std::string> & metric_names()
{
  static const std::vector<std::string> names{"ttc", "mttc", "attc", "thw",
                                              "tts", "dss",  "adss"};
  return names;
}

/// Generates the configured batch and writes it as `batch.csv` plus a
/// `batch.meta.json` sidecar recording config, seed, RNG algorithm, and tool
/// version. Both files are written atomically; identical configs produce
/// byte-identical files.
inline int cmd_simulate(const RunConfig & cfg)
{
  return detail::guarded([&]() {
    detail::require_valid_config(cfg);
    const auto dir = detail::prepare_out_dir(cfg);

    const ScenarioBatch batch = generate_batch(cfg.scenario);
    std::ostringstream csv;
    emit_batch_csv(csv, batch.trajectories);
    write_file_atomic(dir / "batch.csv", csv.str());

    nlohmann::json meta;
    meta["tool"] = "ssmkit";
    meta["version"] = kVersionString;
    meta["rng_algorithm"] = kRngAlgorithm;
    meta["seed"] = cfg.scenario.seed;
    meta["n_series"] = cfg.scenario.n_series;
    meta["n_points"] = cfg.scenario.n_points;
    meta["config"] = run_config_to_json(cfg);
    write_file_atomic(dir / "batch.meta.json", meta.dump(2) + "\n");

    std::cout << "wrote " << (dir / "batch.csv").string() << " ("
              << batch.trajectories.size() << " series) and "
              << (dir / "batch.meta.json").string() << '\n';
    return kExitOk;
  });
}

/// Evaluates the selected metrics on every sample of the input table and
/// writes a per-sample metric table (`metrics.csv` or `metrics.json`).
inline int cmd_metrics(const RunConfig & cfg, const std::string & input, const std::string & metric)
{
  return detail::guarded([&]() {
    detail::require_valid_config(cfg);
    std::vector<std::string> selected;
    if (metric == "all") {
      selected = metric_names();
    } else if (
      std::find(metric_names().begin(), metric_names().end(), metric) != metric_names().end()) {
      selected = {metric};
    } else {
      throw ConfigError("unknown metric '" + metric + "'");
    }
    const auto records = detail::load_batch(input);
    const auto dir = detail::prepare_out_dir(cfg);

    const bool json_out = cfg.format == "json";
    std::ostringstream csv;
    nlohmann::json rows = nlohmann::json::array();

    if (!json_out) {
      csv << "series_id,t";
      for (const auto & name : selected) {
        csv << ',' << name << "_status," << name << "_value";
        if (name == "attc") csv << ",attc_case";
        if (name == "tts") csv << ",tts_p_dangerous,tts_p_attentive,tts_p_gentle,tts_critical";
      }
      csv << '\n';
    }

    for (const auto & record : records) {
      const auto & samples = record.trajectory.samples;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const PairSample & s = samples[i];
        std::ostringstream line;
        nlohmann::json row;
        if (json_out) {
          row["series_id"] = record.id;
          row["t"] = s.t;
        } else {
          line << record.id << ',' << format_double(s.t);
        }
        for (const auto & name : selected) {
          if (name == "ttc") {
            const auto m = ttc(s, cfg.env);
            json_out ? detail::json_metric_cells(row, name, m)
                     : detail::csv_metric_cells(line, m);
          } else if (name == "mttc") {
            const auto m = mttc(s, cfg.env);
            json_out ? detail::json_metric_cells(row, name, m)
                     : detail::csv_metric_cells(line, m);
          } else if (name == "attc") {
            const std::span<const PairSample> window(samples.data(), i + 1);
            const auto [m, sel] = attc(window, cfg.env);
            if (json_out) {
              detail::json_metric_cells(row, name, m);
              row["attc_case"] = to_string(sel.selected);
            } else {
              detail::csv_metric_cells(line, m);
              line << ',' << to_string(sel.selected);
            }
          } else if (name == "thw") {
            const auto m = thw(s, cfg.env);
            json_out ? detail::json_metric_cells(row, name, m)
                     : detail::csv_metric_cells(line, m);
          } else if (name == "tts") {
            const auto t = tts(s, cfg.env);
            if (json_out) {
              row["tts_status"] = t ? "value" : "undefined";
              row["tts_p_dangerous"] = t ? nlohmann::json(t->p_dangerous) : nullptr;
              row["tts_p_attentive"] = t ? nlohmann::json(t->p_attentive) : nullptr;
              row["tts_p_gentle"] = t ? nlohmann::json(t->p_gentle) : nullptr;
              row["tts_critical"] = t ? nlohmann::json(t->critical) : nullptr;
            } else {
              line << ',' << (t ? "value" : "undefined") << ',';
              if (t) line << format_double(t->p_dangerous);
              line << ',';
              if (t) line << format_double(t->p_attentive);
              line << ',';
              if (t) line << format_double(t->p_gentle);
              line << ',';
              if (t) line << (t->critical ? '1' : '0');
            }
          } else if (name == "dss") {
            const auto m = dss(s, cfg.env);
            json_out ? detail::json_metric_cells(row, name, m)
                     : detail::csv_metric_cells(line, m);
          } else if (name == "adss") {
            const auto m = adss(s, cfg.env);
            json_out ? detail::json_metric_cells(row, name, m)
                     : detail::csv_metric_cells(line, m);
          }
        }
        if (json_out) {
          rows.push_back(std::move(row));
        } else {
          csv << line.str() << '\n';
        }
      }
    }

    const auto out_path = dir / (json_out ? "metrics.json" : "metrics.csv");
    write_file_atomic(out_path, json_out ? rows.dump(2) + "\n" : csv.str());
    std::cout << "wrote " << out_path.string() << '\n';
    return kExitOk;
  });
}

namespace detail
{

inline nlohmann::json verdict_to_json(const std::uint64_t id, const ScenarioVerdict & v)
{
  nlohmann::json j;
  j["series_id"] = id;
  j["critical"] = v.critical;
  j["first_critical_index"] =
    v.first_critical_index ? nlohmann::json(*v.first_critical_index) : nlohmann::json(nullptr);
  std::size_t n_critical_points = 0;
  for (const auto & p : v.points) {
    if (p.critical) ++n_critical_points;
  }
  j["n_critical_points"] = n_critical_points;
  return j;
}

}  // namespace detail

/// Classifies every series of the input table and writes a per-series
/// verdict table plus a `report.json` batch summary.
inline int cmd_classify(const RunConfig & cfg, const std::string & input)
{
  return detail::guarded([&]() {
    detail::require_valid_config(cfg);
    const auto records = detail::load_batch(input);
    const auto dir = detail::prepare_out_dir(cfg);

    std::size_t n_critical = 0;
    std::vector<ScenarioVerdict> verdicts;
    verdicts.reserve(records.size());
    for (const auto & record : records) {
      verdicts.push_back(classify_scenario(record.trajectory, cfg.env, cfg.classifier));
      if (verdicts.back().critical) ++n_critical;
    }

    const bool json_out = cfg.format == "json";
    std::string table_name = json_out ? "verdicts.json" : "verdicts.csv";
    if (json_out) {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t i = 0; i < records.size(); ++i) {
        rows.push_back(detail::verdict_to_json(records[i].id, verdicts[i]));
      }
      write_file_atomic(dir / table_name, rows.dump(2) + "\n");
    } else {
      std::ostringstream csv;
      csv << "series_id,critical,first_critical_index,n_critical_points\n";
      for (std::size_t i = 0; i < records.size(); ++i) {
        const auto & v = verdicts[i];
        std::size_t n_points = 0;
        for (const auto & p : v.points) {
          if (p.critical) ++n_points;
        }
        csv << records[i].id << ',' << (v.critical ? '1' : '0') << ',';
        if (v.first_critical_index) csv << *v.first_critical_index;
        csv << ',' << n_points << '\n';
      }
      write_file_atomic(dir / table_name, csv.str());
    }

    nlohmann::json report;
    report["tool"] = "ssmkit";
    report["version"] = kVersionString;
    report["classifier"] = to_string(cfg.classifier);
    report["n_total"] = records.size();
    report["n_critical"] = n_critical;
    report["critical_fraction"] =
      records.empty() ? 0.0 : static_cast<double>(n_critical) / static_cast<double>(records.size());
    report["seed"] = cfg.scenario.seed;
    report["config"] = run_config_to_json(cfg);
    nlohmann::json scenarios = nlohmann::json::array();
    for (std::size_t i = 0; i < records.size(); ++i) {
      scenarios.push_back(detail::verdict_to_json(records[i].id, verdicts[i]));
    }
    report["scenarios"] = std::move(scenarios);
    write_file_atomic(dir / "report.json", report.dump(2) + "\n");

    std::cout << "wrote " << (dir / table_name).string() << " and "
              << (dir / "report.json").string() << " (" << n_critical << '/' << records.size()
              << " critical)\n";
    return kExitOk;
  });
}

/// Writes plot-ready long-format data for selected series: per sample the
/// leader-minus-follower differences in position, speed, and acceleration,
/// plus the both-braking and critical flags. With `exemplars` set, the first
/// critical and first non-critical series are selected automatically. An
/// empty selection yields a header-only file.
inline int cmd_report(
  const RunConfig & cfg, const std::string & input, std::vector<std::uint64_t> series_ids,
  const bool exemplars)
{
  return detail::guarded([&]() {
    detail::require_valid_config(cfg);
    const auto records = detail::load_batch(input);
    const auto dir = detail::prepare_out_dir(cfg);

    std::vector<ScenarioVerdict> verdicts;
    verdicts.reserve(records.size());
    for (const auto & record : records) {
      verdicts.push_back(classify_scenario(record.trajectory, cfg.env, cfg.classifier));
    }

    if (exemplars) {
      std::optional<std::uint64_t> first_critical;
      std::optional<std::uint64_t> first_non_critical;
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (verdicts[i].critical && !first_critical) first_critical = records[i].id;
        if (!verdicts[i].critical && !first_non_critical) first_non_critical = records[i].id;
      }
      if (first_critical) series_ids.push_back(*first_critical);
      if (first_non_critical) series_ids.push_back(*first_non_critical);
    }
    {
      std::vector<std::uint64_t> unique;
      for (const auto id : series_ids) {
        if (std::find(unique.begin(), unique.end(), id) == unique.end()) unique.push_back(id);
      }
      series_ids = std::move(unique);
    }

    std::ostringstream csv;
    csv << "series_id,t,dx,dv,da,both_braking,critical\n";
    for (const auto id : series_ids) {
      std::size_t index = records.size();
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].id == id) {
          index = i;
          break;
        }
      }
      if (index == records.size()) {
        throw ConfigError("unknown series id " + std::to_string(id));
      }
      const auto & samples = records[index].trajectory.samples;
      const auto & points = verdicts[index].points;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const PairSample & s = samples[i];
        csv << id << ',' << format_double(s.t) << ','
            << format_double(s.leader.x - s.follower.x) << ','
            << format_double(s.leader.v - s.follower.v) << ','
            << format_double(s.leader.a - s.follower.a) << ','
            << (points[i].both_braking ? '1' : '0') << ',' << (points[i].critical ? '1' : '0')
            << '\n';
      }
    }
    write_file_atomic(dir / "plot_data.csv", csv.str());
    std::cout << "wrote " << (dir / "plot_data.csv").string() << " (" << series_ids.size()
              << " series)\n";
    return kExitOk;
  });
}

/// Checks the input table against the trajectory invariants and prints every
/// violation. Returns kExitViolations when any were found.
inline int cmd_validate(const RunConfig & cfg, const std::string & input)
{
  (void)cfg;
  return detail::guarded([&]() {
    const auto records = detail::load_batch(input);
    std::size_t n_violations = 0;
    for (const auto & record : records) {
      for (const auto & v : validate_trajectory(record.trajectory)) {
        std::cout << "series " << record.id << " sample " << v.index << ": " << v.message
                  << '\n';
        ++n_violations;
      }
    }
    if (n_violations > 0) {
      std::cout << n_violations << " violation(s) found\n";
      return kExitViolations;
    }
    std::cout << "ok: " << records.size() << " series validate clean\n";
    return kExitOk;
  });
}

}  // namespace ssm

#endif  // SSMKIT__CLI_HPP_
