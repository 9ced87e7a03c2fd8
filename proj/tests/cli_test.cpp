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
#include "ssmkit/io.hpp"
#include "ssmkit/simulator.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace
{

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string & name)
{
  const fs::path dir = fs::path(::testing::TempDir()) / ("ssmkit_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> read_lines(const fs::path & path)
{
  std::istringstream is(ssm::read_file(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split(const std::string & line)
{
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

ssm::RunConfig small_config(const fs::path & out, const int n_series = 5)
{
  ssm::RunConfig cfg;
  cfg.scenario.n_series = n_series;
  cfg.out_dir = out.string();
  return cfg;
}

// Two hand-written samples: one closing pair (gap 18.7 m, closing at
// 2.5 m/s) and one at matched speeds.
std::string two_sample_csv()
{
  std::ostringstream os;
  os << ssm::kTrajectoryCsvHeader << '\n'
     << "0,0,23.3,20,0,0,22.5,0\n"
     << "0,0.25,30,20,0,5,20,0\n";
  return os.str();
}

TEST(CmdSimulate, WritesBatchAndMetadata)
{
  const auto dir = fresh_dir("simulate");
  const auto cfg = small_config(dir);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);

  const auto lines = read_lines(dir / "batch.csv");
  ASSERT_EQ(lines.size(), 51u);  // header + 5 series x 10 samples
  EXPECT_EQ(lines[0], ssm::kTrajectoryCsvHeader);

  const auto meta = nlohmann::json::parse(ssm::read_file(dir / "batch.meta.json"));
  EXPECT_EQ(meta["tool"], "ssmkit");
  EXPECT_EQ(meta["rng_algorithm"], "splitmix64");
  EXPECT_EQ(meta["seed"].get<std::uint64_t>(), 42u);
  EXPECT_EQ(meta["n_series"].get<int>(), 5);
  EXPECT_EQ(meta["n_points"].get<int>(), 10);
  EXPECT_DOUBLE_EQ(meta["config"]["mu"].get<double>(), 0.8);
}

TEST(CmdSimulate, RerunsAreByteIdentical)
{
  const auto dir = fresh_dir("simulate_repro");
  const auto cfg = small_config(dir);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  const std::string batch1 = ssm::read_file(dir / "batch.csv");
  const std::string meta1 = ssm::read_file(dir / "batch.meta.json");
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  EXPECT_EQ(ssm::read_file(dir / "batch.csv"), batch1);
  EXPECT_EQ(ssm::read_file(dir / "batch.meta.json"), meta1);
}

TEST(CmdSimulate, OutputMatchesLibraryGeneration)
{
  const auto dir = fresh_dir("simulate_match");
  const auto cfg = small_config(dir);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);

  std::istringstream is(ssm::read_file(dir / "batch.csv"));
  const auto records = ssm::parse_batch_csv(is);
  const auto batch = ssm::generate_batch(cfg.scenario);
  ASSERT_EQ(records.size(), batch.trajectories.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t k = 0; k < batch.trajectories[i].size(); ++k) {
      EXPECT_EQ(records[i].trajectory[k].follower.x, batch.trajectories[i][k].follower.x);
      EXPECT_EQ(records[i].trajectory[k].leader.v, batch.trajectories[i][k].leader.v);
    }
  }
}

TEST(CmdSimulate, InvalidConfigIsRejected)
{
  const auto dir = fresh_dir("simulate_bad");
  auto cfg = small_config(dir);
  cfg.env.mu = 5.0;
  EXPECT_EQ(ssm::cmd_simulate(cfg), ssm::kExitConfig);
  EXPECT_FALSE(fs::exists(dir / "batch.csv"));
}

TEST(CmdMetrics, SingleMetricTable)
{
  const auto dir = fresh_dir("metrics_single");
  const auto cfg = small_config(dir);
  const auto input = dir / "input.csv";
  ssm::write_file_atomic(input, two_sample_csv());

  ASSERT_EQ(ssm::cmd_metrics(cfg, input.string(), "ttc"), ssm::kExitOk);
  const auto lines = read_lines(dir / "metrics.csv");
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "series_id,t,ttc_status,ttc_value");

  const auto closing = split(lines[1]);
  ASSERT_EQ(closing.size(), 4u);
  EXPECT_EQ(closing[2], "value");
  EXPECT_NEAR(ssm::parse_double_field(closing[3], 0, "ttc"), 7.48, 1e-12);

  const auto matched = split(lines[2]);
  EXPECT_EQ(matched[2], "not-closing");
  EXPECT_TRUE(matched[3].empty());
}

TEST(CmdMetrics, AllMetricsTable)
{
  const auto dir = fresh_dir("metrics_all");
  const auto cfg = small_config(dir, 3);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  ASSERT_EQ(ssm::cmd_metrics(cfg, (dir / "batch.csv").string(), "all"), ssm::kExitOk);

  const auto lines = read_lines(dir / "metrics.csv");
  ASSERT_EQ(lines.size(), 31u);
  for (const char * column :
       {"ttc_status", "mttc_status", "attc_status", "attc_case", "thw_status", "tts_p_dangerous",
        "tts_critical", "dss_status", "adss_status"}) {
    EXPECT_NE(lines[0].find(column), std::string::npos) << column;
  }
}

TEST(CmdMetrics, UnknownMetricIsRejected)
{
  const auto dir = fresh_dir("metrics_bad");
  const auto cfg = small_config(dir);
  const auto input = dir / "input.csv";
  ssm::write_file_atomic(input, two_sample_csv());
  EXPECT_EQ(ssm::cmd_metrics(cfg, input.string(), "fancy"), ssm::kExitConfig);
}

TEST(CmdMetrics, JsonFormat)
{
  const auto dir = fresh_dir("metrics_json");
  auto cfg = small_config(dir, 2);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  cfg.format = "json";
  ASSERT_EQ(ssm::cmd_metrics(cfg, (dir / "batch.csv").string(), "all"), ssm::kExitOk);

  const auto rows = nlohmann::json::parse(ssm::read_file(dir / "metrics.json"));
  ASSERT_TRUE(rows.is_array());
  ASSERT_EQ(rows.size(), 20u);
  EXPECT_EQ(rows[0]["series_id"].get<std::uint64_t>(), 0u);
  EXPECT_TRUE(rows[0].contains("ttc_status"));
  EXPECT_TRUE(rows[0].contains("attc_case"));
  EXPECT_TRUE(rows[0].contains("tts_p_dangerous"));
}

TEST(CmdClassify, WritesVerdictsAndReport)
{
  const auto dir = fresh_dir("classify");
  const auto cfg = small_config(dir);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  ASSERT_EQ(ssm::cmd_classify(cfg, (dir / "batch.csv").string()), ssm::kExitOk);

  const auto lines = read_lines(dir / "verdicts.csv");
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "series_id,critical,first_critical_index,n_critical_points");

  const auto report = nlohmann::json::parse(ssm::read_file(dir / "report.json"));
  EXPECT_EQ(report["n_total"].get<std::size_t>(), 5u);
  EXPECT_EQ(report["classifier"], "adss");
  ASSERT_EQ(report["scenarios"].size(), 5u);
  std::size_t counted = 0;
  for (const auto & s : report["scenarios"]) {
    if (s["critical"].get<bool>()) ++counted;
  }
  EXPECT_EQ(report["n_critical"].get<std::size_t>(), counted);
}

TEST(CmdClassify, JsonVerdictTable)
{
  const auto dir = fresh_dir("classify_json");
  auto cfg = small_config(dir);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  cfg.format = "json";
  ASSERT_EQ(ssm::cmd_classify(cfg, (dir / "batch.csv").string()), ssm::kExitOk);
  const auto rows = nlohmann::json::parse(ssm::read_file(dir / "verdicts.json"));
  ASSERT_TRUE(rows.is_array());
  EXPECT_EQ(rows.size(), 5u);
}

TEST(CmdReport, SelectedSeriesPlotData)
{
  const auto dir = fresh_dir("report_select");
  const auto cfg = small_config(dir);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  ASSERT_EQ(ssm::cmd_report(cfg, (dir / "batch.csv").string(), {1}, false), ssm::kExitOk);

  const auto lines = read_lines(dir / "plot_data.csv");
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], "series_id,t,dx,dv,da,both_braking,critical");

  const auto batch = ssm::generate_batch(cfg.scenario);
  const auto fields = split(lines[1]);
  ASSERT_EQ(fields.size(), 7u);
  EXPECT_EQ(fields[0], "1");
  const auto & s = batch.trajectories[1][0];
  EXPECT_EQ(ssm::parse_double_field(fields[2], 0, "dx"), s.leader.x - s.follower.x);
  EXPECT_EQ(ssm::parse_double_field(fields[3], 0, "dv"), s.leader.v - s.follower.v);
}

TEST(CmdReport, ExemplarsPickOneSeriesPerVerdictClass)
{
  const auto dir = fresh_dir("report_exemplars");
  const auto cfg = small_config(dir);

  // A batch with one clearly non-critical and one clearly critical series.
  std::ostringstream os;
  os << ssm::kTrajectoryCsvHeader << '\n'
     << "0,0,54.6,20,0,0,20,0\n"
     << "0,0.25,59.6,20,0,5,20,0\n"
     << "1,0,54.6,20,0,0,20,0\n"
     << "1,0.25,8.6,20,-7,0,22,-7\n";
  const auto input = dir / "mixed.csv";
  ssm::write_file_atomic(input, os.str());

  ASSERT_EQ(ssm::cmd_report(cfg, input.string(), {}, true), ssm::kExitOk);
  const auto lines = read_lines(dir / "plot_data.csv");
  ASSERT_EQ(lines.size(), 5u);  // header + 2 series x 2 samples
  EXPECT_EQ(split(lines[1])[0], "1");  // critical exemplar listed first
  EXPECT_EQ(split(lines[3])[0], "0");
  EXPECT_EQ(split(lines[4])[6], "0");  // non-critical series carries flag 0
  EXPECT_EQ(split(lines[2])[6], "1");  // the critical sample carries flag 1
}

TEST(CmdReport, UnknownSeriesIdIsRejected)
{
  const auto dir = fresh_dir("report_bad");
  const auto cfg = small_config(dir);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  EXPECT_EQ(ssm::cmd_report(cfg, (dir / "batch.csv").string(), {99}, false), ssm::kExitConfig);
}

TEST(CmdReport, EmptySelectionYieldsHeaderOnly)
{
  const auto dir = fresh_dir("report_empty");
  const auto cfg = small_config(dir);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  ASSERT_EQ(ssm::cmd_report(cfg, (dir / "batch.csv").string(), {}, false), ssm::kExitOk);
  const auto lines = read_lines(dir / "plot_data.csv");
  ASSERT_EQ(lines.size(), 1u);
}

TEST(CmdValidate, ExitCodesSignalProblemsPrecisely)
{
  const auto dir = fresh_dir("validate");
  const auto cfg = small_config(dir);
  ASSERT_EQ(ssm::cmd_simulate(cfg), ssm::kExitOk);
  EXPECT_EQ(ssm::cmd_validate(cfg, (dir / "batch.csv").string()), ssm::kExitOk);

  // Semantic violation: a non-finite speed.
  const auto corrupt = dir / "corrupt.csv";
  ssm::write_file_atomic(
    corrupt, std::string(ssm::kTrajectoryCsvHeader) + "\n0,0,20,22,0,0,nan,0\n");
  EXPECT_EQ(ssm::cmd_validate(cfg, corrupt.string()), ssm::kExitViolations);

  // Syntax problem: not a number at all.
  const auto broken = dir / "broken.csv";
  ssm::write_file_atomic(
    broken, std::string(ssm::kTrajectoryCsvHeader) + "\n0,0,20,22,0,0,oops,0\n");
  EXPECT_EQ(ssm::cmd_validate(cfg, broken.string()), ssm::kExitParse);

  // Missing file.
  EXPECT_EQ(ssm::cmd_validate(cfg, (dir / "missing.csv").string()), ssm::kExitIo);
}

const char * cli_bin_path()
{
#ifdef SSMKIT_CLI_BIN
  return SSMKIT_CLI_BIN;
#else
  return std::getenv("SSMKIT_CLI_BIN");
#endif
}

int run_cli(const std::string & args)
{
  const char * bin = cli_bin_path();
  if (bin == nullptr) return -1;
  const std::string cmd = std::string(bin) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST(Binary, EndToEndSmoke)
{
  if (cli_bin_path() == nullptr) {
    GTEST_SKIP() << "binary path not available";
  }
  const auto dir = fresh_dir("binary");
  const std::string out = dir.string();

  EXPECT_EQ(run_cli("--help"), 0);
  ASSERT_EQ(run_cli("simulate --n-series 2 --seed 9 --out " + out), 0);
  const std::string batch = (dir / "batch.csv").string();
  const std::string first = ssm::read_file(batch);
  ASSERT_EQ(run_cli("simulate --n-series 2 --seed 9 --out " + out), 0);
  EXPECT_EQ(ssm::read_file(batch), first);

  EXPECT_EQ(run_cli("validate " + batch), 0);
  EXPECT_EQ(run_cli("metrics " + batch + " --metric ttc --out " + out), 0);
  EXPECT_TRUE(fs::exists(dir / "metrics.csv"));
  EXPECT_EQ(run_cli("classify " + batch + " --out " + out), 0);
  EXPECT_TRUE(fs::exists(dir / "report.json"));
  EXPECT_EQ(run_cli("report " + batch + " --exemplars --out " + out), 0);
  EXPECT_TRUE(fs::exists(dir / "plot_data.csv"));

  EXPECT_EQ(run_cli("metrics " + batch + " --metric fancy --out " + out), ssm::kExitConfig);
  EXPECT_NE(run_cli("simulate --no-such-flag"), 0);
}

TEST(Binary, DegenerateGridsFlag)
{
  if (cli_bin_path() == nullptr) {
    GTEST_SKIP() << "binary path not available";
  }
  const auto dir = fresh_dir("binary_grids");
  ASSERT_EQ(run_cli("simulate --grids zero --n-series 1 --out " + dir.string()), 0);
  std::istringstream is(ssm::read_file(dir / "batch.csv"));
  const auto records = ssm::parse_batch_csv(is);
  ASSERT_EQ(records.size(), 1u);
  // Variations pinned to zero: the initial state equals the configured means.
  EXPECT_DOUBLE_EQ(records[0].trajectory[0].follower.v, 25.0);
  EXPECT_DOUBLE_EQ(records[0].trajectory[0].leader.v, 200.0 / 9.0);
  EXPECT_EQ(ssm::effective_distance(records[0].trajectory[0], 4.6), 15.4);
}

}  // namespace
