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

#ifndef SSMKIT__CONFIG_HPP_
#define SSMKIT__CONFIG_HPP_

#include "ssmkit/classify.hpp"
#include "ssmkit/core.hpp"
#include "ssmkit/io.hpp"
#include "ssmkit/simulator.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssm
{

/// Configuration problem: unknown key, wrong type, invalid value, malformed
/// config file.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Merged run configuration: environment and scenario parameters plus the
/// classifier backend and output options. Shared fields (vehicle length,
/// reaction time) are stored once in the config file and mirrored into both
/// parameter structs.
struct RunConfig
{
  EnvironmentParams env{};
  ScenarioConfig scenario{};
  ClassifierBackend classifier{ClassifierBackend::Adss};
  /// Output table format: "csv" or "json".
  std::string format{"csv"};
  /// Directory all output files go into.
  std::string out_dir{"."};
};

inline nlohmann::json run_config_to_json(const RunConfig & cfg)
{
  nlohmann::json j;
  j["l_v"] = cfg.env.l_v;
  j["mu"] = cfg.env.mu;
  j["g"] = cfg.env.g;
  j["t_r"] = cfg.env.t_r;
  j["tts_a_dangerous"] = cfg.env.tts_a_dangerous;
  j["tts_a_attentive"] = cfg.env.tts_a_attentive;
  j["tts_a_gentle"] = cfg.env.tts_a_gentle;
  j["tts_sigma"] = cfg.env.tts_sigma;
  j["tts_p_thres"] = cfg.env.tts_p_thres;
  j["eps_a"] = cfg.env.eps_a;
  j["eps_j"] = cfg.env.eps_j;
  j["a_min"] = cfg.env.a_min;
  j["adss_decel_rule"] =
    cfg.env.adss_decel_rule == AdssDecelRule::Clamp ? "clamp" : "max-with-limit";
  j["d0"] = cfg.scenario.d0;
  j["v0_mean_l"] = cfg.scenario.v0_mean_l;
  j["v0_mean_f"] = cfg.scenario.v0_mean_f;
  j["v0_var_grid"] = cfg.scenario.v0_var_grid;
  j["a_brake_mean"] = cfg.scenario.a_brake_mean;
  j["a_brake_var_grid"] = cfg.scenario.a_brake_var_grid;
  j["t_brake_l"] = cfg.scenario.t_brake_l;
  j["dt"] = cfg.scenario.dt;
  j["n_points"] = cfg.scenario.n_points;
  j["n_series"] = cfg.scenario.n_series;
  j["seed"] = cfg.scenario.seed;
  j["sample_reaction_time"] = cfg.scenario.sample_reaction_time;
  j["reaction_gamma_shape"] = cfg.scenario.reaction_gamma_shape;
  j["reaction_gamma_scale"] = cfg.scenario.reaction_gamma_scale;
  j["reaction_gamma_shift"] = cfg.scenario.reaction_gamma_shift;
  j["classifier"] = to_string(cfg.classifier);
  j["format"] = cfg.format;
  j["out_dir"] = cfg.out_dir;
  return j;
}

/// Applies a flat JSON object over an existing config. Unknown keys are
/// rejected so typos cannot silently fall back to defaults.
inline void apply_json(RunConfig & cfg, const nlohmann::json & j)
{
  if (!j.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }
  try {
    for (const auto & [key, value] : j.items()) {
      if (key == "l_v") {
        cfg.env.l_v = value.get<double>();
        cfg.scenario.l_v = cfg.env.l_v;
      } else if (key == "mu") {
        cfg.env.mu = value.get<double>();
      } else if (key == "g") {
        cfg.env.g = value.get<double>();
      } else if (key == "t_r") {
        cfg.env.t_r = value.get<double>();
        cfg.scenario.t_r = cfg.env.t_r;
      } else if (key == "tts_a_dangerous") {
        cfg.env.tts_a_dangerous = value.get<double>();
      } else if (key == "tts_a_attentive") {
        cfg.env.tts_a_attentive = value.get<double>();
      } else if (key == "tts_a_gentle") {
        cfg.env.tts_a_gentle = value.get<double>();
      } else if (key == "tts_sigma") {
        cfg.env.tts_sigma = value.get<double>();
      } else if (key == "tts_p_thres") {
        cfg.env.tts_p_thres = value.get<double>();
      } else if (key == "eps_a") {
        cfg.env.eps_a = value.get<double>();
      } else if (key == "eps_j") {
        cfg.env.eps_j = value.get<double>();
      } else if (key == "a_min") {
        cfg.env.a_min = value.get<double>();
      } else if (key == "adss_decel_rule") {
        const auto rule = value.get<std::string>();
        if (rule == "clamp") {
          cfg.env.adss_decel_rule = AdssDecelRule::Clamp;
        } else if (rule == "max-with-limit") {
          cfg.env.adss_decel_rule = AdssDecelRule::MaxWithLimit;
        } else {
          throw ConfigError("adss_decel_rule must be 'clamp' or 'max-with-limit'");
        }
      } else if (key == "d0") {
        cfg.scenario.d0 = value.get<double>();
      } else if (key == "v0_mean_l") {
        cfg.scenario.v0_mean_l = value.get<double>();
      } else if (key == "v0_mean_f") {
        cfg.scenario.v0_mean_f = value.get<double>();
      } else if (key == "v0_var_grid") {
        cfg.scenario.v0_var_grid = value.get<std::vector<double>>();
      } else if (key == "a_brake_mean") {
        cfg.scenario.a_brake_mean = value.get<double>();
      } else if (key == "a_brake_var_grid") {
        cfg.scenario.a_brake_var_grid = value.get<std::vector<double>>();
      } else if (key == "t_brake_l") {
        cfg.scenario.t_brake_l = value.get<double>();
      } else if (key == "dt") {
        cfg.scenario.dt = value.get<double>();
      } else if (key == "n_points") {
        cfg.scenario.n_points = value.get<int>();
      } else if (key == "n_series") {
        cfg.scenario.n_series = value.get<int>();
      } else if (key == "seed") {
        cfg.scenario.seed = value.get<std::uint64_t>();
      } else if (key == "sample_reaction_time") {
        cfg.scenario.sample_reaction_time = value.get<bool>();
      } else if (key == "reaction_gamma_shape") {
        cfg.scenario.reaction_gamma_shape = value.get<double>();
      } else if (key == "reaction_gamma_scale") {
        cfg.scenario.reaction_gamma_scale = value.get<double>();
      } else if (key == "reaction_gamma_shift") {
        cfg.scenario.reaction_gamma_shift = value.get<double>();
      } else if (key == "classifier") {
        const auto backend = value.get<std::string>();
        if (backend == "adss") {
          cfg.classifier = ClassifierBackend::Adss;
        } else if (backend == "tts") {
          cfg.classifier = ClassifierBackend::Tts;
        } else {
          throw ConfigError("classifier must be 'adss' or 'tts'");
        }
      } else if (key == "format") {
        const auto fmt = value.get<std::string>();
        if (fmt != "csv" && fmt != "json") {
          throw ConfigError("format must be 'csv' or 'json'");
        }
        cfg.format = fmt;
      } else if (key == "out_dir") {
        cfg.out_dir = value.get<std::string>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError(std::string("config value error: ") + e.what());
  }
}

/// Loads a config file over the defaults.
inline RunConfig load_run_config(const std::filesystem::path & path)
{
  RunConfig cfg;
  const std::string content = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  apply_json(cfg, j);
  return cfg;
}

/// Environment invariant check; returns human-readable violations.
inline std::vector<std::string> validate_environment(const EnvironmentParams & env)
{
  std::vector<std::string> out;
  if (!(env.l_v > 0.0)) out.push_back("l_v must be > 0");
  if (!(env.mu > 0.0 && env.mu <= 1.2)) out.push_back("mu must be in (0, 1.2]");
  if (!(env.g > 0.0)) out.push_back("g must be > 0");
  if (!(env.t_r >= 0.0)) out.push_back("t_r must be >= 0");
  if (!(0.0 < env.tts_a_gentle && env.tts_a_gentle < env.tts_a_attentive &&
        env.tts_a_attentive < env.tts_a_dangerous)) {
    out.push_back("deceleration levels must satisfy 0 < gentle < attentive < dangerous");
  }
  if (!(env.tts_sigma > 0.0)) out.push_back("tts_sigma must be > 0");
  if (!(env.tts_p_thres >= 0.0 && env.tts_p_thres <= 1.0)) {
    out.push_back("tts_p_thres must be in [0, 1]");
  }
  if (!(env.eps_a >= 0.0)) out.push_back("eps_a must be >= 0");
  if (!(env.eps_j >= 0.0)) out.push_back("eps_j must be >= 0");
  if (!(env.a_min > 0.0)) out.push_back("a_min must be > 0");
  if (!(env.a_min <= env.a_b_max())) out.push_back("a_min must be <= mu*g");
  return out;
}

/// Full config invariant check across environment, scenario, and shared
/// fields.
inline std::vector<std::string> validate_run_config(const RunConfig & cfg)
{
  std::vector<std::string> out = validate_environment(cfg.env);
  const std::vector<std::string> scenario = validate_scenario_config(cfg.scenario);
  out.insert(out.end(), scenario.begin(), scenario.end());
  if (cfg.env.l_v != cfg.scenario.l_v) {
    out.push_back("environment and scenario l_v differ");
  }
  return out;
}

}  // namespace ssm

#endif  // SSMKIT__CONFIG_HPP_
