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

#ifndef SSMKIT__SIMULATOR_HPP_
#define SSMKIT__SIMULATOR_HPP_

#include "ssmkit/core.hpp"
#include "ssmkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ssm
{

/// Symmetric variation grid {-K*step, ..., -step, 0, step, ..., K*step}.
/// Values are built as k*step so that a value and its negation are exact
/// floating-point negatives of each other.
inline std::vector<double> symmetric_grid(const double half_span, const double step)
{
  const int k_max = static_cast<int>(std::lround(half_span / step));
  std::vector<double> grid;
  grid.reserve(2 * k_max + 1);
  for (int k = -k_max; k <= k_max; ++k) {
    grid.push_back(k * step);
  }
  return grid;
}

/// Parameters of the synthetic follow-up-drive study: two vehicles on a
/// straight line, leader braking first, follower braking after a reaction
/// time, initial speeds and braking decelerations drawn uniformly from
/// symmetric variation grids.
struct ScenarioConfig
{
  /// Initial effective distance (gap) [m].
  double d0{15.4};
  /// Vehicle length [m].
  double l_v{4.6};
  /// Mean initial leader speed [m/s] (80 km/h).
  double v0_mean_l{200.0 / 9.0};
  /// Mean initial follower speed [m/s] (90 km/h).
  double v0_mean_f{25.0};
  /// Speed variation grid [m/s], symmetric about 0.
  std::vector<double> v0_var_grid{symmetric_grid(1.0, 0.05)};
  /// Mean braking deceleration magnitude [m/s^2].
  double a_brake_mean{7.0};
  /// Braking-deceleration variation grid [m/s^2], symmetric about 0.
  std::vector<double> a_brake_var_grid{symmetric_grid(1.0, 0.05)};
  /// Follower reaction time [s] used when sample_reaction_time is off.
  double t_r{0.7};
  /// Leader braking onset [s].
  double t_brake_l{0.0};
  /// Sample spacing [s].
  double dt{0.25};
  /// Samples per trajectory.
  int n_points{10};
  /// Trajectories per batch.
  int n_series{1000};
  /// Master seed; all draws derive from it.
  std::uint64_t seed{42};

  /// When true, each trajectory's reaction time is drawn from a shifted
  /// gamma distribution instead of the fixed t_r. The default parameters
  /// reproduce the 0.7 s mean: shape*scale + shift = 0.7.
  bool sample_reaction_time{false};
  double reaction_gamma_shape{2.0};
  double reaction_gamma_scale{0.2};
  double reaction_gamma_shift{0.3};
};

/// Config invariant check; returns human-readable violations (empty when the
/// config is usable).
inline std::vector<std::string> validate_scenario_config(const ScenarioConfig & cfg)
{
  std::vector<std::string> out;
  const auto check_grid = [&out](const std::vector<double> & g, const std::string & name) {
    if (g.empty()) {
      out.push_back(name + " is empty");
      return;
    }
    std::vector<double> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] + sorted[sorted.size() - 1 - i] != 0.0) {
        out.push_back(name + " is not symmetric about 0");
        return;
      }
    }
  };
  if (!(cfg.d0 > 0.0)) out.push_back("d0 must be > 0");
  if (!(cfg.l_v > 0.0)) out.push_back("l_v must be > 0");
  if (!(cfg.dt > 0.0)) out.push_back("dt must be > 0");
  if (cfg.n_points < 2) out.push_back("n_points must be >= 2");
  if (cfg.n_series < 0) out.push_back("n_series must be >= 0");
  if (!(cfg.t_r >= 0.0)) out.push_back("t_r must be >= 0");
  if (!(cfg.t_brake_l >= 0.0)) out.push_back("t_brake_l must be >= 0");
  check_grid(cfg.v0_var_grid, "v0_var_grid");
  check_grid(cfg.a_brake_var_grid, "a_brake_var_grid");
  if (!cfg.v0_var_grid.empty()) {
    const double vmin = *std::min_element(cfg.v0_var_grid.begin(), cfg.v0_var_grid.end());
    if (!(cfg.v0_mean_l + vmin >= 0.0)) out.push_back("v0_mean_l + min(grid) must be >= 0");
    if (!(cfg.v0_mean_f + vmin >= 0.0)) out.push_back("v0_mean_f + min(grid) must be >= 0");
  }
  if (!cfg.a_brake_var_grid.empty()) {
    const double amin =
      *std::min_element(cfg.a_brake_var_grid.begin(), cfg.a_brake_var_grid.end());
    if (!(cfg.a_brake_mean + amin > 0.0)) {
      out.push_back("a_brake_mean + min(grid) must be > 0");
    }
  }
  if (cfg.sample_reaction_time) {
    if (!(cfg.reaction_gamma_shape > 0.0)) out.push_back("reaction_gamma_shape must be > 0");
    if (!(cfg.reaction_gamma_scale > 0.0)) out.push_back("reaction_gamma_scale must be > 0");
    if (!(cfg.reaction_gamma_shift >= 0.0)) out.push_back("reaction_gamma_shift must be >= 0");
  }
  return out;
}

/// Audit record of one trajectory's random draws: the four grid variations
/// plus the reaction time in effect.
struct InitialDraws
{
  double v0_var_l{0.0};
  double v0_var_f{0.0};
  double a_var_l{0.0};
  double a_var_f{0.0};
  double t_r{0.0};

  friend bool operator==(const InitialDraws &, const InitialDraws &) = default;
};

/// Absolute initial conditions of one trajectory.
struct InitialConditions
{
  double v0_l{0.0};
  double v0_f{0.0};
  double a_brake_l{0.0};
  double a_brake_f{0.0};
  double t_r{0.0};
};

/// Draws one trajectory's initial conditions: each variation independently
/// and uniformly from its grid, in the fixed order leader speed, follower
/// speed, leader braking, follower braking. When gamma reaction-time
/// sampling is enabled one further draw seeds the gamma engine.
inline InitialDraws sample_initials(const ScenarioConfig & cfg, SplitMix64 & rng)
{
  InitialDraws d;
  d.v0_var_l = cfg.v0_var_grid[rng.next_index(cfg.v0_var_grid.size())];
  d.v0_var_f = cfg.v0_var_grid[rng.next_index(cfg.v0_var_grid.size())];
  d.a_var_l = cfg.a_brake_var_grid[rng.next_index(cfg.a_brake_var_grid.size())];
  d.a_var_f = cfg.a_brake_var_grid[rng.next_index(cfg.a_brake_var_grid.size())];
  if (cfg.sample_reaction_time) {
    std::mt19937_64 engine(rng.next());
    std::gamma_distribution<double> gamma(cfg.reaction_gamma_shape, cfg.reaction_gamma_scale);
    d.t_r = cfg.reaction_gamma_shift + gamma(engine);
  } else {
    d.t_r = cfg.t_r;
  }
  return d;
}

/// Variation draws resolved against the configured means.
inline InitialConditions resolve_initials(const ScenarioConfig & cfg, const InitialDraws & d)
{
  return {
    cfg.v0_mean_l + d.v0_var_l, cfg.v0_mean_f + d.v0_var_f, cfg.a_brake_mean + d.a_var_l,
    cfg.a_brake_mean + d.a_var_f, d.t_r};
}

namespace detail
{

/// Closed-form coast/brake/stop motion of one vehicle: constant speed until
/// the braking onset, constant deceleration until standstill, frozen
/// afterwards. The stop is handled at its exact continuous time, never
/// snapped to the sample grid.
struct BrakeProfile
{
  double x0{0.0};
  double v0{0.0};
  double onset{0.0};
  double decel{0.0};
};

inline KinematicState state_at(const BrakeProfile & p, const double t)
{
  if (t < p.onset || p.decel <= 0.0 || p.v0 <= 0.0) {
    return {p.x0 + p.v0 * t, p.v0, 0.0};
  }
  const double tau = t - p.onset;
  const double t_stop = p.v0 / p.decel;
  if (tau < t_stop) {
    return {
      p.x0 + p.v0 * p.onset + (p.v0 - 0.5 * p.decel * tau) * tau, p.v0 - p.decel * tau,
      -p.decel};
  }
  return {p.x0 + p.v0 * p.onset + 0.5 * p.v0 * t_stop, 0.0, 0.0};
}

}  // namespace detail

/// Integrates one leader/follower pair on the sample grid t_k = k*dt.
/// Initial positions put the follower's reference at 0 and the leader's at
/// d0 + l_v, so the initial effective distance is exactly d0. The leader
/// brakes at t_brake_l, the follower one reaction time later; accelerations
/// switch instantaneously and are sampled right-continuously.
inline PairTrajectory integrate_pair(const ScenarioConfig & cfg, const InitialConditions & init)
{
  const detail::BrakeProfile leader{cfg.d0 + cfg.l_v, init.v0_l, cfg.t_brake_l, init.a_brake_l};
  const detail::BrakeProfile follower{0.0, init.v0_f, cfg.t_brake_l + init.t_r, init.a_brake_f};
  PairTrajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(cfg.n_points));
  for (int k = 0; k < cfg.n_points; ++k) {
    const double t = k * cfg.dt;
    traj.samples.push_back({t, detail::state_at(leader, t), detail::state_at(follower, t)});
  }
  return traj;
}

/// A generated batch: trajectories plus the audit record of every draw and
/// the config that produced them. Identical (config, seed) reproduce the
/// batch bit-for-bit.
struct ScenarioBatch
{
  std::vector<PairTrajectory> trajectories;
  std::vector<InitialDraws> draws;
  ScenarioConfig config;
};

/// Generates n_series independent trajectories. Each trajectory draws from
/// its own substream derived from (seed, index), so the output is
/// independent of generation order and safe to parallelize.
inline ScenarioBatch generate_batch(const ScenarioConfig & cfg)
{
  ScenarioBatch batch;
  batch.config = cfg;
  batch.trajectories.reserve(static_cast<std::size_t>(cfg.n_series));
  batch.draws.reserve(static_cast<std::size_t>(cfg.n_series));
  for (int i = 0; i < cfg.n_series; ++i) {
    SplitMix64 rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const InitialDraws draws = sample_initials(cfg, rng);
    batch.draws.push_back(draws);
    batch.trajectories.push_back(integrate_pair(cfg, resolve_initials(cfg, draws)));
  }
  return batch;
}

}  // namespace ssm

#endif  // SSMKIT__SIMULATOR_HPP_
