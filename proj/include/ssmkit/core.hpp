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

#ifndef SSMKIT__CORE_HPP_
#define SSMKIT__CORE_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace ssm
{

/// Kinematic state of one vehicle at one instant. Longitudinal motion only:
/// position x [m], speed v [m/s], acceleration a [m/s^2]. Positions use the
/// rear-bumper convention; the vehicle length is applied exactly once, in
/// effective_distance().
struct KinematicState
{
  double x{0.0};
  double v{0.0};
  double a{0.0};
};

/// One time-aligned observation of a leader/follower pair.
/// Overlapping geometry (leader rear behind follower front) is representable;
/// it signals a crashed state that downstream metrics must report, not a
/// construction error.
struct PairSample
{
  double t{0.0};
  KinematicState leader;
  KinematicState follower;
};

/// An ordered multivariate time series of pair samples with strictly
/// increasing timestamps.
struct PairTrajectory
{
  std::vector<PairSample> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  const PairSample & operator[](std::size_t i) const { return samples[i]; }
};

/// Rule for turning a vehicle's observed acceleration into the effective
/// braking deceleration used by the adaptive stopping-distance margin:
///  - Clamp: braking vehicles use |a| clamped into [a_min, mu*g];
///           non-braking vehicles fall back to mu*g.
///  - MaxWithLimit: always max(|a|, mu*g); degenerates to the fixed-limit
///           margin but is kept selectable for comparison.
enum class AdssDecelRule {
  Clamp,
  MaxWithLimit,
};

/// Environment and metric parameters shared by all indicator computations.
struct EnvironmentParams
{
  /// Vehicle length [m]; must be > 0.
  double l_v{4.6};
  /// Road/weather friction coefficient, 0 < mu <= 1.2.
  double mu{0.8};
  /// Gravitational acceleration [m/s^2].
  double g{9.81};
  /// Follower reaction time [s]; >= 0.
  double t_r{0.7};

  /// Stopping-time deceleration levels [m/s^2]: dangerous > attentive >
  /// gentle > 0.
  double tts_a_dangerous{7.5};
  double tts_a_attentive{4.5};
  double tts_a_gentle{2.0};
  /// Gaussian width of the threat-score kernel [s]; > 0.
  double tts_sigma{0.5};
  /// Dangerous-level probability threshold for the binary verdict.
  double tts_p_thres{0.5};

  /// Accelerations with |a| below this are treated as constant-speed motion
  /// [m/s^2].
  double eps_a{0.05};
  /// Jerk estimates with magnitude below this are treated as
  /// constant-acceleration motion [m/s^3].
  double eps_j{0.05};
  /// Lower bound on effective braking deceleration [m/s^2]; guards the
  /// stopping-distance division as |a| -> 0.
  double a_min{0.5};
  /// Effective-deceleration rule for the adaptive stopping margin.
  AdssDecelRule adss_decel_rule{AdssDecelRule::Clamp};

  /// Maximum achievable braking deceleration [m/s^2].
  double a_b_max() const { return mu * g; }
};

/// Safety-relevant separation between the vehicles: the gap
/// x_L - x_F - l_V. Negative values mean overlapping geometry.
inline double effective_distance(const PairSample & s, const double l_v)
{
  return s.leader.x - s.follower.x - l_v;
}

/// One detected trajectory defect: which sample and which field/property.
struct Violation
{
  std::size_t index{0};
  std::string message;
};

/// Checks the trajectory invariants: at least one sample, strictly increasing
/// finite timestamps, finite kinematic fields. Violations are returned as
/// data, never thrown.
inline std::vector<Violation> validate_trajectory(const PairTrajectory & traj)
{
  std::vector<Violation> out;
  if (traj.empty()) {
    out.push_back({0, "empty trajectory"});
    return out;
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const PairSample & s = traj[i];
    if (!std::isfinite(s.t)) out.push_back({i, "non-finite t"});
    if (!std::isfinite(s.leader.x)) out.push_back({i, "non-finite x_L"});
    if (!std::isfinite(s.leader.v)) out.push_back({i, "non-finite v_L"});
    if (!std::isfinite(s.leader.a)) out.push_back({i, "non-finite a_L"});
    if (!std::isfinite(s.follower.x)) out.push_back({i, "non-finite x_F"});
    if (!std::isfinite(s.follower.v)) out.push_back({i, "non-finite v_F"});
    if (!std::isfinite(s.follower.a)) out.push_back({i, "non-finite a_F"});
    if (i > 0 && !(traj[i - 1].t < s.t)) out.push_back({i, "non-increasing t"});
  }
  return out;
}

}  // namespace ssm

#endif  // SSMKIT__CORE_HPP_
