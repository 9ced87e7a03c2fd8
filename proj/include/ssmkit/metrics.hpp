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

#ifndef SSMKIT__METRICS_HPP_
#define SSMKIT__METRICS_HPP_

#include "ssmkit/core.hpp"
#include "ssmkit/roots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <utility>

namespace ssm
{

/// Uniform result envelope for pointwise indicator metrics. Degenerate
/// geometries and invalid regimes are reported as explicit statuses, never as
/// sentinel numbers or exceptions.
enum class MetricStatus {
  /// A finite metric value is available.
  Value,
  /// The follower is not faster than the leader; no linear collision course.
  NotClosing,
  /// The kinematic model predicts no future collision.
  NoCollisionPredicted,
  /// The metric's preconditions do not hold (e.g. stationary follower).
  Undefined,
  /// The vehicles overlap: the effective distance is negative.
  AlreadyColliding,
};

inline const char * to_string(const MetricStatus s)
{
  switch (s) {
    case MetricStatus::Value:
      return "value";
    case MetricStatus::NotClosing:
      return "not-closing";
    case MetricStatus::NoCollisionPredicted:
      return "no-collision-predicted";
    case MetricStatus::Undefined:
      return "undefined";
    case MetricStatus::AlreadyColliding:
      return "already-colliding";
  }
  return "unknown";
}

/// Value-or-reason outcome of one metric at one sample. The value is present
/// exactly when status == Value. Units are metric-specific: seconds for the
/// time-based metrics, meters for the distance margins.
struct MetricOutcome
{
  MetricStatus status{MetricStatus::Undefined};
  std::optional<double> value{};

  static MetricOutcome of(const double v) { return {MetricStatus::Value, v}; }
  static MetricOutcome with(const MetricStatus s) { return {s, std::nullopt}; }

  bool has_value() const { return status == MetricStatus::Value; }

  friend bool operator==(const MetricOutcome &, const MetricOutcome &) = default;
};

/// Time remaining until collision under constant speeds: d / (v_F - v_L).
/// Only valid while the follower is closing in; a negative gap reports a
/// realized collision instead.
inline MetricOutcome ttc(const PairSample & s, const EnvironmentParams & env)
{
  const double d = effective_distance(s, env.l_v);
  if (d < 0.0) return MetricOutcome::with(MetricStatus::AlreadyColliding);
  const double dv = s.follower.v - s.leader.v;
  if (dv <= 0.0) return MetricOutcome::with(MetricStatus::NotClosing);
  return MetricOutcome::of(d / dv);
}

/// Time headway: the gap divided by the follower speed. Ignores leader
/// dynamics entirely.
inline MetricOutcome thw(const PairSample & s, const EnvironmentParams & env)
{
  const double d = effective_distance(s, env.l_v);
  if (d < 0.0) return MetricOutcome::with(MetricStatus::AlreadyColliding);
  if (s.follower.v <= 0.0) return MetricOutcome::with(MetricStatus::Undefined);
  return MetricOutcome::of(d / s.follower.v);
}

/// Collision time under constant relative acceleration: the smallest strictly
/// positive root of (1/2)*dA*T^2 + dV*T - d = 0 with dV = v_F - v_L and
/// dA = a_F - a_L. Degenerates to the constant-speed metric when |dA| is
/// below env.eps_a, so the two agree exactly in that regime.
inline MetricOutcome mttc(const PairSample & s, const EnvironmentParams & env)
{
  const double d = effective_distance(s, env.l_v);
  if (d < 0.0) return MetricOutcome::with(MetricStatus::AlreadyColliding);
  const double da = s.follower.a - s.leader.a;
  if (std::abs(da) < env.eps_a) return ttc(s, env);
  const auto root = smallest_positive_root_quadratic(0.5 * da, s.follower.v - s.leader.v, -d);
  if (!root) return MetricOutcome::with(MetricStatus::NoCollisionPredicted);
  return MetricOutcome::of(*root);
}

/// Which kinematic assumption the adaptive collision-time metric selected:
/// constant speed, constant acceleration, or constant jerk.
enum class AttcBranch {
  Ttc1,
  Ttc2,
  Ttc3,
};

inline const char * to_string(const AttcBranch b)
{
  switch (b) {
    case AttcBranch::Ttc1:
      return "ttc1";
    case AttcBranch::Ttc2:
      return "ttc2";
    case AttcBranch::Ttc3:
      return "ttc3";
  }
  return "unknown";
}

/// Case-selection record of one adaptive collision-time evaluation, including
/// the constancy tolerances that were in effect.
struct AttcCase
{
  AttcBranch selected{AttcBranch::Ttc1};
  double eps_a{0.0};
  double eps_j{0.0};
};

/// Adaptive collision time, evaluated at the last sample of the window.
///
/// Case selection:
///  - both accelerations below eps_a in magnitude -> constant-speed metric;
///  - both jerk estimates below eps_j in magnitude (or a window too short to
///    estimate jerk) -> constant-acceleration metric;
///  - otherwise constant-jerk kinematics: the smallest strictly positive root
///    of (1/6)*dJ*T^3 + (1/2)*dA*T^2 + dV*T - d = 0.
///
/// Jerk is estimated per vehicle by the backward difference of acceleration
/// over the last two samples. The window must be non-empty.
inline std::pair<MetricOutcome, AttcCase> attc(
  std::span<const PairSample> window, const EnvironmentParams & env)
{
  const PairSample & s = window.back();
  AttcCase sel{AttcBranch::Ttc1, env.eps_a, env.eps_j};

  if (std::abs(s.follower.a) < env.eps_a && std::abs(s.leader.a) < env.eps_a) {
    return {ttc(s, env), sel};
  }

  sel.selected = AttcBranch::Ttc2;
  if (window.size() < 2) {
    return {mttc(s, env), sel};
  }
  const PairSample & prev = window[window.size() - 2];
  const double dt = s.t - prev.t;
  const double jerk_l = (s.leader.a - prev.leader.a) / dt;
  const double jerk_f = (s.follower.a - prev.follower.a) / dt;
  if (std::abs(jerk_f) < env.eps_j && std::abs(jerk_l) < env.eps_j) {
    return {mttc(s, env), sel};
  }

  sel.selected = AttcBranch::Ttc3;
  const double d = effective_distance(s, env.l_v);
  if (d < 0.0) return {MetricOutcome::with(MetricStatus::AlreadyColliding), sel};
  const double dj = jerk_f - jerk_l;
  const double da = s.follower.a - s.leader.a;
  const double dv = s.follower.v - s.leader.v;
  const auto root = smallest_positive_root_cubic(dj / 6.0, 0.5 * da, dv, -d);
  if (!root) return {MetricOutcome::with(MetricStatus::NoCollisionPredicted), sel};
  return {MetricOutcome::of(*root), sel};
}

/// Friction-scaled time needed to stop the follower at deceleration level
/// a_level: mu * v_F / a_level.
inline double stopping_time(const double mu, const double v_f, const double a_level)
{
  return mu * v_f / a_level;
}

/// Threat scores and level probabilities of the stopping-time indicator.
/// The three levels are dangerous / attentive / gentle braking; the verdict
/// is critical when the dangerous-level probability reaches the configured
/// threshold.
struct TtsResult
{
  double phi_dangerous{0.0};
  double phi_attentive{0.0};
  double phi_gentle{0.0};
  double p_dangerous{0.0};
  double p_attentive{0.0};
  double p_gentle{0.0};
  bool critical{false};
};

/// Stopping-time indicator. Builds on the constant-speed collision time: when
/// that metric has no value (not closing, already colliding), the result is
/// undefined and nullopt is returned.
///
/// Each level's threat score compares the collision time against the level's
/// stopping time through a Gaussian kernel of width env.tts_sigma:
///  - dangerous: 1 when TTC <= stop time, Gaussian tail above;
///  - attentive: Gaussian everywhere;
///  - gentle: Gaussian below the stop time, 1 above.
/// Scores are normalized into probabilities that sum to one.
inline std::optional<TtsResult> tts(const PairSample & s, const EnvironmentParams & env)
{
  const MetricOutcome t = ttc(s, env);
  if (!t.has_value()) return std::nullopt;
  const double ttc_v = *t.value;

  const double tts_d = stopping_time(env.mu, s.follower.v, env.tts_a_dangerous);
  const double tts_a = stopping_time(env.mu, s.follower.v, env.tts_a_attentive);
  const double tts_g = stopping_time(env.mu, s.follower.v, env.tts_a_gentle);

  const double inv_two_sigma_sq = 1.0 / (2.0 * env.tts_sigma * env.tts_sigma);
  const auto kernel = [&](const double delta) {
    return std::exp(-delta * delta * inv_two_sigma_sq);
  };

  TtsResult r;
  r.phi_dangerous = (ttc_v <= tts_d) ? 1.0 : kernel(ttc_v - tts_d);
  r.phi_attentive = kernel(ttc_v - tts_a);
  r.phi_gentle = (ttc_v <= tts_g) ? kernel(ttc_v - tts_g) : 1.0;

  const double sum = r.phi_dangerous + r.phi_attentive + r.phi_gentle;
  if (!(sum > 0.0) || !std::isfinite(sum)) return std::nullopt;
  r.p_dangerous = r.phi_dangerous / sum;
  r.p_attentive = r.phi_attentive / sum;
  r.p_gentle = r.phi_gentle / sum;
  r.critical = r.p_dangerous >= env.tts_p_thres;
  return r;
}

namespace detail
{

/// Shared stopping-margin arithmetic: gap plus leader stopping distance,
/// minus follower reaction distance and follower stopping distance. Both
/// fixed-limit and adaptive variants funnel through this one expression so
/// they agree bitwise whenever their effective decelerations agree.
inline double stopping_margin(
  const double d_v, const double v_l, const double v_f, const double a_b_l, const double a_b_f,
  const double t_r)
{
  return (d_v + v_l * v_l / (2.0 * a_b_l)) - (v_f * t_r + v_f * v_f / (2.0 * a_b_f));
}

}  // namespace detail

/// Effective braking deceleration of one vehicle for the adaptive stopping
/// margin. Under the default clamp rule a braking vehicle uses its actual
/// deceleration magnitude clamped into [a_min, mu*g] and a non-braking
/// vehicle falls back to the friction limit; the max-with-limit rule always
/// takes max(|a|, mu*g).
inline double effective_braking_decel(const double a, const EnvironmentParams & env)
{
  const double limit = env.a_b_max();
  if (env.adss_decel_rule == AdssDecelRule::MaxWithLimit) {
    return std::max(std::abs(a), limit);
  }
  if (a < 0.0) {
    return std::clamp(std::abs(a), std::min(env.a_min, limit), limit);
  }
  return limit;
}

/// Stopping-distance margin assuming both vehicles brake at the friction
/// limit mu*g after the follower's reaction time. Negative values mean a
/// rear-end collision cannot be avoided even under ideal maximum braking.
/// Defined for any gap (negative gaps just push the margin further down);
/// undefined for negative speeds.
inline MetricOutcome dss(const PairSample & s, const EnvironmentParams & env)
{
  if (s.leader.v < 0.0 || s.follower.v < 0.0) {
    return MetricOutcome::with(MetricStatus::Undefined);
  }
  const double d_v = effective_distance(s, env.l_v);
  const double a_max = env.a_b_max();
  return MetricOutcome::of(
    detail::stopping_margin(d_v, s.leader.v, s.follower.v, a_max, a_max, env.t_r));
}

/// Stopping-distance margin using each vehicle's effective braking
/// deceleration (see effective_braking_decel) instead of the fixed friction
/// limit. Coincides exactly with the fixed-limit margin whenever both
/// effective decelerations resolve to mu*g — in particular when both
/// vehicles coast.
inline MetricOutcome adss(const PairSample & s, const EnvironmentParams & env)
{
  if (s.leader.v < 0.0 || s.follower.v < 0.0) {
    return MetricOutcome::with(MetricStatus::Undefined);
  }
  const double d_v = effective_distance(s, env.l_v);
  const double a_b_l = effective_braking_decel(s.leader.a, env);
  const double a_b_f = effective_braking_decel(s.follower.a, env);
  return MetricOutcome::of(
    detail::stopping_margin(d_v, s.leader.v, s.follower.v, a_b_l, a_b_f, env.t_r));
}

/// Safety-relevance flags of the speed/acceleration sign-combination
/// matrices for rear-end collision analysis.
struct MatrixFlags
{
  bool v_relevant{false};
  bool a_relevant{false};

  friend bool operator==(const MatrixFlags &, const MatrixFlags &) = default;
};

/// Sign-bucket relevance test: a speed combination is safety-relevant iff the
/// follower moves forward and the leader does not reverse; an acceleration
/// combination is safety-relevant iff the leader brakes while the follower
/// does not accelerate. Comparisons are exact against zero.
inline MatrixFlags matrix_relevant(
  const double v_l, const double v_f, const double a_l, const double a_f)
{
  return {v_f > 0.0 && v_l >= 0.0, a_l < 0.0 && a_f <= 0.0};
}

}  // namespace ssm

#endif  // SSMKIT__METRICS_HPP_
