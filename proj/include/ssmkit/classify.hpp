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

#ifndef SSMKIT__CLASSIFY_HPP_
#define SSMKIT__CLASSIFY_HPP_

#include "ssmkit/core.hpp"
#include "ssmkit/metrics.hpp"
#include "ssmkit/simulator.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssm
{

/// Which indicator drives the binary safety verdict: the adaptive
/// stopping-distance margin (default) or the stopping-time level
/// probabilities.
enum class ClassifierBackend {
  Adss,
  Tts,
};

inline const char * to_string(const ClassifierBackend b)
{
  return b == ClassifierBackend::Adss ? "adss" : "tts";
}

/// Thrown when a trajectory handed to the classifier fails validation.
class ValidationError : public std::runtime_error
{
public:
  explicit ValidationError(std::vector<Violation> violations)
  : std::runtime_error(compose(violations)), violations_(std::move(violations))
  {
  }

  const std::vector<Violation> & violations() const { return violations_; }

private:
  static std::string compose(const std::vector<Violation> & violations)
  {
    std::ostringstream os;
    os << "trajectory validation failed:";
    for (const Violation & v : violations) {
      os << " [sample " << v.index << ": " << v.message << "]";
    }
    return os.str();
  }

  std::vector<Violation> violations_;
};

/// Safety decision at one sample. The stored margin outcome is the adaptive
/// stopping-distance assessment of the point; overlapping geometry is
/// recorded as AlreadyColliding.
struct PointVerdict
{
  std::size_t index{0};
  MetricOutcome adss{};
  bool both_braking{false};
  bool critical{false};
};

/// Safety decision for a whole series: critical iff at least one point is
/// critical, with the earliest such point recorded.
struct ScenarioVerdict
{
  std::vector<PointVerdict> points;
  bool critical{false};
  std::optional<std::size_t> first_critical_index{};
};

/// Aggregated verdicts over a batch.
struct BatchReport
{
  std::size_t n_total{0};
  std::size_t n_critical{0};
  double critical_fraction{0.0};
  std::vector<ScenarioVerdict> verdicts;
};

/// Pointwise safety decision.
///
/// Under the margin backend a point is critical when both vehicles are
/// braking and the adaptive stopping margin is <= 0. Under the
/// stopping-time backend it is critical when the dangerous-level probability
/// reaches its threshold. Overlapping geometry (negative gap) is critical
/// under either backend regardless of braking flags: a realized collision is
/// the limiting case of an exhausted margin.
inline PointVerdict classify_point(
  const PairSample & s, const EnvironmentParams & env, const std::size_t index = 0,
  const ClassifierBackend backend = ClassifierBackend::Adss)
{
  PointVerdict v;
  v.index = index;
  v.both_braking = s.leader.a < 0.0 && s.follower.a < 0.0;
  if (effective_distance(s, env.l_v) < 0.0) {
    v.adss = MetricOutcome::with(MetricStatus::AlreadyColliding);
    v.critical = true;
    return v;
  }
  v.adss = adss(s, env);
  if (backend == ClassifierBackend::Adss) {
    v.critical = v.both_braking && v.adss.has_value() && *v.adss.value <= 0.0;
  } else {
    const auto t = tts(s, env);
    v.critical = t.has_value() && t->critical;
  }
  return v;
}

/// Existential aggregation of point verdicts over a validated series.
/// Throws ValidationError when the trajectory violates its invariants.
inline ScenarioVerdict classify_scenario(
  const PairTrajectory & traj, const EnvironmentParams & env,
  const ClassifierBackend backend = ClassifierBackend::Adss)
{
  auto violations = validate_trajectory(traj);
  if (!violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  ScenarioVerdict verdict;
  verdict.points.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    PointVerdict pv = classify_point(traj[i], env, i, backend);
    if (pv.critical && !verdict.first_critical_index) {
      verdict.first_critical_index = i;
    }
    verdict.critical = verdict.critical || pv.critical;
    verdict.points.push_back(std::move(pv));
  }
  return verdict;
}

/// Classifies every trajectory of a batch; verdicts are order-aligned with
/// the batch and independent of processing order.
inline BatchReport classify_batch(
  const ScenarioBatch & batch, const EnvironmentParams & env,
  const ClassifierBackend backend = ClassifierBackend::Adss)
{
  BatchReport report;
  report.n_total = batch.trajectories.size();
  report.verdicts.reserve(report.n_total);
  for (const PairTrajectory & traj : batch.trajectories) {
    ScenarioVerdict v = classify_scenario(traj, env, backend);
    if (v.critical) ++report.n_critical;
    report.verdicts.push_back(std::move(v));
  }
  report.critical_fraction =
    report.n_total == 0 ? 0.0
                        : static_cast<double>(report.n_critical) / static_cast<double>(report.n_total);
  return report;
}

}  // namespace ssm

#endif  // SSMKIT__CLASSIFY_HPP_
