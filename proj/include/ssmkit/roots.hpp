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

#ifndef SSMKIT__ROOTS_HPP_
#define SSMKIT__ROOTS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace ssm
{
namespace detail
{

inline double eval_quadratic(
  const double c2, const double c1, const double c0, const double t)
{
  return (c2 * t + c1) * t + c0;
}

inline double eval_cubic(
  const double c3, const double c2, const double c1, const double c0, const double t)
{
  return ((c3 * t + c2) * t + c1) * t + c0;
}

/// A few guarded Newton steps that push an almost-converged root to the
/// floating-point zero of the polynomial. The input is kept whenever a step
/// would leave the positive axis or the derivative vanishes.
template <class P, class DP>
double newton_polish(double t, P p, DP dp, const int steps = 3)
{
  for (int i = 0; i < steps; ++i) {
    const double f = p(t);
    if (f == 0.0) break;
    const double df = dp(t);
    if (df == 0.0 || !std::isfinite(df)) break;
    const double next = t - f / df;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    t = next;
  }
  return t;
}

/// Bisection-safeguarded Newton iteration on a bracket [lo, hi] known to
/// contain exactly one sign change. flo is p(lo).
template <class P, class DP>
double refine_bracketed_root(double lo, double hi, const double flo, P p, DP dp)
{
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 128; ++i) {
    const double f = p(t);
    if (f == 0.0) return t;
    if ((f < 0.0) == (flo < 0.0)) {
      lo = t;
    } else {
      hi = t;
    }
    const double df = dp(t);
    double next = (df != 0.0) ? t - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi) || !std::isfinite(next)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t))) {
      return newton_polish(next, p, dp);
    }
    t = next;
  }
  return newton_polish(t, p, dp);
}

}  // namespace detail

/// Smallest strictly positive real root of c2*t^2 + c1*t + c0 = 0, if one
/// exists. Uses the cancellation-stable q-formula and degrades gracefully to
/// the linear case when c2 == 0.
inline std::optional<double> smallest_positive_root_quadratic(
  const double c2, const double c1, const double c0)
{
  const auto p = [=](const double t) { return detail::eval_quadratic(c2, c1, c0, t); };
  const auto dp = [=](const double t) { return 2.0 * c2 * t + c1; };

  if (c2 == 0.0) {
    if (c1 == 0.0) return std::nullopt;
    const double t = -c0 / c1;
    if (t > 0.0 && std::isfinite(t)) return t;
    return std::nullopt;
  }

  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  const double q = -0.5 * (c1 + std::copysign(s, c1));
  double r1;
  double r2;
  if (q != 0.0) {
    r1 = q / c2;
    r2 = c0 / q;
  } else {
    // c1 == 0 and disc == 0, so both roots coincide at zero.
    r1 = 0.0;
    r2 = 0.0;
  }

  double best = std::numeric_limits<double>::infinity();
  if (r1 > 0.0 && r1 < best) best = r1;
  if (r2 > 0.0 && r2 < best) best = r2;
  if (!std::isfinite(best)) return std::nullopt;
  return detail::newton_polish(best, p, dp);
}

/// Smallest strictly positive real root of c3*t^3 + c2*t^2 + c1*t + c0 = 0,
/// if one exists. The positive axis is partitioned at the stationary points
/// (the polynomial is monotonic on each piece, so a sign change brackets
/// exactly one root) and each bracket is refined with a bisection-safeguarded
/// Newton iteration. A vanishing leading coefficient falls back to the
/// quadratic solver.
inline std::optional<double> smallest_positive_root_cubic(
  double c3, double c2, double c1, double c0)
{
  if (c3 == 0.0) return smallest_positive_root_quadratic(c2, c1, c0);
  if (c3 < 0.0) {
    c3 = -c3;
    c2 = -c2;
    c1 = -c1;
    c0 = -c0;
  }
  const auto p = [=](const double t) { return detail::eval_cubic(c3, c2, c1, c0, t); };
  const auto dp = [=](const double t) { return (3.0 * c3 * t + 2.0 * c2) * t + c1; };

  // Every real root lies strictly below the Cauchy bound.
  const double bound = 1.0 + std::max({std::abs(c2), std::abs(c1), std::abs(c0)}) / c3;
  if (!std::isfinite(bound)) return std::nullopt;

  double edges[4] = {0.0, bound, bound, bound};
  int n_edges = 2;
  const double sdisc = 4.0 * c2 * c2 - 12.0 * c3 * c1;
  if (sdisc > 0.0) {
    const double ss = std::sqrt(sdisc);
    const double sq = -0.5 * (2.0 * c2 + std::copysign(ss, c2));
    double s1 = sq / (3.0 * c3);
    double s2 = (sq != 0.0) ? c1 / sq : s1;
    if (s1 > s2) std::swap(s1, s2);
    if (s1 > 0.0 && s1 < bound) edges[n_edges++] = s1;
    if (s2 > 0.0 && s2 < bound && s2 != s1) edges[n_edges++] = s2;
  }
  std::sort(edges, edges + n_edges);

  for (int i = 0; i + 1 < n_edges; ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    if (!(lo < hi)) continue;
    const double flo = p(lo);
    if (flo == 0.0) {
      if (lo > 0.0) return lo;
      continue;
    }
    const double fhi = p(hi);
    if (fhi == 0.0 || (flo < 0.0) != (fhi < 0.0)) {
      const double r = detail::refine_bracketed_root(lo, hi, flo, p, dp);
      if (r > 0.0) return r;
    }
  }
  return std::nullopt;
}

}  // namespace ssm

#endif  // SSMKIT__ROOTS_HPP_
