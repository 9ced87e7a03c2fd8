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

#include "ssmkit/roots.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace
{

TEST(QuadraticRoot, PicksSmallestPositiveOfTwo)
{
  // (T - 2)(T - 3)
  const auto r = ssm::smallest_positive_root_quadratic(1.0, -5.0, 6.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 2.0, 1e-12);
}

TEST(QuadraticRoot, SkipsNegativeRoot)
{
  // (T - 2)(T + 1)
  const auto r = ssm::smallest_positive_root_quadratic(1.0, -1.0, -2.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 2.0, 1e-12);
}

TEST(QuadraticRoot, NoPositiveRoots)
{
  // (T + 1)(T + 2)
  EXPECT_FALSE(ssm::smallest_positive_root_quadratic(1.0, 3.0, 2.0).has_value());
}

TEST(QuadraticRoot, NegativeDiscriminant)
{
  EXPECT_FALSE(ssm::smallest_positive_root_quadratic(1.0, 0.0, 1.0).has_value());
}

TEST(QuadraticRoot, LinearFallback)
{
  const auto r = ssm::smallest_positive_root_quadratic(0.0, 3.0, -6.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 2.0, 1e-12);
  EXPECT_FALSE(ssm::smallest_positive_root_quadratic(0.0, 3.0, 6.0).has_value());
  EXPECT_FALSE(ssm::smallest_positive_root_quadratic(0.0, 0.0, 1.0).has_value());
}

TEST(QuadraticRoot, CollisionTimeExample)
{
  // (1/2)*1*T^2 + 5*T - 10 = 0 -> T = -5 + sqrt(45)
  const auto r = ssm::smallest_positive_root_quadratic(0.5, 5.0, -10.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 1.7082039324993694, 1e-12);
  EXPECT_LT(std::abs(ssm::detail::eval_quadratic(0.5, 5.0, -10.0, *r)), 1e-12);
}

TEST(QuadraticRoot, StableForTinyLeadingCoefficient)
{
  // Nearly linear: 1e-12*T^2 + T - 1; the naive formula cancels badly here.
  const auto r = ssm::smallest_positive_root_quadratic(1e-12, 1.0, -1.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 1.0, 1e-9);
  EXPECT_LT(std::abs(ssm::detail::eval_quadratic(1e-12, 1.0, -1.0, *r)), 1e-12);
}

TEST(QuadraticRoot, PositiveDoubleRoot)
{
  // (T - 3)^2
  const auto r = ssm::smallest_positive_root_quadratic(1.0, -6.0, 9.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 3.0, 1e-6);
}

TEST(CubicRoot, UnitCube)
{
  // T^3 - 1
  const auto r = ssm::smallest_positive_root_cubic(1.0, 0.0, 0.0, -1.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 1.0, 1e-12);
}

TEST(CubicRoot, PicksSmallestOfThreePositive)
{
  // (T - 1)(T - 2)(T - 3)
  const auto r = ssm::smallest_positive_root_cubic(1.0, -6.0, 11.0, -6.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 1.0, 1e-12);
}

TEST(CubicRoot, AllRootsNegative)
{
  // (T + 1)(T + 2)(T + 3)
  EXPECT_FALSE(ssm::smallest_positive_root_cubic(1.0, 6.0, 11.0, 6.0).has_value());
}

TEST(CubicRoot, MixedSignRoots)
{
  // (T - 2)(T + 1)^2 = T^3 - 3T - 2
  const auto r = ssm::smallest_positive_root_cubic(1.0, 0.0, -3.0, -2.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 2.0, 1e-12);
}

TEST(CubicRoot, TangentDoubleRoot)
{
  // (T - 1)^2 (T - 4) = T^3 - 6T^2 + 9T - 4
  const auto r = ssm::smallest_positive_root_cubic(1.0, -6.0, 9.0, -4.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 1.0, 1e-6);
}

TEST(CubicRoot, NegativeLeadingCoefficient)
{
  // -(T^3 - 1)
  const auto r = ssm::smallest_positive_root_cubic(-1.0, 0.0, 0.0, 1.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 1.0, 1e-12);
}

TEST(CubicRoot, ZeroLeadingCoefficientDelegatesToQuadratic)
{
  const auto r = ssm::smallest_positive_root_cubic(0.0, 1.0, 0.0, -4.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 2.0, 1e-12);
}

TEST(CubicRoot, RandomizedResidualContract)
{
  std::mt19937_64 rng(20260823);
  std::uniform_real_distribution<double> coeff(-10.0, 10.0);
  int n_roots = 0;
  for (int i = 0; i < 2000; ++i) {
    const double c3 = coeff(rng);
    const double c2 = coeff(rng);
    const double c1 = coeff(rng);
    const double c0 = coeff(rng);
    const auto r = ssm::smallest_positive_root_cubic(c3, c2, c1, c0);
    if (!r) continue;
    ++n_roots;
    EXPECT_GT(*r, 0.0);
    const double residual = std::abs(ssm::detail::eval_cubic(c3, c2, c1, c0, *r));
    EXPECT_LT(residual, 1e-9 * std::max(1.0, std::abs(c0)))
      << "c3=" << c3 << " c2=" << c2 << " c1=" << c1 << " c0=" << c0 << " T=" << *r;
  }
  // A cubic with random coefficients usually has a positive root; make sure
  // the property above was actually exercised.
  EXPECT_GT(n_roots, 1000);
}

TEST(QuadraticRoot, RandomizedResidualContract)
{
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> coeff(-10.0, 10.0);
  int n_roots = 0;
  for (int i = 0; i < 2000; ++i) {
    const double c2 = coeff(rng);
    const double c1 = coeff(rng);
    const double c0 = coeff(rng);
    const auto r = ssm::smallest_positive_root_quadratic(c2, c1, c0);
    if (!r) continue;
    ++n_roots;
    const double residual = std::abs(ssm::detail::eval_quadratic(c2, c1, c0, *r));
    EXPECT_LT(residual, 1e-9 * std::max(1.0, std::abs(c0)))
      << "c2=" << c2 << " c1=" << c1 << " c0=" << c0 << " T=" << *r;
  }
  EXPECT_GT(n_roots, 500);
}

}  // namespace
