// Copyright 2026 The ltc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ltc/companding.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ltc/random.h"
#include "test_util.h"

namespace ltc {
namespace {

double StdNormal(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

ScalarQuantMap RandomMap(Rng& rng, size_t cells, double lo, double hi) {
  std::vector<double> cuts(cells - 1);
  for (double& c : cuts) c = rng.Uniform(lo, hi);
  std::sort(cuts.begin(), cuts.end());
  ScalarQuantMap map;
  map.borders.push_back(lo);
  for (double c : cuts) map.borders.push_back(c);
  map.borders.push_back(hi);
  for (size_t i = 0; i < cells; ++i) {
    const double a = map.borders[i];
    const double b = map.borders[i + 1];
    map.centers.push_back(a + (b - a) * rng.Uniform(0.1, 0.9));
  }
  return map;
}

TEST(CompanderTest, UniformMapIsAffineIdentity) {
  const ScalarQuantMap map{{-0.5, 0.5, 1.5}, {0.0, 1.0}};
  const Compander f(map);
  for (double y = -0.5; y <= 1.5; y += 0.01) {
    EXPECT_NEAR(f.Forward(y), y + 1.0, 1e-12);
    EXPECT_NEAR(f.Inverse(y + 1.0), y, 1e-12);
  }
}

TEST(CompanderTest, KnotCorrespondence) {
  const ScalarQuantMap map{{0.0, 1.0, 4.0}, {0.5, 2.0}};
  const Compander f(map);
  EXPECT_DOUBLE_EQ(f.Forward(0.0), 0.5);
  EXPECT_DOUBLE_EQ(f.Forward(0.5), 1.0);
  EXPECT_DOUBLE_EQ(f.Forward(1.0), 1.5);
  EXPECT_DOUBLE_EQ(f.Forward(2.0), 2.0);
  EXPECT_DOUBLE_EQ(f.Forward(4.0), 2.5);
  // Linear extension of the end segments.
  EXPECT_DOUBLE_EQ(f.Forward(-1.0), -0.5);
  EXPECT_DOUBLE_EQ(f.Forward(8.0), 3.5);
  EXPECT_EQ(f.Quantize(-100.0), 1u);
  EXPECT_EQ(f.Quantize(100.0), 2u);
  EXPECT_EQ(f.Reconstruct(1), 0.5);
  EXPECT_EQ(f.Reconstruct(2), 2.0);
}

TEST(CompanderTest, RejectsNonMonotoneMap) {
  EXPECT_LTC_ERROR(Compander(ScalarQuantMap{{0.0, 1.0, 4.0}, {1.5, 2.0}}), "non-monotone map");
  EXPECT_LTC_ERROR(Compander(ScalarQuantMap{{0.0, 2.0, 1.0}, {0.5, 1.5}}), "non-monotone map");
  EXPECT_THROW(Compander(ScalarQuantMap{{0.0, 1.0}, {0.5, 0.7}}), Error);
}

TEST(CompanderTest, InverseRoundTripsAndIsMonotone) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarQuantMap map = RandomMap(rng, 2 + trial, -3.0, 5.0);
    const Compander f(map);
    double prev = -INFINITY;
    for (double y = -3.0; y <= 5.0; y += 1e-3) {
      const double z = f.Forward(y);
      EXPECT_GT(z, prev);
      prev = z;
      EXPECT_NEAR(f.Inverse(z), y, 1e-12);
      EXPECT_NEAR(f.Forward(f.Inverse(z)), z, 1e-12);
    }
    const std::vector<double> knots = map.Knots();
    for (size_t i = 0; i < knots.size(); ++i) {
      EXPECT_NEAR(f.Forward(knots[i]), 0.5 * (i + 1), 1e-12);
      EXPECT_EQ(f.Inverse(0.5 * (i + 1)), knots[i]);
    }
  }
}

TEST(CompanderTest, QuantizationCommutesWithCompanding) {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarQuantMap map = RandomMap(rng, 8, -2.0, 2.0);
    const Compander f(map);
    for (int s = 0; s < 5000; ++s) {
      const double y = rng.Uniform(-2.0, 2.0);
      const size_t i = map.CellOf(y);
      EXPECT_EQ(f.Quantize(y), i);
      EXPECT_EQ(f.Reconstruct(f.Quantize(y)), map.centers[i - 1]);
    }
  }
}

TEST(EquivalenceTest, RandomMapGaussianSource) {
  Rng rng(41);
  std::vector<double> samples(20000);
  for (double& s : samples) s = rng.Normal();
  for (int trial = 0; trial < 5; ++trial) {
    const ScalarQuantMap map = RandomMap(rng, 8, -2.5, 2.5);
    const EquivalenceReport r = EquivalenceCheck(map, StdNormal, samples);
    EXPECT_LT(r.pmf_max_abs_diff, 1e-6);
    EXPECT_TRUE(r.reconstruction_exact);
    EXPECT_EQ(r.mismatches, 0u);
    EXPECT_EQ(r.samples_checked, samples.size());
  }
}

TEST(EquivalenceTest, UniformMapIsExact) {
  ScalarQuantMap map;
  for (int i = -4; i <= 4; ++i) map.borders.push_back(i - 0.5);
  for (int i = -4; i < 4; ++i) map.centers.push_back(i);
  Rng rng(43);
  std::vector<double> samples(1000);
  for (double& s : samples) s = rng.Normal();
  const EquivalenceReport r = EquivalenceCheck(map, StdNormal, samples);
  EXPECT_LT(r.pmf_max_abs_diff, 1e-12);
  EXPECT_TRUE(r.reconstruction_exact);
}

TEST(EquivalenceTest, RandomMapUniformSource) {
  Rng rng(47);
  std::vector<double> samples(10000);
  for (double& s : samples) s = rng.Uniform(0.0, 4.0);
  const auto uniform = [](double y) { return y >= 0.0 && y <= 4.0 ? 0.25 : 0.0; };
  for (int trial = 0; trial < 5; ++trial) {
    const ScalarQuantMap map = RandomMap(rng, 6 + trial, 0.0, 4.0);
    const EquivalenceReport r = EquivalenceCheck(map, uniform, samples);
    EXPECT_LT(r.pmf_max_abs_diff, 1e-6);
    EXPECT_TRUE(r.reconstruction_exact);
  }
}

}  // namespace
}  // namespace ltc
