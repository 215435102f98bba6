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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "ltc/factorized_pdf.h"
#include "ltc/gaussian.h"
#include "ltc/lattice.h"
#include "ltc/pmf.h"
#include "ltc/pmf_builders.h"
#include "ltc/quadrature.h"
#include "ltc/random.h"
#include "test_util.h"

namespace ltc {
namespace {

Dictionary ScalarDict(double width, double half) {
  return Dictionary::Enumerate(Lattice(LatticeKind::kInteger1D, width),
                               SymmetricBox(1, half));
}

TEST(GaussianTest, UnitBinMassMatchesErf) {
  const double expected = std::erf(0.5 / std::sqrt(2.0));
  EXPECT_NEAR(expected, 0.382925, 1e-6);
  EXPECT_NEAR(GaussianMassFn(0.0, 1.0)(-0.5, 0.5), expected, 1e-15);
  // Independent check by integrating the density.
  const double integral = AdaptiveSimpson(
      [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); },
      -0.5, 0.5, 1e-14);
  EXPECT_NEAR(GaussianMassFn(0.0, 1.0)(-0.5, 0.5), integral, 1e-12);
}

TEST(GaussianTest, FarTailsKeepPrecision) {
  EXPECT_GT(NormalMass(8.0, 9.0, 0.0, 1.0), 0.0);
  EXPECT_NEAR(NormalMass(8.0, 9.0, 0.0, 1.0), NormalMass(-9.0, -8.0, 0.0, 1.0), 1e-30);
}

TEST(GaussianTest, FieldValidateClamps) {
  GaussianField f{{0.0, 1.0, 2.0}, {1e-9, 5.0, 1e9}};
  f.Validate();
  EXPECT_EQ(f.sigma[0], kSigmaMin);
  EXPECT_EQ(f.sigma[1], 5.0);
  EXPECT_EQ(f.sigma[2], 1e3);
  GaussianField bad{{0.0}, {1.0, 2.0}};
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(PmfScalarTest, GaussianSymmetric) {
  const Dictionary d = ScalarDict(1.0, 6.0);
  ASSERT_EQ(d.size(), 13u);
  const std::vector<double> raw = ScalarCellMasses(GaussianMassFn(0.0, 1.0), 1.0, d);
  for (size_t k = 0; k < 13; ++k) EXPECT_DOUBLE_EQ(raw[k], raw[12 - k]);
  const PmfTable t = PmfScalar(GaussianMassFn(0.0, 1.0), 1.0, d);
  // Apportionment ties break by index, so mirrored entries may differ by one.
  for (size_t k = 0; k < 13; ++k) {
    EXPECT_LE(std::abs(static_cast<int>(t.freq(k)) - static_cast<int>(t.freq(12 - k))), 1);
  }
}

TEST(PmfScalarTest, UniformDensityGivesEqualInteriorMass) {
  const FactorizedPdf pdf =
      FactorizedPdf::FromDensity([](double) { return 1.0; }, -4.0, 4.0);
  const Dictionary d = ScalarDict(1.0, 4.0);
  ASSERT_EQ(d.size(), 9u);
  const std::vector<double> raw = ScalarCellMasses(FactorizedMassFn(pdf), 1.0, d);
  for (size_t k = 1; k + 1 < 9; ++k) EXPECT_NEAR(raw[k], 1.0 / 8.0, 1e-12);
  EXPECT_NEAR(raw[0], 1.0 / 16.0, 1e-12);
  EXPECT_NEAR(raw[8], 1.0 / 16.0, 1e-12);
}

TEST(PmfScalarTest, SixSigmaDeficitIsTiny) {
  for (double w : {0.25, 0.5, 1.0, 2.0}) {
    for (double sigma : {0.3, 1.0, 4.0}) {
      const Dictionary d = ScalarDict(w, 6.0 * sigma);
      const std::vector<double> raw = ScalarCellMasses(GaussianMassFn(0.0, sigma), w, d);
      const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
      EXPECT_LT(1.0 - sum, 2e-9) << "w=" << w << " sigma=" << sigma;
    }
  }
}

TEST(PmfScalarTest, EmptySupport) {
  const Dictionary d = ScalarDict(1.0, 2.5);
  EXPECT_LTC_ERROR(PmfScalar(GaussianMassFn(100.0, 1.0), 1.0, d), "empty support");
}

TEST(PmfHexTest, TotalProbability) {
  const Lattice hex(LatticeKind::kHex2D, 1.0);
  const Dictionary d = Dictionary::Enumerate(hex, SymmetricBox(2, 6.0));
  const double mu[] = {0.0, 0.0};
  const double sigma[] = {1.0, 1.0};
  const std::vector<double> raw = HexCellMasses(mu, sigma, d);
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  EXPECT_GE(sum, 1.0 - 1e-6);
  EXPECT_LE(sum, 1.0 + 1e-9);
}

// Membership in the pointy-top hexagon of spacing d around the origin.
bool InHexCell(double x, double y, double d) {
  const double h = 0.5 * d;
  const double s = std::sqrt(3.0) / 2.0;
  return std::abs(x) <= h && std::abs(0.5 * x + s * y) <= h && std::abs(-0.5 * x + s * y) <= h;
}

TEST(PmfHexTest, OriginCellMatchesMonteCarlo) {
  const Lattice hex(LatticeKind::kHex2D, 1.0);
  const double mu[] = {0.0, 0.0};
  const double sigma[] = {1.0, 1.0};
  const double p = HexCellMass(hex, {0.0, 0.0, 0.0}, mu, sigma);

  constexpr int kSamples = 10000000;
  Rng rng(2024);
  int hits = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = rng.Normal();
    const double y = rng.Normal();
    hits += InHexCell(x, y, hex.spacing());
  }
  const double p_mc = static_cast<double>(hits) / kSamples;
  const double se = std::sqrt(p * (1.0 - p) / kSamples);
  EXPECT_LE(std::abs(p - p_mc), 3.0 * se) << "quad=" << p << " mc=" << p_mc;
}

TEST(PmfHexTest, PointSymmetry) {
  const Lattice hex(LatticeKind::kHex2D, 1.0);
  const Dictionary d = Dictionary::Enumerate(hex, SymmetricBox(2, 4.0));
  const double mu[] = {0.0, 0.0};
  const double sigma[] = {1.0, 1.0};
  const std::vector<double> raw = HexCellMasses(mu, sigma, d);
  for (size_t i = 0; i < d.size(); ++i) {
    const IntVec& k = d[i].key;
    const int64_t j = d.Find({-k[0], -k[1], 0});
    ASSERT_GE(j, 0);
    EXPECT_NEAR(raw[i], raw[static_cast<size_t>(j)], 1e-9);
  }
}

TEST(PmfHexTest, LatticeShiftEquivariance) {
  const Lattice hex(LatticeKind::kHex2D, 1.0);
  const Vec b = hex.basis()[0];
  const Vec b2 = hex.basis()[1];
  const double mu[] = {0.2, -0.3};
  const double mu_shift[] = {0.2 + b[0] - b2[0], -0.3 + b[1] - b2[1]};
  const double sigma[] = {0.8, 1.3};
  for (int64_t i = -3; i <= 3; ++i) {
    for (int64_t j = -3; j <= 3; ++j) {
      const Vec c = hex.CoordsOf({i, j, 0});
      const Vec c_shift = hex.CoordsOf({i + 1, j - 1, 0});
      EXPECT_NEAR(HexCellMass(hex, c, mu, sigma), HexCellMass(hex, c_shift, mu_shift, sigma),
                  1e-8);
    }
  }
}

TEST(PmfHexTest, DegenerateSigmaConcentrates) {
  const Lattice hex(LatticeKind::kHex2D, 1.0);
  const Dictionary d = Dictionary::Enumerate(hex, SymmetricBox(2, 2.0));
  GaussianField f{{0.1, 0.2}, {1e-7, 1e-7}};
  f.Validate();
  const PmfTable t = PmfHex(f.mu, f.sigma, d);
  const size_t nearest = d.Quantize(f.mu);
  EXPECT_GE(t.probability(nearest), 0.999);
}

TEST(PmfMonteCarloTest, OctOriginCellMatchesGridQuadrature) {
  const Lattice oct(LatticeKind::kTruncOct3D, 1.0);
  const Dictionary d = Dictionary::Enumerate(oct, SymmetricBox(3, 6.0));
  const std::vector<double> masses = MonteCarloCellMasses(
      [](Rng& rng, std::span<double> out) {
        for (double& v : out) v = rng.Normal();
      },
      d, 10000000, 7);
  const double p_mc = masses[static_cast<size_t>(d.Find({0, 0, 0}))];

  // Midpoint rule on a 400^3 grid over the bounding cube [-L/2, L/2]^3 of the
  // cell {|x_i| <= L/2, |x| + |y| + |z| <= 3L/4}.
  const double l = std::cbrt(2.0);
  constexpr int kGrid = 400;
  const double h = l / kGrid;
  std::vector<double> coord(kGrid), weight(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    coord[i] = -0.5 * l + (i + 0.5) * h;
    weight[i] = std::exp(-0.5 * coord[i] * coord[i]) / std::sqrt(2.0 * std::numbers::pi) * h;
  }
  double p_grid = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double rest = 0.75 * l - std::abs(coord[i]) - std::abs(coord[j]);
      if (rest <= 0.0) continue;
      double row = 0.0;
      for (int k = 0; k < kGrid; ++k) {
        if (std::abs(coord[k]) <= rest) row += weight[k];
      }
      p_grid += weight[i] * weight[j] * row;
    }
  }
  EXPECT_NEAR(p_mc / p_grid, 1.0, 0.01) << "mc=" << p_mc << " grid=" << p_grid;
}

TEST(PmfMonteCarloTest, HexAgreesWithQuadrature) {
  const Lattice hex(LatticeKind::kHex2D, 1.0);
  const Dictionary d = Dictionary::Enumerate(hex, SymmetricBox(2, 6.0));
  const double mu[] = {0.0, 0.0};
  const double sigma[] = {1.0, 1.0};
  const std::vector<double> quad = HexCellMasses(mu, sigma, d);
  constexpr uint64_t kSamples = 10000000;
  const std::vector<double> mc = GaussianCellMasses(mu, sigma, d, kSamples, 11);
  // GaussianCellMasses picks quadrature for Hex2D; sample directly instead.
  const std::vector<double> hits = MonteCarloCellMasses(
      [](Rng& rng, std::span<double> out) {
        for (double& v : out) v = rng.Normal();
      },
      d, kSamples, 11);
  for (size_t i = 0; i < d.size(); ++i) {
    EXPECT_NEAR(mc[i], quad[i], 1e-12);
    const double p = std::max(quad[i], hits[i]);
    const double se = std::sqrt(p * (1.0 - p) / kSamples);
    EXPECT_LE(std::abs(hits[i] - quad[i]), 3.0 * se + 1e-12) << "cell " << i;
  }
}

TEST(PmfMonteCarloTest, HexChiSquareConsistentWithQuadrature) {
  const Lattice hex(LatticeKind::kHex2D, 1.0);
  const Dictionary d = Dictionary::Enumerate(hex, SymmetricBox(2, 6.0));
  const double mu[] = {0.0, 0.0};
  const double sigma[] = {1.0, 1.0};
  const std::vector<double> quad = HexCellMasses(mu, sigma, d);
  constexpr uint64_t kSamples = 10000000;
  const std::vector<double> hits = MonteCarloCellMasses(
      [](Rng& rng, std::span<double> out) {
        for (double& v : out) v = rng.Normal();
      },
      d, kSamples, 12);
  double chi2 = 0.0;
  int cells = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    if (quad[i] * kSamples < 5.0) continue;
    const double diff = hits[i] - quad[i];
    chi2 += diff * diff * kSamples / quad[i];
    ++cells;
  }
  ASSERT_GT(cells, 50);
  EXPECT_LT(std::abs(chi2 - cells), 4.0 * std::sqrt(2.0 * cells)) << "cells " << cells;
}

TEST(PmfMonteCarloTest, DeterministicAndFloored) {
  const Lattice oct(LatticeKind::kTruncOct3D, 1.0);
  const Dictionary d = Dictionary::Enumerate(oct, SymmetricBox(3, 3.0));
  const double mu[] = {0.0, 0.0, 0.0};
  const double sigma[] = {0.3, 0.3, 0.3};
  const PmfTable a = PmfMonteCarlo(mu, sigma, d, 100000, 3);
  const PmfTable b = PmfMonteCarlo(mu, sigma, d, 100000, 3);
  EXPECT_EQ(a, b);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_GE(a.freq(i), 1u);
}

TEST(PmfMonteCarloTest, DegenerateSigmaConcentrates) {
  const Lattice oct(LatticeKind::kTruncOct3D, 1.0);
  GaussianField f{{0.1, -0.2, 0.05}, {0.0, 0.0, 0.0}};
  f.Validate();
  // Dictionary spanning 6 clamped sigmas around the mean.
  Box near;
  for (int i = 0; i < 3; ++i) {
    near.lo[i] = f.mu[i] - 6.0 * f.sigma[i];
    near.hi[i] = f.mu[i] + 6.0 * f.sigma[i];
  }
  const Dictionary d = Dictionary::Enumerate(oct, near);
  const PmfTable t = PmfMonteCarlo(f.mu, f.sigma, d, 100000, 5);
  EXPECT_GE(t.probability(d.Quantize(f.mu)), 0.999);

  // On a wide dictionary every other cell keeps its floor of one.
  const Dictionary wide = Dictionary::Enumerate(oct, SymmetricBox(3, 2.0));
  const PmfTable tw = PmfMonteCarlo(f.mu, f.sigma, wide, 100000, 5);
  EXPECT_EQ(tw.freq(wide.Quantize(f.mu)), tw.total() - (wide.size() - 1));
}

TEST(PmfTableTest, SumsExactlyWithFloor) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t m = 1 + rng.NextU64() % 3000;
    std::vector<double> raw(m);
    for (double& p : raw) p = rng.Uniform() < 0.3 ? 0.0 : std::pow(rng.Uniform(), 6.0);
    raw[0] += 1e-3;
    const int precision = trial % 2 ? 16 : 20;
    const PmfTable t = PmfTable::FromProbabilities(raw, precision);
    uint64_t sum = 0;
    for (size_t i = 0; i < m; ++i) {
      EXPECT_GE(t.freq(i), 1u);
      sum += t.freq(i);
    }
    EXPECT_EQ(sum, uint64_t{1} << precision);
    EXPECT_EQ(t.cum(m), t.total());
  }
}

TEST(PmfTableTest, Limits) {
  std::vector<double> ones(kMaxDictionarySize, 1.0);
  const PmfTable full = PmfTable::FromProbabilities(ones, 16);
  for (size_t i = 0; i < full.size(); ++i) EXPECT_EQ(full.freq(i), 1u);
  ones.push_back(1.0);
  EXPECT_LTC_ERROR(PmfTable::FromProbabilities(ones, 16), "dictionary too large");
  const std::vector<double> zeros(4, 0.0);
  EXPECT_LTC_ERROR(PmfTable::FromProbabilities(zeros), "empty support");
  EXPECT_LTC_ERROR(PmfTable::FromFrequencies({1, 2, 3}, 16), "invalid table");
  EXPECT_LTC_ERROR(PmfTable::FromFrequencies({0, 65536}, 16), "invalid table");
}

TEST(PmfTableTest, SerializationIsBitExact) {
  const PmfTable t = PmfTable::FromFrequencies({1, 32767, 32768}, 16);
  const std::vector<uint8_t> bytes = t.Serialize();
  const std::vector<uint8_t> expected = {'P', 'M', 'F', '1', 16, 3, 0, 0, 0,
                                         1, 0, 0, 0, 0xFF, 0x7F, 0, 0, 0, 0x80, 0, 0};
  EXPECT_EQ(bytes, expected);
  EXPECT_EQ(PmfTable::Deserialize(bytes), t);
  std::vector<uint8_t> bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(PmfTable::Deserialize(bad), Error);
  EXPECT_THROW(PmfTable::Deserialize(std::span(bytes).first(10)), Error);
}

TEST(PmfTableTest, PoolHashTracksContent) {
  TablePool a{{PmfTable::FromFrequencies({32768, 32768}, 16)}};
  TablePool b = a;
  EXPECT_EQ(a.Hash(), b.Hash());
  b.tables[0] = PmfTable::FromFrequencies({32767, 32769}, 16);
  EXPECT_NE(a.Hash(), b.Hash());
}

TEST(RateLowerBoundTest, Examples) {
  const PmfTable half = PmfTable::FromFrequencies({32768, 32768}, 16);
  const uint32_t one[] = {1};
  EXPECT_DOUBLE_EQ(RateLowerBound(one, half), 1.0);
  EXPECT_EQ(RateLowerBound(std::span<const uint32_t>(), half), 0.0);
  const uint32_t bad[] = {2};
  EXPECT_THROW(RateLowerBound(bad, half), Error);
}

TEST(RateLowerBoundTest, IidStreamApproachesEntropy) {
  const Dictionary d = ScalarDict(1.0, 6.0);
  const PmfTable t = PmfScalar(GaussianMassFn(0.3, 1.7), 1.0, d);
  Rng rng(8);
  std::vector<uint32_t> codes(1000000);
  for (uint32_t& c : codes) c = static_cast<uint32_t>(t.Lookup(rng.NextU64() % t.total()));
  const double bits = RateLowerBound(codes, t) / codes.size();
  EXPECT_NEAR(bits / t.EntropyBits(), 1.0, 0.005);
}

TEST(FactorizedPdfTest, CdfIsMonotoneAndNormalized) {
  Rng rng(4);
  std::vector<double> samples(20000);
  for (double& s : samples) s = rng.Uniform() < 0.5 ? rng.Normal(-2, 0.5) : rng.Normal(1, 1);
  const FactorizedPdf pdf = FactorizedPdf::FromSamples(samples);
  const auto knots = pdf.cdf_knots();
  EXPECT_EQ(knots.size(), static_cast<size_t>(FactorizedPdf::kKnots));
  EXPECT_EQ(knots.front(), 0.0);
  EXPECT_EQ(knots.back(), 1.0);
  for (size_t i = 1; i < knots.size(); ++i) EXPECT_GE(knots[i], knots[i - 1]);
  for (double x = -6.0; x < 6.0; x += 0.01) EXPECT_GE(pdf.Density(x), 0.0);
  EXPECT_EQ(pdf.Cdf(pdf.lo() - 1.0), 0.0);
  EXPECT_EQ(pdf.Cdf(pdf.hi() + 1.0), 1.0);
}

TEST(FactorizedPdfTest, TracksAnalyticDensity) {
  const FactorizedPdf pdf = FactorizedPdf::FromDensity(
      [](double x) { return std::exp(-0.5 * x * x); }, -8.0, 8.0);
  for (double x : {-2.0, -0.5, 0.0, 0.7, 1.9}) {
    EXPECT_NEAR(pdf.Cdf(x), 0.5 * std::erfc(-x / std::sqrt(2.0)), 1e-4);
  }
  // Bin gradient of -ln mass; for a symmetric density it vanishes at 0.
  EXPECT_NEAR(pdf.BinGradient(0.0, 1.0), 0.0, 1e-6);
  EXPECT_GT(pdf.BinGradient(1.0, 1.0), 0.0);
}

}  // namespace
}  // namespace ltc
