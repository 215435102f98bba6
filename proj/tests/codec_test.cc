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


#include "ltc/codec.h"

#include <cmath>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "ltc/random.h"
#include "ltc/rans.h"
#include "ltc/synthetic_model.h"
#include "ltc/tensor_io.h"
#include "test_util.h"

namespace ltc {
namespace {

SyntheticConfig SmallConfig() {
  SyntheticConfig c;
  c.n = 1024;
  c.m = 256;
  c.side = 16;
  return c;
}

class CodecTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { model_ = std::make_unique<SyntheticModel>(SmallConfig(), 3); }
  static void TearDownTestSuite() { model_.reset(); }
  static const SyntheticModel& model() { return *model_; }

 private:
  static std::unique_ptr<SyntheticModel> model_;
};

std::unique_ptr<SyntheticModel> CodecTest::model_;

constexpr LatticeKind kAllKinds[] = {LatticeKind::kInteger1D, LatticeKind::kHex2D,
                                     LatticeKind::kTruncOct3D};

TEST_F(CodecTest, DecoderHasOrthonormalColumns) {
  EXPECT_LT(model().OrthonormalityError(), 1e-10);
  const SyntheticModel::Sample s = model().SampleSource(1);
  const std::vector<double> x = model().Decode(model().Analyze(s.x));
  double worst = 0.0;
  for (size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - s.x[i]));
  EXPECT_LT(worst, 1e-10);
}

TEST(CodecExactTest, LatticeCentersReconstructExactly) {
  SyntheticConfig c = SmallConfig();
  c.rate_weight = 0.0;
  c.mean_prior = false;
  const SyntheticModel model(c, 5);
  Rng rng(1);
  std::vector<double> centers(c.m);
  for (double& v : centers) v = static_cast<double>(static_cast<int>(rng.NextU64() % 3) - 1);
  const std::vector<double> x = model.Decode(centers);
  const EncodeResult r = EncodeFull(x, model, {LatticeKind::kInteger1D, 1.0, false});
  EXPECT_EQ(r.instance.y_hat, centers);
  EXPECT_EQ(r.instance.x_hat, x);
  EXPECT_EQ(r.instance.mse, 0.0);
}

TEST_F(CodecTest, ShiftsNeverHurt) {
  double psnr_on = 0.0, psnr_off = 0.0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    const std::vector<double> x = model().SampleSource(seed).x;
    const CodecInstance off = EncodeFull(x, model(), {LatticeKind::kInteger1D, 1.0, false}).instance;
    const CodecInstance on = EncodeFull(x, model(), {LatticeKind::kInteger1D, 1.0, true}).instance;
    EXPECT_LE(on.mse, off.mse) << seed;
    EXPECT_LE(on.main_bits, off.main_bits + 1e-9) << seed;
    EXPECT_EQ(on.y_hat_unshifted, off.y_hat) << seed;
    psnr_on += on.psnr_db;
    psnr_off += off.psnr_db;
  }
  EXPECT_GE(psnr_on, psnr_off);
}

TEST_F(CodecTest, DecodeReplaysEncoderExactly) {
  for (LatticeKind kind : kAllKinds) {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
      const std::vector<double> x = model().SampleSource(100 + seed).x;
      const CodecOptions opts{kind, seed % 2 ? 1.0 : 0.75, seed % 3 != 0};
      const EncodeResult r = EncodeFull(x, model(), opts);
      size_t consumed = 0;
      const std::vector<uint8_t> bytes = r.streams.Serialize();
      const EncodedStreams parsed = EncodedStreams::Parse(bytes, &consumed);
      EXPECT_EQ(consumed, bytes.size());
      const DecodeResult d = DecodeFull(parsed, model());
      EXPECT_EQ(d.z_hat, r.instance.z_hat);
      EXPECT_EQ(d.y_hat, r.instance.y_hat);
      EXPECT_EQ(d.x_hat, r.instance.x_hat) << LatticeName(kind) << " seed " << seed;
      // Same inputs, same bytes.
      EXPECT_EQ(EncodeFull(x, model(), opts).streams.Serialize(), bytes);
    }
  }
}

TEST_F(CodecTest, TamperedStepCodes) {
  const std::vector<double> x = model().SampleSource(7).x;
  const EncodeResult r = EncodeFull(x, model(), {LatticeKind::kHex2D, 1.0, true});
  EncodedStreams bad = r.streams;
  bad.main.header.step_code_h = static_cast<uint8_t>((r.instance.step_code_h + 3) % 8);
  const DecodeResult d = DecodeFull(bad, model());
  EXPECT_NE(d.x_hat, r.instance.x_hat);
  for (double v : d.x_hat) EXPECT_TRUE(std::isfinite(v));

  // The side step changes the coding tables, so it may be rejected.
  for (uint8_t f = 0; f < 8; ++f) {
    bad = r.streams;
    bad.main.header.step_code_f = f;
    try {
      const DecodeResult df = DecodeFull(bad, model());
      EXPECT_EQ(df.x_hat.size(), x.size());
    } catch (const Error&) {
    }
  }
}

TEST_F(CodecTest, WrongModelIsRejected) {
  const std::vector<double> x = model().SampleSource(9).x;
  const EncodeResult r = EncodeFull(x, model(), {LatticeKind::kInteger1D, 1.0, false});
  const SyntheticModel other(SmallConfig(), 4);
  EXPECT_LTC_ERROR(DecodeFull(r.streams, other), "model mismatch");
}

TEST(CodecDegenerateTest, SingleCodeDictionaries) {
  SyntheticConfig c = SmallConfig();
  c.bound_sigmas = 0.01;
  const SyntheticModel model(c, 6);
  const std::vector<double> x = model.SampleSource(1).x;
  for (LatticeKind kind : kAllKinds) {
    const EncodeResult r = EncodeFull(x, model, {kind, 1.0, false});
    EXPECT_EQ(r.instance.main_bits, 0.0);
    EXPECT_EQ(r.streams.main.payload.size(), kRansFlushBytes);
    const GaussianField field0 = model.Hyper(r.instance.z_hat);
    EXPECT_EQ(r.instance.y_hat, field0.mu);
    EXPECT_EQ(r.instance.x_hat, model.Decode(field0.mu));
    EXPECT_EQ(DecodeFull(r.streams, model).x_hat, r.instance.x_hat);
  }
}

// On this source some side step candidates put no mass on the main
// dictionary; the search must skip them rather than fail.
TEST(CodecSideSearchTest, InfeasibleCandidatesAreSkipped) {
  const SyntheticModel model(SyntheticConfig{}, 0);
  const std::vector<double> x = model.SampleSource(93).x;
  const EncodeResult r = EncodeFull(x, model, {LatticeKind::kInteger1D, 1.0, true});
  EXPECT_EQ(DecodeFull(r.streams, model).x_hat, r.instance.x_hat);
}

TEST_F(CodecTest, SmallOctVolumeExceedsDictionaryLimit) {
  const std::vector<double> x = model().SampleSource(1).x;
  EXPECT_LTC_ERROR(EncodeFull(x, model(), {LatticeKind::kTruncOct3D, 0.25, false}),
                   "dictionary too large");
}

// Information carried by a payload: emitted bytes plus the final coder state
// above its initial value.
double PayloadInformationBits(const std::vector<uint8_t>& payload) {
  uint32_t state = 0;
  for (size_t i = 0; i < kRansFlushBytes; ++i) {
    state |= static_cast<uint32_t>(payload[i]) << (8 * i);
  }
  return 8.0 * static_cast<double>(payload.size() - kRansFlushBytes) + std::log2(state) -
         std::log2(kRansLow);
}

TEST_F(CodecTest, MainBitsMatchPayload) {
  for (LatticeKind kind : kAllKinds) {
    const double volume = kind == LatticeKind::kTruncOct3D ? 0.75 : 0.25;
    double bits = 0.0, payload_bits = 0.0;
    size_t codes = 0;
    for (uint64_t seed = 1; codes < 2000; ++seed) {
      const std::vector<double> x = model().SampleSource(seed).x;
      const EncodeResult r = EncodeFull(x, model(), {kind, volume, true});
      ASSERT_EQ(r.streams.main.payload.size(), r.instance.main_payload_bytes);
      bits += r.instance.main_bits;
      payload_bits += PayloadInformationBits(r.streams.main.payload);
      codes += r.streams.main.header.code_count;
    }
    EXPECT_NEAR(payload_bits / bits, 1.0, 0.005) << LatticeName(kind) << " ratio " << payload_bits / bits;
  }
}

TEST_F(CodecTest, LatticeSecondMomentsAppearEndToEnd) {
  SyntheticConfig c;
  c.n = 1024;
  c.m = 1024;
  c.side = 16;
  c.sigma_lo = c.sigma_hi = 1.0;
  c.hyper_coupling = 0.0;
  c.rate_weight = 0.0;
  c.mean_prior = false;
  const SyntheticModel m(c, 8);
  Rng rng(3);
  double mse[3] = {0, 0, 0};
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<double> x(c.n);
    for (double& v : x) v = rng.Normal();
    for (int k = 0; k < 3; ++k) {
      mse[k] += EncodeFull(x, m, {kAllKinds[k], 1.0, false}).instance.mse;
    }
  }
  EXPECT_NEAR(mse[0] / 30 / SecondMoment(LatticeKind::kInteger1D, 1.0), 1.0, 0.02);
  EXPECT_NEAR(mse[1] / 30 / SecondMoment(LatticeKind::kHex2D, 1.0), 1.0, 0.02);
  EXPECT_NEAR(mse[2] / 30 / SecondMoment(LatticeKind::kTruncOct3D, 1.0), 1.0, 0.02);
}

TEST(GroupLatentsTest, PacksSharedBinsAndFallsBack) {
  const std::vector<double> sigma = {1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 1.0};
  const std::vector<LatentGroup> g = GroupLatents(sigma, 2);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g[0].start, 0u);
  EXPECT_EQ(g[0].dim, 2);
  EXPECT_EQ(g[1].start, 2u);
  EXPECT_EQ(g[1].dim, 2);
  EXPECT_EQ(g[2].start, 4u);
  EXPECT_EQ(g[2].dim, 1);
  EXPECT_EQ(g[3].start, 5u);
  EXPECT_EQ(g[3].dim, 2);
  EXPECT_EQ(g[4].start, 7u);
  EXPECT_EQ(g[4].dim, 1);
  for (const LatentGroup& x : GroupLatents(sigma, 1)) EXPECT_EQ(x.dim, 1);
}

TEST(SyntheticConfigTest, TextRoundTripAndErrors) {
  SyntheticConfig c = SmallConfig();
  c.hyper_coupling = 0.125;
  c.mean_prior = false;
  const SyntheticConfig back = SyntheticConfig::FromText(c.ToText());
  EXPECT_EQ(back.ToText(), c.ToText());
  EXPECT_LTC_ERROR(c.Set("bogus", "1"), "unknown config key: bogus");
  EXPECT_LTC_ERROR(c.Set("n", "abc"), "invalid config: n");
  SyntheticConfig bad = SmallConfig();
  bad.side = 7;
  EXPECT_LTC_ERROR(bad.Validate(), "invalid config: side");
}

TEST(TensorIoTest, RoundTripAndErrors) {
  Tensor t{{2, 3}, {1, 2, 3, 4, 5, 6.5f}};
  const std::vector<uint8_t> bytes = SerializeTensor(t);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "TNS1");
  EXPECT_EQ(bytes[4], kTensorDtypeF32);
  EXPECT_EQ(bytes[5], 2);
  const Tensor back = ParseTensor(bytes);
  EXPECT_EQ(back.shape, t.shape);
  EXPECT_EQ(back.data, t.data);

  std::vector<uint8_t> bad = bytes;
  bad[0] = 'X';
  EXPECT_LTC_ERROR(ParseTensor(bad), "bad magic");
  bad = bytes;
  bad[4] = 2;
  EXPECT_LTC_ERROR(ParseTensor(bad), "unsupported dtype");
  EXPECT_LTC_ERROR(ParseTensor(std::span(bytes).first(bytes.size() - 2)), "truncated input");
}

}  // namespace
}  // namespace ltc
