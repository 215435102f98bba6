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

#ifndef LTC_LATENT_SHIFT_H_
#define LTC_LATENT_SHIFT_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ltc/factorized_pdf.h"
#include "ltc/gaussian.h"

namespace ltc {

// The eight selectable step sizes; index = 3-bit code. Code 0 is always the
// zero step, so a search can never do worse than not shifting.
struct StepCandidates {
  static constexpr std::array<double, 8> kMultipliers = {0.0, 0.5, -0.5, 1.0,
                                                         -1.0, 2.0, -2.0, 4.0};
  static constexpr uint8_t kZeroCode = 0;

  std::array<double, 8> values{};

  static StepCandidates Scaled(double base);
  // Base 1/mean(1/sigma^2): the inverse mean curvature of -ln p_h.
  static StepCandidates ForField(const GaussianField& field);
};

// Reconstruction distortion (MSE) of a latent vector, and the map itself.
using DistortionFn = std::function<double(std::span<const double> y)>;
using DistortionGradFn = std::function<std::vector<double>(std::span<const double> y)>;
using DecoderFn = std::function<std::vector<double>(std::span<const double> y)>;

// MSE between x and decoder(y); x is copied.
DistortionFn MseDistortion(std::span<const double> x, DecoderFn decoder);
double Mse(std::span<const double> a, std::span<const double> b);

// d/dy of -ln N(y | mu, sigma): (y - mu) / sigma^2 per element.
std::vector<double> EntropyGradient(std::span<const double> y,
                                    const GaussianField& field);

// y + rho * g, element-wise; the single arithmetic path used by encoder and
// decoder so that replay is bit-identical.
std::vector<double> ShiftAlong(std::span<const double> y,
                               std::span<const double> g, double rho);

struct ShiftResult {
  uint8_t code = StepCandidates::kZeroCode;
  double rho = 0.0;
  std::vector<double> shifted;
  double objective_before = 0.0;
  double objective_after = 0.0;
};

// Minimizes distortion(y_hat + rho * EntropyGradient(y_hat, field)) over the
// candidates; ties go to the lowest code.
ShiftResult SearchStepMain(const DistortionFn& distortion,
                           std::span<const double> y_hat,
                           const GaussianField& field,
                           const StepCandidates& candidates);
ShiftResult SearchStepMain(std::span<const double> x, const DecoderFn& decoder,
                           std::span<const double> y_hat,
                           const GaussianField& field,
                           const StepCandidates& candidates);

// Decoder-side replay of the main shift.
std::vector<double> ApplyShiftDecode(std::span<const double> y_hat,
                                     const GaussianField& field, uint8_t code,
                                     const StepCandidates& candidates);

// Side latents: element k is modelled by pdfs[k % pdfs.size()] with bins of
// width bin_width.
std::vector<double> SideGradient(std::span<const double> z_hat,
                                 std::span<const FactorizedPdf> pdfs,
                                 double bin_width);
// Base 1/rms(g); all candidates are zero when g is.
StepCandidates SideCandidates(std::span<const double> side_gradient);

using HyperDecoderFn = std::function<GaussianField(std::span<const double> z)>;
// Main bitlength of the (fixed) main latents under a field.
using MainRateFn = std::function<double(const GaussianField& field)>;

// -log2 of the Gaussian mass of the width-w bin around each y, floored.
MainRateFn ScalarBinRate(std::span<const double> y_hat, double bin_width);

// Minimizes main_rate(hyper_decoder(z_hat + rho * SideGradient)) over the
// side candidates derived from that gradient; ties go to the lowest code.
ShiftResult SearchStepSide(std::span<const double> z_hat,
                           std::span<const FactorizedPdf> pdfs, double bin_width,
                           const HyperDecoderFn& hyper_decoder,
                           const MainRateFn& main_rate);
std::vector<double> ApplySideShiftDecode(std::span<const double> z_hat,
                                         std::span<const FactorizedPdf> pdfs,
                                         double bin_width, uint8_t code);

enum class BaselineKind { kRandom, kScalar, kSign };
inline constexpr int kBaselineBudget = 1024;  // 10-bit signal

struct BaselineResult {
  uint16_t signal = 0;
  double rho = 0.0;
  std::vector<double> shifted;
  double gain_db = 0.0;
};

// Random: signal s > 0 adds an N(0, 1) vector drawn from DeriveSeed(seed, s);
// s = 0 is no shift. Scalar adds rho to every latent and Sign applies
// y - rho * sign(y - mu), with rho = (s - budget/2) / budget * cell_side.
BaselineResult BaselineShift(BaselineKind kind, const DistortionFn& distortion,
                             std::span<const double> y_hat,
                             const GaussianField& field, double cell_side,
                             uint64_t seed, int budget = kBaselineBudget);

// 10 log10(before / after); 0 when before is 0.
double GainDb(double mse_before, double mse_after);

struct TrueGradientReport {
  double proxy_gain_db = 0.0;
  double true_gain_db = 0.0;
  uint8_t proxy_code = 0;
  uint8_t true_code = 0;
};

// Runs the main search once with the entropy gradient and once with the
// exact distortion gradient.
TrueGradientReport TrueGradientBound(const DistortionFn& distortion,
                                     const DistortionGradFn& distortion_grad,
                                     std::span<const double> y_hat,
                                     const GaussianField& field,
                                     const StepCandidates& proxy_candidates,
                                     const StepCandidates& true_candidates);

enum class GradientPairId { kMainEntropyVsDistortion, kSideEntropyVsMainEntropy };

struct GradientSample {
  std::vector<double> first;
  std::vector<double> second;
};

struct GradientReport {
  double pearson_r = 0.0;
  size_t n = 0;
  GradientPairId pair = GradientPairId::kMainEntropyVsDistortion;
};

// Throws Error("degenerate") on fewer than two values or zero variance.
double PearsonCorrelation(std::span<const double> a, std::span<const double> b);
// Pearson r over the concatenation of every instance's gradient pair.
GradientReport CorrelationReport(std::span<const GradientSample> instances,
                                 GradientPairId pair);

// sign(c) * (|c| + alpha / |c|) for c != 0; zeros pass through.
std::vector<double> DequantShiftTraditional(std::span<const int64_t> coeffs,
                                            double alpha);

struct DequantShiftReport {
  double mse_before = 0.0;
  double mse_after = 0.0;
  double rate_before = 0.0;  // sum over nonzero values of a*log2|v| + b
  double rate_after = 0.0;
};

// Compares the plain and shifted reconstructions against `reference`.
DequantShiftReport EvaluateDequantShift(std::span<const int64_t> coeffs,
                                        double alpha,
                                        std::span<const double> reference,
                                        double rate_a = 1.0, double rate_b = 0.0);

}  // namespace ltc

#endif  // LTC_LATENT_SHIFT_H_
