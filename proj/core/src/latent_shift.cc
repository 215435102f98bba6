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

#include "ltc/latent_shift.h"

#include <cmath>
#include <numeric>

#include "ltc/error.h"
#include "ltc/random.h"

namespace ltc {
namespace {

constexpr double kMinBinMass = 1e-9;

// Lowest-code argmin of objective(candidate shift).
template <typename Objective>
ShiftResult Search(std::span<const double> y, std::span<const double> g,
                   const StepCandidates& candidates, const Objective& objective) {
  ShiftResult best;
  best.shifted.assign(y.begin(), y.end());
  best.objective_before = objective(best.shifted);
  best.objective_after = best.objective_before;
  for (uint8_t code = 0; code < candidates.values.size(); ++code) {
    const double rho = candidates.values[code];
    if (code == StepCandidates::kZeroCode) continue;
    std::vector<double> shifted = ShiftAlong(y, g, rho);
    const double value = objective(shifted);
    if (value < best.objective_after) {
      best.code = code;
      best.rho = rho;
      best.objective_after = value;
      best.shifted = std::move(shifted);
    }
  }
  return best;
}

}  // namespace

StepCandidates StepCandidates::Scaled(double base) {
  StepCandidates c;
  for (size_t i = 0; i < kMultipliers.size(); ++i) c.values[i] = kMultipliers[i] * base;
  return c;
}

StepCandidates StepCandidates::ForField(const GaussianField& field) {
  if (field.size() == 0) return Scaled(0.0);
  double mean_curvature = 0.0;
  for (double s : field.sigma) mean_curvature += 1.0 / (s * s);
  mean_curvature /= static_cast<double>(field.size());
  return Scaled(1.0 / mean_curvature);
}

DistortionFn MseDistortion(std::span<const double> x, DecoderFn decoder) {
  return [x = std::vector<double>(x.begin(), x.end()),
          decoder = std::move(decoder)](std::span<const double> y) {
    return Mse(x, decoder(y));
  };
}

double Mse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("length mismatch");
  if (a.empty()) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

std::vector<double> EntropyGradient(std::span<const double> y,
                                    const GaussianField& field) {
  if (y.size() != field.size()) throw Error("length mismatch");
  std::vector<double> g(y.size());
  for (size_t i = 0; i < y.size(); ++i) {
    g[i] = (y[i] - field.mu[i]) / (field.sigma[i] * field.sigma[i]);
  }
  return g;
}

std::vector<double> ShiftAlong(std::span<const double> y,
                               std::span<const double> g, double rho) {
  if (y.size() != g.size()) throw Error("length mismatch");
  std::vector<double> out(y.size());
  for (size_t i = 0; i < y.size(); ++i) out[i] = y[i] + rho * g[i];
  return out;
}

ShiftResult SearchStepMain(const DistortionFn& distortion,
                           std::span<const double> y_hat,
                           const GaussianField& field,
                           const StepCandidates& candidates) {
  const std::vector<double> g = EntropyGradient(y_hat, field);
  return Search(y_hat, g, candidates, distortion);
}

ShiftResult SearchStepMain(std::span<const double> x, const DecoderFn& decoder,
                           std::span<const double> y_hat,
                           const GaussianField& field,
                           const StepCandidates& candidates) {
  return SearchStepMain(MseDistortion(x, decoder), y_hat, field, candidates);
}

std::vector<double> ApplyShiftDecode(std::span<const double> y_hat,
                                     const GaussianField& field, uint8_t code,
                                     const StepCandidates& candidates) {
  if (code >= candidates.values.size()) throw Error("step code out of range");
  if (code == StepCandidates::kZeroCode) return {y_hat.begin(), y_hat.end()};
  return ShiftAlong(y_hat, EntropyGradient(y_hat, field), candidates.values[code]);
}

std::vector<double> SideGradient(std::span<const double> z_hat,
                                 std::span<const FactorizedPdf> pdfs,
                                 double bin_width) {
  if (pdfs.empty()) throw Error("no side model");
  std::vector<double> g(z_hat.size());
  for (size_t k = 0; k < z_hat.size(); ++k) {
    g[k] = pdfs[k % pdfs.size()].BinGradient(z_hat[k], bin_width);
  }
  return g;
}

StepCandidates SideCandidates(std::span<const double> side_gradient) {
  double sq = 0.0;
  for (double v : side_gradient) sq += v * v;
  if (side_gradient.empty() || sq == 0.0) return StepCandidates::Scaled(0.0);
  return StepCandidates::Scaled(
      1.0 / std::sqrt(sq / static_cast<double>(side_gradient.size())));
}

MainRateFn ScalarBinRate(std::span<const double> y_hat, double bin_width) {
  return [y = std::vector<double>(y_hat.begin(), y_hat.end()),
          bin_width](const GaussianField& field) {
    if (field.size() != y.size()) throw Error("length mismatch");
    double bits = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
      const double p = NormalMass(y[i] - 0.5 * bin_width, y[i] + 0.5 * bin_width,
                                  field.mu[i], field.sigma[i]);
      bits -= std::log2(std::max(p, kMinBinMass));
    }
    return bits;
  };
}

ShiftResult SearchStepSide(std::span<const double> z_hat,
                           std::span<const FactorizedPdf> pdfs, double bin_width,
                           const HyperDecoderFn& hyper_decoder,
                           const MainRateFn& main_rate) {
  const std::vector<double> g = SideGradient(z_hat, pdfs, bin_width);
  const StepCandidates candidates = SideCandidates(g);
  return Search(z_hat, g, candidates, [&](std::span<const double> z) {
    return main_rate(hyper_decoder(z));
  });
}

std::vector<double> ApplySideShiftDecode(std::span<const double> z_hat,
                                         std::span<const FactorizedPdf> pdfs,
                                         double bin_width, uint8_t code) {
  if (code >= StepCandidates::kMultipliers.size()) {
    throw Error("step code out of range");
  }
  if (code == StepCandidates::kZeroCode) return {z_hat.begin(), z_hat.end()};
  const std::vector<double> g = SideGradient(z_hat, pdfs, bin_width);
  return ShiftAlong(z_hat, g, SideCandidates(g).values[code]);
}

double GainDb(double mse_before, double mse_after) {
  if (mse_before <= 0.0) return 0.0;
  if (mse_after <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(mse_before / mse_after);
}

BaselineResult BaselineShift(BaselineKind kind, const DistortionFn& distortion,
                             std::span<const double> y_hat,
                             const GaussianField& field, double cell_side,
                             uint64_t seed, int budget) {
  if (budget < 1) throw Error("invalid budget");
  if (kind == BaselineKind::kSign && field.size() != y_hat.size()) {
    throw Error("length mismatch");
  }
  const size_t m = y_hat.size();
  BaselineResult best;
  best.shifted.assign(y_hat.begin(), y_hat.end());
  const double before = distortion(best.shifted);
  double best_value = before;
  std::vector<double> candidate(m);
  for (int s = 0; s < budget; ++s) {
    double rho = 0.0;
    switch (kind) {
      case BaselineKind::kRandom: {
        if (s == 0) continue;
        Rng rng(DeriveSeed(seed, static_cast<uint64_t>(s)));
        for (size_t i = 0; i < m; ++i) candidate[i] = y_hat[i] + rng.Normal();
        break;
      }
      case BaselineKind::kScalar:
        rho = (s - budget / 2) / static_cast<double>(budget) * cell_side;
        for (size_t i = 0; i < m; ++i) candidate[i] = y_hat[i] + rho;
        break;
      case BaselineKind::kSign:
        rho = (s - budget / 2) / static_cast<double>(budget) * cell_side;
        for (size_t i = 0; i < m; ++i) {
          const double d = y_hat[i] - field.mu[i];
          const double sign = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
          candidate[i] = y_hat[i] - rho * sign;
        }
        break;
    }
    const double value = distortion(candidate);
    if (value < best_value) {
      best_value = value;
      best.signal = static_cast<uint16_t>(s);
      best.rho = rho;
      best.shifted = candidate;
    }
  }
  if (kind != BaselineKind::kRandom && best_value == before) {
    best.signal = static_cast<uint16_t>(budget / 2);
  }
  best.gain_db = GainDb(before, best_value);
  return best;
}

TrueGradientReport TrueGradientBound(const DistortionFn& distortion,
                                     const DistortionGradFn& distortion_grad,
                                     std::span<const double> y_hat,
                                     const GaussianField& field,
                                     const StepCandidates& proxy_candidates,
                                     const StepCandidates& true_candidates) {
  const ShiftResult proxy =
      Search(y_hat, EntropyGradient(y_hat, field), proxy_candidates, distortion);
  const std::vector<double> g = distortion_grad(y_hat);
  if (g.size() != y_hat.size()) throw Error("length mismatch");
  const ShiftResult truth = Search(y_hat, g, true_candidates, distortion);
  TrueGradientReport report;
  report.proxy_gain_db = GainDb(proxy.objective_before, proxy.objective_after);
  report.true_gain_db = GainDb(truth.objective_before, truth.objective_after);
  report.proxy_code = proxy.code;
  report.true_code = truth.code;
  return report;
}

double PearsonCorrelation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("length mismatch");
  const size_t n = a.size();
  if (n < 2) throw Error("degenerate");
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) throw Error("degenerate");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

GradientReport CorrelationReport(std::span<const GradientSample> instances,
                                 GradientPairId pair) {
  std::vector<double> a, b;
  for (const GradientSample& s : instances) {
    if (s.first.size() != s.second.size()) throw Error("length mismatch");
    a.insert(a.end(), s.first.begin(), s.first.end());
    b.insert(b.end(), s.second.begin(), s.second.end());
  }
  GradientReport report;
  report.pearson_r = PearsonCorrelation(a, b);
  report.n = a.size();
  report.pair = pair;
  return report;
}

std::vector<double> DequantShiftTraditional(std::span<const int64_t> coeffs,
                                            double alpha) {
  if (!(alpha >= 0.0)) throw Error("alpha must be non-negative");
  std::vector<double> out(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const double c = static_cast<double>(coeffs[i]);
    if (c == 0.0) continue;
    const double mag = std::abs(c) + alpha / std::abs(c);
    out[i] = c < 0.0 ? -mag : mag;
  }
  return out;
}

DequantShiftReport EvaluateDequantShift(std::span<const int64_t> coeffs,
                                        double alpha,
                                        std::span<const double> reference,
                                        double rate_a, double rate_b) {
  const std::vector<double> plain = DequantShiftTraditional(coeffs, 0.0);
  const std::vector<double> shifted = DequantShiftTraditional(coeffs, alpha);
  auto rate = [&](std::span<const double> v) {
    double r = 0.0;
    for (double x : v) {
      if (x != 0.0) r += rate_a * std::log2(std::abs(x)) + rate_b;
    }
    return r;
  };
  DequantShiftReport report;
  report.mse_before = Mse(plain, reference);
  report.mse_after = Mse(shifted, reference);
  report.rate_before = rate(plain);
  report.rate_after = rate(shifted);
  return report;
}

}  // namespace ltc
