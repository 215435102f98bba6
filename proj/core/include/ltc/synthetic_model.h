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

#ifndef LTC_SYNTHETIC_MODEL_H_
#define LTC_SYNTHETIC_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltc/factorized_pdf.h"
#include "ltc/gaussian.h"

namespace ltc {

struct SyntheticConfig {
  size_t n = 4096;    // signal length
  size_t m = 1024;    // main latents
  size_t side = 64;   // side latents; must divide m
  double sigma_lo = 0.3;  // range of the per-block scale bias
  double sigma_hi = 3.0;
  double hyper_coupling = 0.02;  // d log(sigma) / d mu
  double rate_weight = 1.0;      // encoder pull toward mu; 0 = plain analysis
  bool mean_prior = true;        // false forces mu = 0
  double bound_sigmas = 6.0;     // main dictionary half-width in sigmas
  uint64_t mc_samples = 100000;  // per TruncOct3D table

  // Throws Error("invalid config: <key>") naming the first bad field.
  void Validate() const;
  // Flat key=value lines, one per field, in a fixed order.
  std::string ToText() const;
  // Applies one key=value pair; throws Error("unknown config key: <key>")
  // or Error("invalid config: <key>").
  void Set(const std::string& key, const std::string& value);
  static SyntheticConfig FromText(const std::string& text);
};

// Analytic stand-in for a hyperprior autoencoder. A (n x m) has orthonormal
// columns and B = A^T, so the latent-domain squared error equals the signal
// domain one. Side latents are block sums z_k = sum(y_block) / sqrt(bs) over
// blocks of bs = m / side consecutive latents. The hyper map gives every
// latent of block k
//   mu = z_k / sqrt(bs),  log sigma = bias_k + coupling * z_k / sqrt(bs).
class SyntheticModel {
 public:
  SyntheticModel(const SyntheticConfig& config, uint64_t seed);

  const SyntheticConfig& config() const { return config_; }
  uint64_t seed() const { return seed_; }
  size_t n() const { return config_.n; }
  size_t m() const { return config_.m; }
  size_t side() const { return config_.side; }
  size_t block_size() const { return config_.m / config_.side; }
  std::span<const double> block_bias() const { return bias_; }

  // x = A y.
  std::vector<double> Decode(std::span<const double> y) const;
  // y = A^T x.
  std::vector<double> Analyze(std::span<const double> x) const;
  std::vector<double> SideDown(std::span<const double> y) const;
  GaussianField Hyper(std::span<const double> z_hat) const;
  // argmin_y |y - y0|^2 + w * sum (y - mu)^2 / (2 sigma^2), element-wise.
  std::vector<double> RateAwareEncode(std::span<const double> y0,
                                      const GaussianField& field) const;
  // Gradient of sum -ln N(y | Hyper(z)) with respect to z.
  std::vector<double> HyperRateGradient(std::span<const double> y,
                                        std::span<const double> z) const;

  // Factorized stand-in model of side latent k: the exact density of z_k
  // under the source distribution, tabulated.
  std::span<const FactorizedPdf> side_pdfs() const { return side_pdfs_; }
  static constexpr double kSideBinWidth = 1.0;

  // Source: latent block k has mean drawn from a two-component Gaussian
  // mixture and spread exp(bias_k); x = A w.
  struct Sample {
    std::vector<double> x;
    std::vector<double> w;
  };
  Sample SampleSource(uint64_t seed) const;

  // max |A^T A - I|.
  double OrthonormalityError() const;

 private:
  SyntheticConfig config_;
  uint64_t seed_;
  std::vector<double> a_;  // column-major n x m
  std::vector<double> bias_;
  std::vector<FactorizedPdf> side_pdfs_;
};

}  // namespace ltc

#endif  // LTC_SYNTHETIC_MODEL_H_
