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

#ifndef LTC_CODEC_H_
#define LTC_CODEC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ltc/bitstream.h"
#include "ltc/gaussian.h"
#include "ltc/lattice.h"
#include "ltc/latent_shift.h"
#include "ltc/synthetic_model.h"

namespace ltc {

// A run of `dim` consecutive main latents coded as one lattice point.
struct LatentGroup {
  uint32_t start = 0;
  uint8_t dim = 1;
};

inline constexpr double kGroupLogBinWidth = 0.1;

// Consecutive latents whose ln(sigma) falls in the same kGroupLogBinWidth
// bin are packed `dim` at a time; what is left of each run becomes 1D groups.
std::vector<LatentGroup> GroupLatents(std::span<const double> sigma, int dim);

struct CodecOptions {
  LatticeKind lattice = LatticeKind::kInteger1D;
  double volume = 1.0;  // cell volume of `lattice`; 1D fallback uses volume^(1/v)
  bool shift = false;
};

struct CodecInstance {
  std::vector<double> x;
  std::vector<double> y0;     // A^T x
  std::vector<double> y;      // encoder output
  std::vector<double> z;
  std::vector<double> z_hat;  // after the side shift
  std::vector<double> y_hat_unshifted;
  std::vector<double> y_hat;  // after the main shift
  std::vector<double> x_hat;
  GaussianField field;        // coding field, H(z_hat)
  double residual_energy = 0.0;  // |x - A A^T x|^2
  double side_bits = 0.0;     // cross-entropy of the side codes
  double main_bits = 0.0;     // cross-entropy of the main codes
  size_t side_payload_bytes = 0;
  size_t main_payload_bytes = 0;
  uint8_t step_code_f = 0;
  uint8_t step_code_h = 0;
  double mse = 0.0;
  double psnr_db = 0.0;
};

struct EncodedStreams {
  Bitstream side;
  Bitstream main;

  // Side bitstream followed by the main bitstream.
  std::vector<uint8_t> Serialize() const;
  static EncodedStreams Parse(std::span<const uint8_t> bytes,
                              size_t* consumed = nullptr);
};

struct EncodeResult {
  EncodedStreams streams;
  CodecInstance instance;
};

EncodeResult EncodeFull(std::span<const double> x, const SyntheticModel& model,
                        const CodecOptions& options);

struct DecodeResult {
  std::vector<double> z_hat;
  std::vector<double> y_hat;
  std::vector<double> x_hat;
};

// Throws Error("model mismatch") when the streams were produced with a
// different model.
DecodeResult DecodeFull(const EncodedStreams& streams, const SyntheticModel& model);

// 10 log10(peak^2 / mse).
double Psnr(double mse, double peak = 1.0);

// Signal-domain MSE of decoding y, evaluated in the latent domain; exact
// because A has orthonormal columns.
DistortionFn LatentDistortion(const CodecInstance& instance);
// Gradient of LatentDistortion: (2/n) (y - y0).
DistortionGradFn LatentDistortionGradient(const CodecInstance& instance);

}  // namespace ltc

#endif  // LTC_CODEC_H_
