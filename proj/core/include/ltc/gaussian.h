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

#ifndef LTC_GAUSSIAN_H_
#define LTC_GAUSSIAN_H_

#include <cstddef>
#include <span>
#include <vector>

namespace ltc {

// Lower clamp applied to every Gaussian scale.
inline constexpr double kSigmaMin = 0.01;

double NormalPdf(double x, double mean, double sigma);
// Standard normal CDF and its complement, both accurate in the tails.
double StdNormalCdf(double t);
double StdNormalSf(double t);
// Mass of N(mean, sigma) on [lo, hi], computed without cancellation.
double NormalMass(double lo, double hi, double mean, double sigma);

// Per-element Gaussian entropy model over a latent tensor.
struct GaussianField {
  std::vector<double> mu;
  std::vector<double> sigma;

  size_t size() const { return mu.size(); }
  // Clamps every sigma to [kSigmaMin, max_sigma]; throws on length mismatch.
  void Validate(double max_sigma = 1e3);
};

// -ln N(y | mu, sigma) summed over elements (continuous density, nats).
double GaussianNegLogDensity(std::span<const double> y, const GaussianField& f);

}  // namespace ltc

#endif  // LTC_GAUSSIAN_H_
