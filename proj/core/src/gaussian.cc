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

#include "ltc/gaussian.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ltc/error.h"

namespace ltc {

double NormalPdf(double x, double mean, double sigma) {
  const double t = (x - mean) / sigma;
  return std::exp(-0.5 * t * t) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double StdNormalCdf(double t) {
  return 0.5 * std::erfc(-t / std::numbers::sqrt2);
}

double StdNormalSf(double t) {
  return 0.5 * std::erfc(t / std::numbers::sqrt2);
}

double NormalMass(double lo, double hi, double mean, double sigma) {
  if (!(hi > lo)) return 0.0;
  const double a = (lo - mean) / sigma;
  const double b = (hi - mean) / sigma;
  // Subtract in whichever tail keeps both terms small.
  if (a > 0.0) return std::max(0.0, StdNormalSf(a) - StdNormalSf(b));
  if (b < 0.0) return std::max(0.0, StdNormalCdf(b) - StdNormalCdf(a));
  return std::max(0.0, 1.0 - StdNormalCdf(a) - StdNormalSf(b));
}

void GaussianField::Validate(double max_sigma) {
  if (mu.size() != sigma.size()) throw Error("field size mismatch");
  for (double& s : sigma) {
    if (!std::isfinite(s)) s = max_sigma;
    s = std::clamp(s, kSigmaMin, max_sigma);
  }
}

double GaussianNegLogDensity(std::span<const double> y,
                             const GaussianField& f) {
  if (y.size() != f.size()) throw Error("field size mismatch");
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  double total = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    const double t = (y[i] - f.mu[i]) / f.sigma[i];
    total += 0.5 * t * t + std::log(f.sigma[i]) + half_log_2pi;
  }
  return total;
}

}  // namespace ltc
