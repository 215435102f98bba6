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

#include "ltc/factorized_pdf.h"

#include <algorithm>
#include <cmath>

#include "ltc/error.h"
#include "ltc/quadrature.h"

namespace ltc {

FactorizedPdf::FactorizedPdf(double lo, double hi, std::vector<double> cdf)
    : lo_(lo), hi_(hi), step_((hi - lo) / (kKnots - 1)), cdf_(std::move(cdf)) {}

FactorizedPdf FactorizedPdf::FromDensity(
    const std::function<double(double)>& density, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw Error("invalid support");
  }
  const double step = (hi - lo) / (kKnots - 1);
  auto clipped = [&](double x) { return std::max(0.0, density(x)); };
  std::vector<double> cdf(kKnots, 0.0);
  for (int k = 1; k < kKnots; ++k) {
    const double a = lo + step * (k - 1);
    const double b = k + 1 == kKnots ? hi : lo + step * k;
    cdf[k] = cdf[k - 1] + AdaptiveSimpson(clipped, a, b, 1e-13, 30, 2);
  }
  const double total = cdf.back();
  if (!(total > 0.0) || !std::isfinite(total)) throw Error("empty support");
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;
  return FactorizedPdf(lo, hi, std::move(cdf));
}

FactorizedPdf FactorizedPdf::FromSamples(std::span<const double> samples) {
  if (samples.size() < 2) throw Error("empty support");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  if (!std::isfinite(sorted.front()) || !std::isfinite(sorted.back())) {
    throw Error("invalid input");
  }
  double range = sorted.back() - sorted.front();
  if (range <= 0.0) range = 1.0;
  const double pad = range / (kKnots - 3);
  const double lo = sorted.front() - pad;
  const double hi = sorted.back() + pad;
  const double step = (hi - lo) / (kKnots - 1);
  std::vector<double> cdf(kKnots, 0.0);
  const double n = static_cast<double>(sorted.size());
  for (int k = 1; k + 1 < kKnots; ++k) {
    const double x = lo + step * k;
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) -
                       sorted.begin();
    cdf[k] = static_cast<double>(count) / n;
  }
  cdf.back() = 1.0;
  return FactorizedPdf(lo, hi, std::move(cdf));
}

double FactorizedPdf::Cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  const double t = (x - lo_) / step_;
  const int k = std::min(static_cast<int>(t), kKnots - 2);
  const double frac = t - k;
  return cdf_[k] + frac * (cdf_[k + 1] - cdf_[k]);
}

double FactorizedPdf::Density(double x) const {
  if (x < lo_ || x >= hi_) return 0.0;
  const int k = std::min(static_cast<int>((x - lo_) / step_), kKnots - 2);
  return (cdf_[k + 1] - cdf_[k]) / step_;
}

double FactorizedPdf::BinNegLogLikelihood(double z, double width) const {
  const double mass = Mass(z - 0.5 * width, z + 0.5 * width);
  return -std::log(std::max(mass, kMinLikelihood));
}

double FactorizedPdf::BinGradient(double z, double width, double h) const {
  return (BinNegLogLikelihood(z + h, width) -
          BinNegLogLikelihood(z - h, width)) /
         (2.0 * h);
}

}  // namespace ltc
