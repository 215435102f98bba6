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

#ifndef LTC_FACTORIZED_PDF_H_
#define LTC_FACTORIZED_PDF_H_

#include <functional>
#include <span>
#include <vector>

namespace ltc {

// Non-parametric 1D density stored as a piecewise-linear CDF on a uniform
// knot grid. Stands in for a learned factorized entropy model: all the codec
// needs from it is CDF evaluation.
class FactorizedPdf {
 public:
  static constexpr int kKnots = 1024;
  // Likelihood floor used by BinNegLogLikelihood.
  static constexpr double kMinLikelihood = 1e-9;

  // Integrates `density` (need not be normalized) over [lo, hi].
  static FactorizedPdf FromDensity(const std::function<double(double)>& density,
                                   double lo, double hi);
  // Empirical CDF of the samples, support padded by one knot step each side.
  static FactorizedPdf FromSamples(std::span<const double> samples);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::span<const double> cdf_knots() const { return cdf_; }

  double Cdf(double x) const;
  // Slope of the CDF segment containing x (0 outside the support).
  double Density(double x) const;
  double Mass(double a, double b) const { return b > a ? Cdf(b) - Cdf(a) : 0.0; }

  // -ln of the mass of the width-w bin centred on z, floored at
  // kMinLikelihood.
  double BinNegLogLikelihood(double z, double width) const;
  // d/dz of BinNegLogLikelihood by central difference.
  double BinGradient(double z, double width, double h = 1e-4) const;

 private:
  FactorizedPdf(double lo, double hi, std::vector<double> cdf);

  double lo_;
  double hi_;
  double step_;
  std::vector<double> cdf_;
};

}  // namespace ltc

#endif  // LTC_FACTORIZED_PDF_H_
