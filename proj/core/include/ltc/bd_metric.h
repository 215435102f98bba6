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

#ifndef LTC_BD_METRIC_H_
#define LTC_BD_METRIC_H_

#include <span>
#include <string>
#include <vector>

namespace ltc {

struct RdPoint {
  double rate = 0.0;     // bits per sample, > 0
  double quality = 0.0;  // PSNR in dB
};

struct RdCurve {
  std::string label;
  std::vector<RdPoint> points;

  // Throws Error("need at least 4 points"), Error("invalid rate") or
  // Error("rates not increasing").
  void Validate() const;
};

inline constexpr size_t kMinBdPoints = 4;

// Average rate difference of `test` against `anchor` at equal quality, in
// percent (negative: `test` needs fewer bits). Log-rate is fitted as a cubic
// in quality; a monotone piecewise-cubic Hermite interpolant replaces the fit
// when the cubic is not monotone over the data. Throws Error("no overlap").
double BdRate(const RdCurve& anchor, const RdCurve& test);
// Average quality difference at equal log-rate, in dB.
double BdPsnr(const RdCurve& anchor, const RdCurve& test);

// Least-squares cubic through (x, y); coefficients c0..c3 of the powers of x.
std::vector<double> FitCubic(std::span<const double> x, std::span<const double> y);

// Fritsch-Carlson monotone cubic Hermite interpolant.
class Pchip {
 public:
  // x strictly increasing; throws Error("degenerate curve") otherwise.
  Pchip(std::vector<double> x, std::vector<double> y);
  double operator()(double t) const;
  // Integral over [a, b] within the data range.
  double Integral(double a, double b) const;

 private:
  std::vector<double> x_, y_, d_;
};

}  // namespace ltc

#endif  // LTC_BD_METRIC_H_
