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

#ifndef LTC_COMPANDING_H_
#define LTC_COMPANDING_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ltc {

// Non-uniform scalar quantizer: cell i (1-based) is [borders[i-1],
// borders[i]) and reconstructs to centers[i-1].
struct ScalarQuantMap {
  std::vector<double> borders;  // n + 1 values
  std::vector<double> centers;  // n values

  size_t cells() const { return centers.size(); }
  // Interleaved knots b_0, c_1, b_1, ..., c_n, b_n. Throws
  // Error("non-monotone map") unless strictly increasing and finite.
  std::vector<double> Knots() const;
  // Direct quantization: 1-based cell index, clamped to [1, n].
  size_t CellOf(double y) const;
};

// Piecewise-linear monotone map sending knot k of the map to 0.5 * (k + 1),
// so centers land on the integers 1..n and borders on the half-integers.
// Both end segments extend linearly beyond the knot span.
class Compander {
 public:
  explicit Compander(const ScalarQuantMap& map);

  double Forward(double y) const;
  // Exact at the knots: Inverse(Forward(knot)) returns the stored knot.
  double Inverse(double z) const;
  // Slope of the inverse at z (constant on each segment).
  double InverseSlope(double z) const;
  // Uniform-pipeline index round(f(y)) clamped to [1, n].
  size_t Quantize(double y) const;
  // f^{-1}(i) for a 1-based cell index.
  double Reconstruct(size_t i) const { return Inverse(static_cast<double>(i)); }

  std::span<const double> knots() const { return knots_; }
  size_t cells() const { return cells_; }

 private:
  size_t Segment(double value, std::span<const double> grid) const;

  std::vector<double> knots_;   // domain knots
  std::vector<double> images_;  // 0.5, 1, 1.5, ...
  size_t cells_;
};

Compander BuildCompander(const ScalarQuantMap& map);

struct EquivalenceReport {
  double pmf_max_abs_diff = 0.0;
  bool reconstruction_exact = true;
  size_t samples_checked = 0;
  size_t mismatches = 0;
};

// Compares cell probabilities of the direct pipeline (source mass over
// [b_{i-1}, b_i]) with the companded one (pushed-forward density over
// [i - 0.5, i + 0.5]), both by adaptive quadrature, and checks that
// f^{-1}(round(f(y))) equals the direct reconstruction for every sample.
EquivalenceReport EquivalenceCheck(const ScalarQuantMap& map,
                                   const std::function<double(double)>& source_pdf,
                                   std::span<const double> samples,
                                   double quadrature_tol = 1e-10);

}  // namespace ltc

#endif  // LTC_COMPANDING_H_
