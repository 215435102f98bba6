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

#include "ltc/companding.h"

#include <algorithm>
#include <cmath>

#include "ltc/error.h"
#include "ltc/quadrature.h"

namespace ltc {

std::vector<double> ScalarQuantMap::Knots() const {
  if (centers.empty() || borders.size() != centers.size() + 1) {
    throw Error("non-monotone map");
  }
  std::vector<double> knots;
  knots.reserve(2 * centers.size() + 1);
  knots.push_back(borders[0]);
  for (size_t i = 0; i < centers.size(); ++i) {
    knots.push_back(centers[i]);
    knots.push_back(borders[i + 1]);
  }
  for (size_t k = 0; k < knots.size(); ++k) {
    if (!std::isfinite(knots[k]) || (k > 0 && !(knots[k] > knots[k - 1]))) {
      throw Error("non-monotone map");
    }
  }
  return knots;
}

size_t ScalarQuantMap::CellOf(double y) const {
  const auto it = std::upper_bound(borders.begin() + 1, borders.end() - 1, y);
  return static_cast<size_t>(it - borders.begin());
}

Compander::Compander(const ScalarQuantMap& map)
    : knots_(map.Knots()), cells_(map.cells()) {
  images_.resize(knots_.size());
  for (size_t k = 0; k < knots_.size(); ++k) images_[k] = 0.5 * (k + 1.0);
}

size_t Compander::Segment(double value, std::span<const double> grid) const {
  const auto it = std::upper_bound(grid.begin() + 1, grid.end() - 1, value);
  return static_cast<size_t>(it - grid.begin()) - 1;
}

double Compander::Forward(double y) const {
  const size_t s = Segment(y, knots_);
  if (y == knots_[s]) return images_[s];
  const double t = (y - knots_[s]) / (knots_[s + 1] - knots_[s]);
  return images_[s] + t * (images_[s + 1] - images_[s]);
}

double Compander::Inverse(double z) const {
  const size_t s = Segment(z, images_);
  if (z == images_[s]) return knots_[s];
  if (z == images_[s + 1]) return knots_[s + 1];
  const double t = (z - images_[s]) / (images_[s + 1] - images_[s]);
  return knots_[s] + t * (knots_[s + 1] - knots_[s]);
}

double Compander::InverseSlope(double z) const {
  const size_t s = Segment(z, images_);
  return (knots_[s + 1] - knots_[s]) / (images_[s + 1] - images_[s]);
}

size_t Compander::Quantize(double y) const {
  const double r = std::round(Forward(y));
  return static_cast<size_t>(std::clamp(r, 1.0, static_cast<double>(cells_)));
}

Compander BuildCompander(const ScalarQuantMap& map) { return Compander(map); }

EquivalenceReport EquivalenceCheck(const ScalarQuantMap& map,
                                   const std::function<double(double)>& source_pdf,
                                   std::span<const double> samples,
                                   double quadrature_tol) {
  const Compander f(map);
  const auto knots = f.knots();
  EquivalenceReport report;
  // Pushed-forward density on one linear piece [z0, z1]. The slope is taken
  // from the piece itself so the endpoints do not pick up a neighbour's.
  auto pushed_mass = [&](double z0, double z1) {
    const double slope = (f.Inverse(z1) - f.Inverse(z0)) / (z1 - z0);
    return AdaptiveSimpson([&](double z) { return source_pdf(f.Inverse(z)) * slope; }, z0, z1,
                           quadrature_tol);
  };
  for (size_t i = 1; i <= map.cells(); ++i) {
    // Each cell spans two linear pieces; integrate them separately so the
    // integrands stay smooth.
    const double b0 = knots[2 * i - 2], c = knots[2 * i - 1], b1 = knots[2 * i];
    const double direct = AdaptiveSimpson(source_pdf, b0, c, quadrature_tol) +
                          AdaptiveSimpson(source_pdf, c, b1, quadrature_tol);
    const double z = static_cast<double>(i);
    const double companded = pushed_mass(z - 0.5, z) + pushed_mass(z, z + 0.5);
    report.pmf_max_abs_diff =
        std::max(report.pmf_max_abs_diff, std::abs(direct - companded));
  }
  for (double y : samples) {
    ++report.samples_checked;
    if (f.Reconstruct(f.Quantize(y)) != map.centers[map.CellOf(y) - 1]) {
      ++report.mismatches;
    }
  }
  report.reconstruction_exact = report.mismatches == 0;
  return report;
}

}  // namespace ltc
