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

#include "ltc/pmf_builders.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ltc/error.h"
#include "ltc/gaussian.h"
#include "ltc/quadrature.h"

namespace ltc {

MassFn GaussianMassFn(double mu, double sigma) {
  sigma = std::max(sigma, kSigmaMin);
  return [mu, sigma](double lo, double hi) {
    return NormalMass(lo, hi, mu, sigma);
  };
}

MassFn FactorizedMassFn(const FactorizedPdf& pdf) {
  return [&pdf](double lo, double hi) { return pdf.Mass(lo, hi); };
}

std::vector<double> ScalarCellMasses(const MassFn& mass, double bin_width,
                                     const Dictionary& dict) {
  if (dict.lattice().dim() != 1) throw Error("scalar table needs a 1D dictionary");
  if (!(bin_width > 0.0)) throw Error("invalid bin width");
  std::vector<double> raw(dict.size());
  for (size_t i = 0; i < dict.size(); ++i) {
    const double c = dict[i].coords[0];
    raw[i] = mass(c - 0.5 * bin_width, c + 0.5 * bin_width);
  }
  return raw;
}

PmfTable PmfScalar(const MassFn& mass, double bin_width, const Dictionary& dict,
                   int precision) {
  return PmfTable::FromProbabilities(ScalarCellMasses(mass, bin_width, dict),
                                     precision);
}

double HexCellMass(const Lattice& hex, const Vec& center,
                   std::span<const double> mu, std::span<const double> sigma) {
  const double a = hex.side_length();
  const double half_width = 0.5 * std::numbers::sqrt3 * a;
  const double inv_sqrt3 = 1.0 / std::numbers::sqrt3;
  const double sx = std::max(sigma[0], kSigmaMin);
  const double sy = std::max(sigma[1], kSigmaMin);
  const double cx = center[0];
  const double cy = center[1];

  // Cells this far out carry no representable mass.
  if (NormalMass(cx - half_width, cx + half_width, mu[0], sx) == 0.0 ||
      NormalMass(cy - a, cy + a, mu[1], sy) == 0.0) {
    return 0.0;
  }
  auto inner = [&](double x) {
    const double w = a - std::abs(x - cx) * inv_sqrt3;
    if (w <= 0.0) return 0.0;
    return NormalPdf(x, mu[0], sx) * NormalMass(cy - w, cy + w, mu[1], sy);
  };
  const double tol = 0.5 * kHexCellTolerance;
  return AdaptiveSimpson(inner, cx - half_width, cx, tol) +
         AdaptiveSimpson(inner, cx, cx + half_width, tol);
}

std::vector<double> HexCellMasses(std::span<const double> mu,
                                  std::span<const double> sigma,
                                  const Dictionary& dict) {
  if (dict.lattice().kind() != LatticeKind::kHex2D) {
    throw Error("hexagonal table needs a Hex2D dictionary");
  }
  if (mu.size() < 2 || sigma.size() < 2) throw Error("invalid input");
  std::vector<double> raw(dict.size());
  for (size_t i = 0; i < dict.size(); ++i) {
    raw[i] = HexCellMass(dict.lattice(), dict[i].coords, mu, sigma);
  }
  return raw;
}

PmfTable PmfHex(std::span<const double> mu, std::span<const double> sigma,
                const Dictionary& dict, int precision) {
  return PmfTable::FromProbabilities(HexCellMasses(mu, sigma, dict), precision);
}

std::vector<double> MonteCarloCellMasses(const PointSampler& sampler,
                                         const Dictionary& dict,
                                         uint64_t samples, uint64_t seed) {
  if (samples == 0) throw Error("too few samples");
  const int dim = dict.lattice().dim();
  std::vector<uint64_t> counts(dict.size(), 0);
  Rng rng(seed);
  Vec point{};
  std::span<double> view(point.data(), dim);
  for (uint64_t s = 0; s < samples; ++s) {
    sampler(rng, view);
    ++counts[dict.Quantize(view)];
  }
  std::vector<double> raw(dict.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    raw[i] = static_cast<double>(counts[i]) / static_cast<double>(samples);
  }
  return raw;
}

namespace {

PointSampler GaussianSampler(std::span<const double> mu,
                             std::span<const double> sigma, int dim) {
  Vec m{}, s{};
  for (int i = 0; i < dim; ++i) {
    m[i] = mu[i];
    s[i] = std::max(sigma[i], kSigmaMin);
  }
  return [m, s](Rng& rng, std::span<double> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = rng.Normal(m[i], s[i]);
  };
}

}  // namespace

PmfTable PmfMonteCarlo(std::span<const double> mu, std::span<const double> sigma,
                       const Dictionary& dict, uint64_t samples, uint64_t seed,
                       int precision) {
  if (samples < kMinMonteCarloSamples) throw Error("too few samples");
  const int dim = dict.lattice().dim();
  if (mu.size() < static_cast<size_t>(dim) ||
      sigma.size() < static_cast<size_t>(dim)) {
    throw Error("invalid input");
  }
  return PmfTable::FromProbabilities(
      MonteCarloCellMasses(GaussianSampler(mu, sigma, dim), dict, samples, seed),
      precision);
}

std::vector<double> GaussianCellMasses(std::span<const double> mu,
                                       std::span<const double> sigma,
                                       const Dictionary& dict,
                                       uint64_t mc_samples, uint64_t mc_seed) {
  switch (dict.lattice().kind()) {
    case LatticeKind::kInteger1D:
      return ScalarCellMasses(GaussianMassFn(mu[0], sigma[0]),
                              dict.lattice().volume(), dict);
    case LatticeKind::kHex2D:
      return HexCellMasses(mu, sigma, dict);
    case LatticeKind::kTruncOct3D:
      return MonteCarloCellMasses(GaussianSampler(mu, sigma, 3), dict,
                                  mc_samples, mc_seed);
  }
  throw Error("invalid lattice");
}

}  // namespace ltc
