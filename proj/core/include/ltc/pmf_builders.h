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

#ifndef LTC_PMF_BUILDERS_H_
#define LTC_PMF_BUILDERS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ltc/factorized_pdf.h"
#include "ltc/lattice.h"
#include "ltc/pmf.h"
#include "ltc/random.h"

namespace ltc {

// Probability mass of a 1D density on [lo, hi].
using MassFn = std::function<double(double lo, double hi)>;

MassFn GaussianMassFn(double mu, double sigma);
// The pdf must outlive the returned function.
MassFn FactorizedMassFn(const FactorizedPdf& pdf);

// Raw mass of each width-w bin centred on the dictionary's 1D centers.
std::vector<double> ScalarCellMasses(const MassFn& mass, double bin_width,
                                     const Dictionary& dict);
PmfTable PmfScalar(const MassFn& mass, double bin_width, const Dictionary& dict,
                   int precision = kDefaultPrecision);

// Absolute tolerance of each hexagonal cell integral.
inline constexpr double kHexCellTolerance = 1e-8;

// Mass of N(mu, diag(sigma^2)) over the hexagonal cell at `center`. The cell
// is split along its symmetry axis into two trapezoids; across the axis the
// Gaussian integrates in closed form, and along it adaptive Simpson does the
// rest. Throws Error("integration failed") on non-convergence.
double HexCellMass(const Lattice& hex, const Vec& center,
                   std::span<const double> mu, std::span<const double> sigma);
std::vector<double> HexCellMasses(std::span<const double> mu,
                                  std::span<const double> sigma,
                                  const Dictionary& dict);
PmfTable PmfHex(std::span<const double> mu, std::span<const double> sigma,
                const Dictionary& dict, int precision = kDefaultPrecision);

// Draws one point of the source into `out` (length = lattice dimension).
using PointSampler = std::function<void(Rng& rng, std::span<double> out)>;

inline constexpr uint64_t kMinMonteCarloSamples = 100000;

// Fraction of `samples` draws that quantize to each dictionary code.
// Deterministic for a fixed seed.
std::vector<double> MonteCarloCellMasses(const PointSampler& sampler,
                                         const Dictionary& dict,
                                         uint64_t samples, uint64_t seed);
// Product-Gaussian cell frequencies; throws Error("too few samples") below
// kMinMonteCarloSamples. Empty cells get the fixed-point floor of 1.
PmfTable PmfMonteCarlo(std::span<const double> mu, std::span<const double> sigma,
                       const Dictionary& dict, uint64_t samples, uint64_t seed,
                       int precision = kDefaultPrecision);

// Exact cell masses for Integer1D/Hex2D, Monte Carlo for TruncOct3D.
std::vector<double> GaussianCellMasses(std::span<const double> mu,
                                       std::span<const double> sigma,
                                       const Dictionary& dict,
                                       uint64_t mc_samples, uint64_t mc_seed);

}  // namespace ltc

#endif  // LTC_PMF_BUILDERS_H_
