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

#ifndef LTC_RD_SIM_H_
#define LTC_RD_SIM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltc/bd_metric.h"
#include "ltc/lattice.h"

namespace ltc {

enum class SourceKind { kUniform, kGaussian };

struct RdSimConfig {
  SourceKind source = SourceKind::kGaussian;
  double uniform_half = 4.0;           // U(-half, half) per axis
  std::vector<double> scales = {1.0};  // zero-mean Gaussian standard deviations
  std::vector<LatticeKind> lattices = {LatticeKind::kInteger1D, LatticeKind::kHex2D,
                                       LatticeKind::kTruncOct3D};
  std::vector<double> volumes = {1.0};  // cell volumes
  uint64_t samples = 1000000;           // lattice points drawn per row
  uint64_t seed = 0;
  bool measured = false;  // rate from the rANS payload instead of cross-entropy
  double bound_sigmas = 6.0;
  uint64_t mc_samples = 1000000;  // for tables without a closed form
  int precision = 20;

  // Throws Error("empty simulation") for samples == 0 and
  // Error("invalid config: <key>") for other bad fields.
  void Validate() const;
  // key=value; lists are comma separated. Keys: source (uniform | gaussian),
  // uniform_half, scales, lattices, volumes, samples, seed, measured,
  // bound_sigmas, mc_samples, precision. Throws
  // Error("unknown config key: <key>").
  void Set(const std::string& key, const std::string& value);
  static RdSimConfig FromText(const std::string& text);
};

struct RdRow {
  LatticeKind lattice = LatticeKind::kInteger1D;
  double scale = 0.0;   // Gaussian sigma, or the uniform half-width
  double volume = 0.0;
  double rate_bps = 0.0;  // bits per scalar sample
  double mse = 0.0;       // per scalar sample
  double psnr_db = 0.0;   // peak 1
};

// One row per (lattice, scale, volume), sorted in that order (lattices in
// enum order). Each row draws `samples` points from its own seeded stream.
std::vector<RdRow> SimulateRd(const RdSimConfig& config);
RdRow SimulateRdCell(const RdSimConfig& config, LatticeKind lattice, double scale,
                     double volume);

// Header "lattice,scale,volume,rate_bps,mse,psnr_db" plus one line per row.
std::string RdRowsToCsv(std::span<const RdRow> rows);
// Throws Error("bad csv: ...") on malformed input.
std::vector<RdRow> ParseRdCsv(const std::string& text);
// Rows sorted by rate as an RD curve (quality = PSNR).
RdCurve CurveFromRows(std::span<const RdRow> rows, const std::string& label);

// Per-dimension MSE of quantizing points drawn uniformly from the
// fundamental parallelepiped spanned by the lattice basis. Such points are
// uniform modulo the lattice, so the error is uniform over one Voronoi cell
// and no truncated boundary cells enter the estimate.
double EmpiricalSecondMoment(LatticeKind kind, double volume, uint64_t samples,
                             uint64_t seed);

// BD-rate (percent) of `vq` against Integer1D on the configured source (its
// first scale), sweeping per-dimension steps u: the VQ cell volume is u^v.
// Needs >= 4 steps spanning >= 2 octaves.
double VqVsSqBdRate(const RdSimConfig& config, LatticeKind vq,
                    std::span<const double> steps);

}  // namespace ltc

#endif  // LTC_RD_SIM_H_
