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

#include "ltc/codec.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <memory>

#include "ltc/error.h"
#include "ltc/pmf.h"
#include "ltc/pmf_builders.h"
#include "ltc/random.h"
#include "ltc/rans.h"

namespace ltc {
namespace {

int TablePrecision(size_t codes) {
  const int bits = static_cast<int>(std::bit_width(codes > 1 ? codes - 1 : 1));
  return std::clamp(bits + 6, kDefaultPrecision, kMaxPrecision);
}

uint64_t HashKey(uint64_t seed, std::span<const double> key) {
  uint64_t h = seed;
  for (double v : key) h = DeriveSeed(h, std::bit_cast<uint64_t>(v));
  return h;
}

// Per-channel scalar coding of the side latents.
class SideCoder {
 public:
  explicit SideCoder(const SyntheticModel& model) {
    const Lattice unit(LatticeKind::kInteger1D, SyntheticModel::kSideBinWidth);
    for (const FactorizedPdf& pdf : model.side_pdfs()) {
      Box box;
      box.lo[0] = std::floor(pdf.lo());
      box.hi[0] = std::ceil(pdf.hi());
      bounds_.lo[0] = std::min(bounds_.lo[0], box.lo[0]);
      bounds_.hi[0] = std::max(bounds_.hi[0], box.hi[0]);
      dicts_.push_back(Dictionary::Enumerate(unit, box));
      pool_.tables.push_back(PmfScalar(FactorizedMassFn(pdf),
                                       SyntheticModel::kSideBinWidth, dicts_.back()));
      index_.push_back(static_cast<uint32_t>(index_.size()));
    }
  }

  const Dictionary& dict(size_t k) const { return dicts_[k]; }
  const TablePool& pool() const { return pool_; }
  std::span<const uint32_t> index() const { return index_; }
  const Box& bounds() const { return bounds_; }

 private:
  std::vector<Dictionary> dicts_;
  TablePool pool_;
  std::vector<uint32_t> index_;
  Box bounds_{{INFINITY, 0, 0}, {-INFINITY, 0, 0}};
};

// Main-latent layout derived from the unshifted field, which encoder and
// decoder both know: grouping, dictionaries, and coding tables for any field.
class MainCoder {
 public:
  MainCoder(const SyntheticModel& model, LatticeKind kind, double volume,
            double bound_sigmas, const GaussianField& field0)
      : model_(model), mu0_(field0.mu) {
    const int v = Dimension(kind);
    const double step = std::pow(volume, 1.0 / v);
    groups_ = GroupLatents(field0.sigma, v);
    std::map<std::vector<double>, size_t> cache;
    for (const LatentGroup& g : groups_) {
      std::vector<double> key = {static_cast<double>(g.dim)};
      Box box;
      for (int a = 0; a < g.dim; ++a) {
        const double half = bound_sigmas * field0.sigma[g.start + a];
        box.lo[a] = -half;
        box.hi[a] = half;
        key.push_back(half);
      }
      auto [it, inserted] = cache.try_emplace(key, dicts_.size());
      if (inserted) {
        const Lattice lattice = g.dim == v ? Lattice(kind, volume)
                                           : Lattice(LatticeKind::kInteger1D, step);
        dicts_.push_back(std::make_unique<Dictionary>(Dictionary::Enumerate(lattice, box)));
      }
      group_dict_.push_back(it->second);
    }
  }

  std::span<const LatentGroup> groups() const { return groups_; }
  const Dictionary& dict(size_t group) const { return *dicts_[group_dict_[group]]; }

  // Codes the residual y - mu0; writes the reconstruction into y_hat.
  std::vector<uint32_t> Quantize(std::span<const double> y,
                                 std::vector<double>& y_hat) const {
    std::vector<uint32_t> codes(groups_.size());
    y_hat.assign(y.size(), 0.0);
    double r[kMaxLatticeDim];
    for (size_t gi = 0; gi < groups_.size(); ++gi) {
      const LatentGroup& g = groups_[gi];
      for (int a = 0; a < g.dim; ++a) r[a] = y[g.start + a] - mu0_[g.start + a];
      const Dictionary& d = dict(gi);
      codes[gi] = static_cast<uint32_t>(d.Quantize(std::span<const double>(r, g.dim)));
      Reconstruct(gi, codes[gi], y_hat);
    }
    return codes;
  }

  void Reconstruct(size_t gi, uint32_t code, std::vector<double>& y_hat) const {
    const LatentGroup& g = groups_[gi];
    const LatticePoint& p = dict(gi)[code];
    for (int a = 0; a < g.dim; ++a) y_hat[g.start + a] = mu0_[g.start + a] + p.coords[a];
  }

  // Tables of N(mu - mu0, sigma) over each group's dictionary.
  TablePool Pool(const GaussianField& field, std::vector<uint32_t>& index) const {
    TablePool pool;
    index.assign(groups_.size(), 0);
    std::map<std::vector<double>, uint32_t> cache;
    double mu[kMaxLatticeDim], sigma[kMaxLatticeDim];
    for (size_t gi = 0; gi < groups_.size(); ++gi) {
      const LatentGroup& g = groups_[gi];
      std::vector<double> key = {static_cast<double>(group_dict_[gi])};
      for (int a = 0; a < g.dim; ++a) {
        mu[a] = field.mu[g.start + a] - mu0_[g.start + a];
        sigma[a] = field.sigma[g.start + a];
        key.push_back(mu[a]);
        key.push_back(sigma[a]);
      }
      auto [it, inserted] = cache.try_emplace(key, static_cast<uint32_t>(pool.tables.size()));
      if (inserted) {
        pool.tables.push_back(BuildTable(gi, std::span<const double>(mu, g.dim),
                                         std::span<const double>(sigma, g.dim), key));
      }
      index[gi] = it->second;
    }
    return pool;
  }

  double Bits(std::span<const uint32_t> codes, const GaussianField& field) const {
    std::vector<uint32_t> index;
    const TablePool pool = Pool(field, index);
    return RateLowerBound(codes, pool, index);
  }

 private:
  PmfTable BuildTable(size_t gi, std::span<const double> mu,
                      std::span<const double> sigma,
                      std::span<const double> key) const {
    const Dictionary& d = dict(gi);
    const int precision = TablePrecision(d.size());
    switch (d.lattice().kind()) {
      case LatticeKind::kInteger1D:
        return PmfScalar(GaussianMassFn(mu[0], sigma[0]), d.lattice().volume(), d,
                         precision);
      case LatticeKind::kHex2D:
        return PmfHex(mu, sigma, d, precision);
      case LatticeKind::kTruncOct3D:
        return PmfMonteCarlo(mu, sigma, d, model_.config().mc_samples,
                             HashKey(model_.seed(), key), precision);
    }
    throw Error("invalid lattice");
  }

  const SyntheticModel& model_;
  std::vector<double> mu0_;
  std::vector<LatentGroup> groups_;
  std::vector<std::unique_ptr<Dictionary>> dicts_;
  std::vector<size_t> group_dict_;
};

std::vector<double> SideValues(const SideCoder& side, std::span<const uint32_t> codes) {
  std::vector<double> z_hat(codes.size());
  for (size_t k = 0; k < codes.size(); ++k) z_hat[k] = side.dict(k)[codes[k]].coords[0];
  return z_hat;
}

}  // namespace

std::vector<LatentGroup> GroupLatents(std::span<const double> sigma, int dim) {
  if (dim < 1 || dim > kMaxLatticeDim) throw Error("invalid group size");
  std::vector<LatentGroup> groups;
  size_t i = 0;
  while (i < sigma.size()) {
    const double bin = std::floor(std::log(sigma[i]) / kGroupLogBinWidth);
    size_t end = i + 1;
    while (end < sigma.size() &&
           std::floor(std::log(sigma[end]) / kGroupLogBinWidth) == bin) {
      ++end;
    }
    const size_t full = (end - i) / dim * dim;
    for (size_t j = i; j < i + full; j += dim) {
      groups.push_back({static_cast<uint32_t>(j), static_cast<uint8_t>(dim)});
    }
    for (size_t j = i + full; j < end; ++j) {
      groups.push_back({static_cast<uint32_t>(j), 1});
    }
    i = end;
  }
  return groups;
}

std::vector<uint8_t> EncodedStreams::Serialize() const {
  std::vector<uint8_t> out = WriteBitstream(side);
  const std::vector<uint8_t> m = WriteBitstream(main);
  out.insert(out.end(), m.begin(), m.end());
  return out;
}

EncodedStreams EncodedStreams::Parse(std::span<const uint8_t> bytes, size_t* consumed) {
  EncodedStreams s;
  size_t used_side = 0, used_main = 0;
  s.side = ReadBitstream(bytes, &used_side);
  s.main = ReadBitstream(bytes.subspan(used_side), &used_main);
  if (consumed != nullptr) *consumed = used_side + used_main;
  return s;
}

double Psnr(double mse, double peak) {
  if (mse <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

DistortionFn LatentDistortion(const CodecInstance& instance) {
  const double n = static_cast<double>(instance.x.size());
  return [y0 = instance.y0, res = instance.residual_energy, n](std::span<const double> y) {
    double sum = res;
    for (size_t i = 0; i < y.size(); ++i) sum += (y[i] - y0[i]) * (y[i] - y0[i]);
    return sum / n;
  };
}

DistortionGradFn LatentDistortionGradient(const CodecInstance& instance) {
  const double n = static_cast<double>(instance.x.size());
  return [y0 = instance.y0, n](std::span<const double> y) {
    std::vector<double> g(y.size());
    for (size_t i = 0; i < y.size(); ++i) g[i] = 2.0 / n * (y[i] - y0[i]);
    return g;
  };
}

EncodeResult EncodeFull(std::span<const double> x, const SyntheticModel& model,
                        const CodecOptions& options) {
  static_cast<void>(Lattice(options.lattice, options.volume));
  EncodeResult result;
  CodecInstance& inst = result.instance;
  inst.x.assign(x.begin(), x.end());
  inst.y0 = model.Analyze(x);
  {
    const std::vector<double> proj = model.Decode(inst.y0);
    for (size_t i = 0; i < x.size(); ++i) {
      inst.residual_energy += (x[i] - proj[i]) * (x[i] - proj[i]);
    }
  }
  inst.z = model.SideDown(inst.y0);

  const SideCoder side(model);
  std::vector<uint32_t> side_codes(inst.z.size());
  for (size_t k = 0; k < inst.z.size(); ++k) {
    side_codes[k] = static_cast<uint32_t>(side.dict(k).Quantize(std::span(&inst.z[k], 1)));
  }
  const std::vector<double> z_hat0 = SideValues(side, side_codes);
  const GaussianField field0 = model.Hyper(z_hat0);
  inst.y = model.RateAwareEncode(inst.y0, field0);

  const double bound = model.config().bound_sigmas;
  const MainCoder main(model, options.lattice, options.volume, bound, field0);
  const std::vector<uint32_t> main_codes = main.Quantize(inst.y, inst.y_hat_unshifted);

  inst.z_hat = z_hat0;
  if (options.shift) {
    const ShiftResult s = SearchStepSide(
        z_hat0, model.side_pdfs(), SyntheticModel::kSideBinWidth,
        [&](std::span<const double> z) { return model.Hyper(z); },
        [&](const GaussianField& f) {
          // A field whose tables cannot be built is never selected.
          try {
            return main.Bits(main_codes, f);
          } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
          }
        });
    inst.step_code_f = s.code;
    inst.z_hat = s.shifted;
  }
  inst.field = model.Hyper(inst.z_hat);

  std::vector<uint32_t> main_index;
  const TablePool main_pool = main.Pool(inst.field, main_index);
  inst.main_bits = RateLowerBound(main_codes, main_pool, main_index);
  inst.side_bits = RateLowerBound(side_codes, side.pool(), side.index());

  inst.y_hat = inst.y_hat_unshifted;
  if (options.shift) {
    const ShiftResult s =
        SearchStepMain(LatentDistortion(inst), inst.y_hat_unshifted, inst.field,
                       StepCandidates::ForField(inst.field));
    inst.step_code_h = s.code;
    inst.y_hat = s.shifted;
  }
  inst.x_hat = model.Decode(inst.y_hat);
  inst.mse = Mse(inst.x, inst.x_hat);
  inst.psnr_db = Psnr(inst.mse);

  BitstreamHeader common;
  common.step_code_f = inst.step_code_f;
  common.step_code_h = inst.step_code_h;
  common.shifts_enabled = options.shift;

  Bitstream& sb = result.streams.side;
  sb.header = common;
  sb.header.lattice = LatticeKind::kInteger1D;
  sb.header.volume = SyntheticModel::kSideBinWidth;
  sb.header.bounds = side.bounds();
  sb.header.table_hash = side.pool().Hash();
  sb.header.code_count = static_cast<uint32_t>(side_codes.size());
  sb.payload = RansEncode(side_codes, side.pool(), side.index());

  Bitstream& mb = result.streams.main;
  mb.header = common;
  mb.header.lattice = options.lattice;
  mb.header.volume = options.volume;
  const int v = Dimension(options.lattice);
  for (int a = 0; a < v; ++a) {
    mb.header.bounds.lo[a] = -bound;
    mb.header.bounds.hi[a] = bound;
  }
  mb.header.table_hash = main_pool.Hash();
  mb.header.code_count = static_cast<uint32_t>(main_codes.size());
  mb.payload = RansEncode(main_codes, main_pool, main_index);

  inst.side_payload_bytes = sb.payload.size();
  inst.main_payload_bytes = mb.payload.size();
  return result;
}

DecodeResult DecodeFull(const EncodedStreams& streams, const SyntheticModel& model) {
  const Bitstream& sb = streams.side;
  const Bitstream& mb = streams.main;
  if (sb.header.lattice != LatticeKind::kInteger1D ||
      sb.header.code_count != model.side()) {
    throw Error("model mismatch");
  }
  const SideCoder side(model);
  const std::vector<uint32_t> side_codes = RansDecode(
      sb.payload, sb.header.code_count, side.pool(), side.index(), sb.header.table_hash);
  const std::vector<double> z_hat0 = SideValues(side, side_codes);
  const GaussianField field0 = model.Hyper(z_hat0);

  const double bound = mb.header.bounds.hi[0];
  if (!(bound > 0.0) || !std::isfinite(bound)) throw Error("corrupt header");
  const MainCoder main(model, mb.header.lattice, mb.header.volume, bound, field0);
  if (mb.header.code_count != main.groups().size()) throw Error("model mismatch");

  const bool shift = mb.header.shifts_enabled;
  DecodeResult out;
  out.z_hat = z_hat0;
  if (shift && mb.header.step_code_f != StepCandidates::kZeroCode) {
    out.z_hat = ApplySideShiftDecode(z_hat0, model.side_pdfs(),
                                     SyntheticModel::kSideBinWidth, mb.header.step_code_f);
  }
  const GaussianField field = model.Hyper(out.z_hat);
  std::vector<uint32_t> main_index;
  const TablePool pool = main.Pool(field, main_index);
  const std::vector<uint32_t> codes = RansDecode(
      mb.payload, mb.header.code_count, pool, main_index, mb.header.table_hash);

  std::vector<double> y_hat(model.m(), 0.0);
  for (size_t gi = 0; gi < codes.size(); ++gi) main.Reconstruct(gi, codes[gi], y_hat);
  if (shift) {
    y_hat = ApplyShiftDecode(y_hat, field, mb.header.step_code_h,
                             StepCandidates::ForField(field));
  }
  out.x_hat = model.Decode(y_hat);
  out.y_hat = std::move(y_hat);
  return out;
}

}  // namespace ltc
