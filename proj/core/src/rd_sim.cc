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

#include "ltc/rd_sim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ltc/error.h"
#include "ltc/pmf.h"
#include "ltc/pmf_builders.h"
#include "ltc/random.h"
#include "ltc/rans.h"

namespace ltc {
namespace {

constexpr const char* kCsvHeader = "lattice,scale,volume,rate_bps,mse,psnr_db";

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitList(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(Trim(item));
  return out;
}

double ToDouble(const std::string& key, const std::string& v) {
  size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    throw Error("invalid config: " + key);
  }
  if (used != v.size() || !std::isfinite(d)) throw Error("invalid config: " + key);
  return d;
}

uint64_t ToCount(const std::string& key, const std::string& v) {
  size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &used);
  } catch (const std::exception&) {
    throw Error("invalid config: " + key);
  }
  if (used != v.size() || v.find('-') != std::string::npos) {
    throw Error("invalid config: " + key);
  }
  return n;
}

// "start:stop:step", inclusive of stop.
std::vector<double> ParseRange(const std::string& key, const std::string& v) {
  const std::vector<std::string> parts = SplitList(v, ':');
  if (parts.size() != 3) throw Error("invalid config: " + key);
  const double start = ToDouble(key, parts[0]);
  const double stop = ToDouble(key, parts[1]);
  const double step = ToDouble(key, parts[2]);
  if (!(step > 0.0) || stop < start) throw Error("invalid config: " + key);
  const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (long i = 0; i < count; ++i) {
    // Round to 12 significant digits so 0.5 + 3 * 0.1 becomes 0.8.
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", start + step * static_cast<double>(i));
    out.push_back(std::stod(buf));
  }
  return out;
}

std::vector<double> ParseDoubles(const std::string& key, const std::string& v) {
  if (v.find(':') != std::string::npos) return ParseRange(key, v);
  std::vector<double> out;
  for (const std::string& item : SplitList(v, ',')) out.push_back(ToDouble(key, item));
  if (out.empty()) throw Error("invalid config: " + key);
  return out;
}

uint64_t CellSeed(uint64_t seed, LatticeKind kind, double scale, double volume) {
  uint64_t s = DeriveSeed(seed, static_cast<uint64_t>(kind));
  s = DeriveSeed(s, std::bit_cast<uint64_t>(scale));
  return DeriveSeed(s, std::bit_cast<uint64_t>(volume));
}

PmfTable BuildTable(const RdSimConfig& c, const Dictionary& dict, double scale,
                    uint64_t cell_seed) {
  const int v = dict.lattice().dim();
  const uint64_t mc_seed = DeriveSeed(cell_seed, 1);
  if (c.source == SourceKind::kGaussian) {
    const double mu[3] = {0.0, 0.0, 0.0};
    const double sigma[3] = {scale, scale, scale};
    switch (dict.lattice().kind()) {
      case LatticeKind::kInteger1D:
        return PmfScalar(GaussianMassFn(0.0, scale), dict.lattice().volume(), dict,
                         c.precision);
      case LatticeKind::kHex2D:
        return PmfHex(std::span(mu, 2), std::span(sigma, 2), dict, c.precision);
      case LatticeKind::kTruncOct3D:
        return PmfMonteCarlo(std::span(mu, 3), std::span(sigma, 3), dict, c.mc_samples,
                             mc_seed, c.precision);
    }
  }
  const double half = scale;
  if (v == 1) {
    const MassFn mass = [half](double lo, double hi) {
      const double a = std::max(lo, -half), b = std::min(hi, half);
      return b > a ? (b - a) / (2.0 * half) : 0.0;
    };
    return PmfScalar(mass, dict.lattice().volume(), dict, c.precision);
  }
  const PointSampler sampler = [half](Rng& rng, std::span<double> out) {
    for (double& x : out) x = rng.Uniform(-half, half);
  };
  const std::vector<double> masses =
      MonteCarloCellMasses(sampler, dict, c.mc_samples, mc_seed);
  return PmfTable::FromProbabilities(masses, c.precision);
}

std::string Format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void RdSimConfig::Validate() const {
  if (samples == 0) throw Error("empty simulation");
  if (!(uniform_half > 0.0)) throw Error("invalid config: uniform_half");
  if (scales.empty()) throw Error("invalid config: scales");
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) throw Error("invalid config: scales");
  }
  if (lattices.empty()) throw Error("invalid config: lattices");
  if (volumes.empty()) throw Error("invalid config: volumes");
  for (double v : volumes) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("invalid config: volumes");
  }
  if (!(bound_sigmas > 0.0)) throw Error("invalid config: bound_sigmas");
  if (mc_samples < kMinMonteCarloSamples) throw Error("invalid config: mc_samples");
  if (precision < 1 || precision > kMaxPrecision) throw Error("invalid config: precision");
}

void RdSimConfig::Set(const std::string& key, const std::string& value) {
  if (key == "source") {
    if (value == "uniform") {
      source = SourceKind::kUniform;
    } else if (value == "gaussian") {
      source = SourceKind::kGaussian;
    } else {
      throw Error("invalid config: source");
    }
  } else if (key == "uniform_half") {
    uniform_half = ToDouble(key, value);
  } else if (key == "scales") {
    scales = ParseDoubles(key, value);
  } else if (key == "volumes") {
    volumes = ParseDoubles(key, value);
  } else if (key == "lattices") {
    lattices.clear();
    for (const std::string& name : SplitList(value, ',')) {
      try {
        lattices.push_back(ParseLatticeKind(name));
      } catch (const Error&) {
        throw Error("invalid config: lattices");
      }
    }
  } else if (key == "samples") {
    samples = ToCount(key, value);
  } else if (key == "seed") {
    seed = ToCount(key, value);
  } else if (key == "measured") {
    if (value != "0" && value != "1") throw Error("invalid config: measured");
    measured = value == "1";
  } else if (key == "bound_sigmas") {
    bound_sigmas = ToDouble(key, value);
  } else if (key == "mc_samples") {
    mc_samples = ToCount(key, value);
  } else if (key == "precision") {
    precision = static_cast<int>(ToCount(key, value));
  } else {
    throw Error("unknown config key: " + key);
  }
}

RdSimConfig RdSimConfig::FromText(const std::string& text) {
  RdSimConfig config;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("invalid config line: " + line);
    config.Set(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return config;
}

RdRow SimulateRdCell(const RdSimConfig& c, LatticeKind kind, double scale,
                     double volume) {
  const Lattice lattice(kind, volume);
  const int v = lattice.dim();
  const double half = c.source == SourceKind::kGaussian ? c.bound_sigmas * scale : scale;
  const Dictionary dict = Dictionary::Enumerate(lattice, SymmetricBox(v, half));
  const uint64_t cell_seed = CellSeed(c.seed, kind, scale, volume);
  const PmfTable table = BuildTable(c, dict, scale, cell_seed);
  std::vector<double> cost(table.size());
  for (size_t i = 0; i < table.size(); ++i) cost[i] = -std::log2(table.probability(i));

  Rng rng(DeriveSeed(cell_seed, 0));
  double x[kMaxLatticeDim];
  double err = 0.0, bits = 0.0;
  std::vector<uint32_t> codes;
  if (c.measured) codes.reserve(c.samples);
  for (uint64_t s = 0; s < c.samples; ++s) {
    for (int a = 0; a < v; ++a) {
      x[a] = c.source == SourceKind::kGaussian ? scale * rng.Normal()
                                               : rng.Uniform(-scale, scale);
    }
    const size_t code = dict.Quantize(std::span<const double>(x, v));
    const Vec& center = dict[code].coords;
    for (int a = 0; a < v; ++a) err += (x[a] - center[a]) * (x[a] - center[a]);
    bits += cost[code];
    if (c.measured) codes.push_back(static_cast<uint32_t>(code));
  }
  const double count = static_cast<double>(c.samples) * v;
  if (c.measured) {
    TablePool pool;
    pool.tables.push_back(table);
    const std::vector<uint32_t> index(codes.size(), 0);
    bits = 8.0 * static_cast<double>(RansEncode(codes, pool, index).size());
  }
  RdRow row;
  row.lattice = kind;
  row.scale = scale;
  row.volume = volume;
  row.rate_bps = bits / count;
  row.mse = err / count;
  row.psnr_db = row.mse > 0.0 ? 10.0 * std::log10(1.0 / row.mse)
                              : std::numeric_limits<double>::infinity();
  return row;
}

std::vector<RdRow> SimulateRd(const RdSimConfig& config) {
  config.Validate();
  std::vector<LatticeKind> lattices = config.lattices;
  std::sort(lattices.begin(), lattices.end());
  lattices.erase(std::unique(lattices.begin(), lattices.end()), lattices.end());
  std::vector<double> scales = config.source == SourceKind::kGaussian
                                   ? config.scales
                                   : std::vector<double>{config.uniform_half};
  std::sort(scales.begin(), scales.end());
  std::vector<double> volumes = config.volumes;
  std::sort(volumes.begin(), volumes.end());
  std::vector<RdRow> rows;
  for (LatticeKind kind : lattices) {
    for (double scale : scales) {
      for (double volume : volumes) {
        rows.push_back(SimulateRdCell(config, kind, scale, volume));
      }
    }
  }
  return rows;
}

std::string RdRowsToCsv(std::span<const RdRow> rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const RdRow& r : rows) {
    out += std::string(LatticeName(r.lattice)) + "," + Format(r.scale) + "," +
           Format(r.volume) + "," + Format(r.rate_bps) + "," + Format(r.mse) + "," +
           Format(r.psnr_db) + "\n";
  }
  return out;
}

std::vector<RdRow> ParseRdCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || Trim(line) != kCsvHeader) {
    throw Error("bad csv: expected header " + std::string(kCsvHeader));
  }
  std::vector<RdRow> rows;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> f = SplitList(line, ',');
    if (f.size() != 6) throw Error("bad csv: line " + std::to_string(line_no));
    RdRow r;
    try {
      r.lattice = ParseLatticeKind(f[0]);
      r.scale = std::stod(f[1]);
      r.volume = std::stod(f[2]);
      r.rate_bps = std::stod(f[3]);
      r.mse = std::stod(f[4]);
      r.psnr_db = std::stod(f[5]);
    } catch (const std::exception&) {
      throw Error("bad csv: line " + std::to_string(line_no));
    }
    rows.push_back(r);
  }
  return rows;
}

RdCurve CurveFromRows(std::span<const RdRow> rows, const std::string& label) {
  RdCurve curve;
  curve.label = label;
  for (const RdRow& r : rows) curve.points.push_back({r.rate_bps, r.psnr_db});
  std::sort(curve.points.begin(), curve.points.end(),
            [](const RdPoint& a, const RdPoint& b) { return a.rate < b.rate; });
  return curve;
}

double EmpiricalSecondMoment(LatticeKind kind, double volume, uint64_t samples,
                             uint64_t seed) {
  if (samples == 0) throw Error("empty simulation");
  const Lattice lattice(kind, volume);
  const int v = lattice.dim();
  const auto& basis = lattice.basis();
  Box box;
  for (int a = 0; a < v; ++a) {
    for (int i = 0; i < v; ++i) {
      box.lo[a] += std::min(0.0, basis[i][a]);
      box.hi[a] += std::max(0.0, basis[i][a]);
    }
  }
  const Dictionary dict = Dictionary::Enumerate(lattice, box);
  Rng rng(seed);
  double x[kMaxLatticeDim];
  double err = 0.0;
  for (uint64_t s = 0; s < samples; ++s) {
    for (int a = 0; a < v; ++a) x[a] = 0.0;
    for (int i = 0; i < v; ++i) {
      const double t = rng.Uniform();
      for (int a = 0; a < v; ++a) x[a] += t * basis[i][a];
    }
    const Vec& c = dict[dict.Quantize(std::span<const double>(x, v))].coords;
    for (int a = 0; a < v; ++a) err += (x[a] - c[a]) * (x[a] - c[a]);
  }
  return err / (static_cast<double>(samples) * v);
}

double VqVsSqBdRate(const RdSimConfig& config, LatticeKind vq,
                    std::span<const double> steps) {
  config.Validate();
  if (steps.size() < kMinBdPoints) throw Error("need at least 4 points");
  const auto [lo, hi] = std::minmax_element(steps.begin(), steps.end());
  if (!(*lo > 0.0) || *hi / *lo < 4.0) throw Error("volume sweep too narrow");
  const double scale = config.source == SourceKind::kGaussian ? config.scales.front()
                                                              : config.uniform_half;
  const int v = Dimension(vq);
  std::vector<RdRow> sq_rows, vq_rows;
  for (double u : steps) {
    sq_rows.push_back(SimulateRdCell(config, LatticeKind::kInteger1D, scale, u));
    vq_rows.push_back(SimulateRdCell(config, vq, scale, std::pow(u, v)));
  }
  return BdRate(CurveFromRows(sq_rows, "sq"), CurveFromRows(vq_rows, "vq"));
}

}  // namespace ltc
