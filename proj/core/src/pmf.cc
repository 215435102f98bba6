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

#include "ltc/pmf.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "ltc/bytes.h"
#include "ltc/error.h"

namespace ltc {
namespace {

// Total raw mass below which a table has no usable support.
constexpr double kMinSupportMass = 1e-12;

}  // namespace

PmfTable::PmfTable(std::vector<uint32_t> freqs, int precision)
    : precision_(precision), freqs_(std::move(freqs)) {
  cum_.resize(freqs_.size() + 1, 0);
  for (size_t i = 0; i < freqs_.size(); ++i) cum_[i + 1] = cum_[i] + freqs_[i];
}

PmfTable PmfTable::FromProbabilities(std::span<const double> raw,
                                     int precision) {
  if (precision < 1 || precision > kMaxPrecision) throw Error("invalid table");
  const size_t m = raw.size();
  const uint64_t total = uint64_t{1} << precision;
  if (m == 0) throw Error("empty support");
  if (m > total) throw Error("dictionary too large");
  double mass = 0.0;
  for (double p : raw) {
    if (!std::isfinite(p) || p < 0.0) throw Error("invalid probability");
    mass += p;
  }
  if (mass < kMinSupportMass) throw Error("empty support");

  // Every code gets 1; the remaining slots are apportioned by largest
  // remainder of the normalized mass.
  const uint64_t spare = total - m;
  std::vector<uint32_t> freqs(m, 1);
  std::vector<double> remainder(m);
  uint64_t assigned = 0;
  for (size_t i = 0; i < m; ++i) {
    const double share = raw[i] / mass * static_cast<double>(spare);
    const double whole = std::floor(share);
    freqs[i] += static_cast<uint32_t>(whole);
    assigned += static_cast<uint64_t>(whole);
    remainder[i] = share - whole;
  }
  if (assigned > spare) {
    // Rounding in the shares can overshoot by a slot or two; take them back
    // from the largest entries.
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return freqs[a] > freqs[b]; });
    for (size_t k = 0; assigned > spare; k = (k + 1) % m) {
      if (freqs[order[k]] > 1) {
        --freqs[order[k]];
        --assigned;
      }
    }
  } else if (assigned < spare) {
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return remainder[a] > remainder[b];
    });
    for (size_t k = 0; assigned < spare; k = (k + 1) % m) {
      ++freqs[order[k]];
      ++assigned;
    }
  }
  return PmfTable(std::move(freqs), precision);
}

PmfTable PmfTable::FromFrequencies(std::vector<uint32_t> freqs, int precision) {
  if (precision < 1 || precision > kMaxPrecision || freqs.empty()) {
    throw Error("invalid table");
  }
  uint64_t sum = 0;
  for (uint32_t f : freqs) {
    if (f == 0) throw Error("invalid table");
    sum += f;
  }
  if (sum != (uint64_t{1} << precision)) throw Error("invalid table");
  return PmfTable(std::move(freqs), precision);
}

std::vector<uint8_t> PmfTable::Serialize() const {
  ByteWriter w;
  w.Tag("PMF1");
  w.U8(static_cast<uint8_t>(precision_));
  w.U32(static_cast<uint32_t>(freqs_.size()));
  for (uint32_t f : freqs_) w.U32(f);
  return w.Take();
}

PmfTable PmfTable::Deserialize(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  if (!r.Tag("PMF1")) throw Error("bad magic");
  const int precision = r.U8();
  const uint32_t m = r.U32();
  if (m > r.remaining() / 4) throw Error("truncated input");
  std::vector<uint32_t> freqs(m);
  for (auto& f : freqs) f = r.U32();
  return FromFrequencies(std::move(freqs), precision);
}

size_t PmfTable::Lookup(uint32_t slot) const {
  // First code whose upper cumulative bound exceeds the slot.
  auto it = std::upper_bound(cum_.begin() + 1, cum_.end(), slot);
  return static_cast<size_t>(it - (cum_.begin() + 1));
}

double PmfTable::EntropyBits() const {
  double h = 0.0;
  for (size_t i = 0; i < freqs_.size(); ++i) {
    const double p = probability(i);
    h -= p * std::log2(p);
  }
  return h;
}

Sha256 TablePool::Hash() const {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(
      EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 unavailable");
  }
  ByteWriter head;
  head.U32(static_cast<uint32_t>(tables.size()));
  EVP_DigestUpdate(ctx.get(), head.data().data(), head.data().size());
  for (const PmfTable& t : tables) {
    const std::vector<uint8_t> bytes = t.Serialize();
    EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size());
  }
  Sha256 out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), out.data(), &len);
  return out;
}

double RateLowerBound(std::span<const uint32_t> codes, const TablePool& pool,
                      std::span<const uint32_t> table_index) {
  if (codes.size() != table_index.size()) throw Error("table index mismatch");
  double bits = 0.0;
  for (size_t i = 0; i < codes.size(); ++i) {
    if (table_index[i] >= pool.tables.size()) throw Error("code out of range");
    const PmfTable& t = pool.tables[table_index[i]];
    if (codes[i] >= t.size()) throw Error("code out of range");
    bits += static_cast<double>(t.precision()) - std::log2(t.freq(codes[i]));
  }
  return bits;
}

double RateLowerBound(std::span<const uint32_t> codes, const PmfTable& table) {
  double bits = 0.0;
  for (uint32_t c : codes) {
    if (c >= table.size()) throw Error("code out of range");
    bits += static_cast<double>(table.precision()) - std::log2(table.freq(c));
  }
  return bits;
}

}  // namespace ltc
