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

#include "ltc/rans.h"

#include <algorithm>

#include "ltc/error.h"

namespace ltc {
namespace {

void CheckIndex(size_t count, const TablePool& pool,
                std::span<const uint32_t> table_index) {
  if (table_index.size() != count) throw Error("table index mismatch");
  for (uint32_t t : table_index) {
    if (t >= pool.tables.size()) throw Error("table index out of range");
  }
}

}  // namespace

std::vector<uint8_t> RansEncode(std::span<const uint32_t> codes,
                                const TablePool& pool,
                                std::span<const uint32_t> table_index) {
  CheckIndex(codes.size(), pool, table_index);
  for (size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] >= pool.tables[table_index[i]].size()) {
      throw Error("code out of range");
    }
  }
  std::vector<uint8_t> reversed;
  reversed.reserve(codes.size() / 2 + kRansFlushBytes);
  uint32_t x = kRansLow;
  for (size_t i = codes.size(); i-- > 0;) {
    const PmfTable& t = pool.tables[table_index[i]];
    const uint32_t freq = t.freq(codes[i]);
    const uint32_t start = t.cum(codes[i]);
    const int bits = t.precision();
    const uint64_t x_max = (uint64_t{kRansLow >> bits} << 8) * freq;
    while (x >= x_max) {
      reversed.push_back(static_cast<uint8_t>(x & 0xff));
      x >>= 8;
    }
    x = ((x / freq) << bits) + (x % freq) + start;
  }
  for (int shift = 24; shift >= 0; shift -= 8) {
    reversed.push_back(static_cast<uint8_t>(x >> shift));
  }
  std::reverse(reversed.begin(), reversed.end());
  return reversed;
}

std::vector<uint32_t> RansDecode(std::span<const uint8_t> payload,
                                 uint32_t count, const TablePool& pool,
                                 std::span<const uint32_t> table_index) {
  CheckIndex(count, pool, table_index);
  if (payload.size() < kRansFlushBytes) throw Error("underflow");
  uint32_t x = 0;
  for (size_t i = 0; i < kRansFlushBytes; ++i) {
    x |= static_cast<uint32_t>(payload[i]) << (8 * i);
  }
  size_t pos = kRansFlushBytes;
  std::vector<uint32_t> codes(count);
  for (uint32_t i = 0; i < count; ++i) {
    const PmfTable& t = pool.tables[table_index[i]];
    const int bits = t.precision();
    const uint32_t slot = x & (t.total() - 1);
    const size_t s = t.Lookup(slot);
    codes[i] = static_cast<uint32_t>(s);
    x = t.freq(s) * (x >> bits) + slot - t.cum(s);
    while (x < kRansLow) {
      if (pos >= payload.size()) throw Error("underflow");
      x = (x << 8) | payload[pos++];
    }
  }
  if (x != kRansLow || pos != payload.size()) throw Error("corrupt payload");
  return codes;
}

std::vector<uint32_t> RansDecode(std::span<const uint8_t> payload,
                                 uint32_t count, const TablePool& pool,
                                 std::span<const uint32_t> table_index,
                                 const Sha256& expected_hash) {
  if (pool.Hash() != expected_hash) throw Error("model mismatch");
  return RansDecode(payload, count, pool, table_index);
}

}  // namespace ltc
