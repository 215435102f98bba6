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

#ifndef LTC_RANS_H_
#define LTC_RANS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ltc/pmf.h"

namespace ltc {

// Byte-oriented range ANS: 32-bit state kept in [kRansLow, 2^31), one byte
// emitted per renormalization step. Symbols are encoded in reverse so the
// decoder runs forward.
inline constexpr uint32_t kRansLow = 1u << 23;
inline constexpr size_t kRansFlushBytes = 4;

// Symbol i is coded with pool.tables[table_index[i]]. Every code is checked
// before any output is produced; throws Error("code out of range").
std::vector<uint8_t> RansEncode(std::span<const uint32_t> codes,
                                const TablePool& pool,
                                std::span<const uint32_t> table_index);

// Inverse of RansEncode. Throws Error("underflow") when the payload runs
// out and Error("corrupt payload") when the final state or length does not
// match the encoder's; arbitrary payload bytes never read out of bounds.
std::vector<uint32_t> RansDecode(std::span<const uint8_t> payload,
                                 uint32_t count, const TablePool& pool,
                                 std::span<const uint32_t> table_index);

// Same, after checking the pool against the hash recorded by the encoder;
// throws Error("model mismatch") if they differ.
std::vector<uint32_t> RansDecode(std::span<const uint8_t> payload,
                                 uint32_t count, const TablePool& pool,
                                 std::span<const uint32_t> table_index,
                                 const Sha256& expected_hash);

}  // namespace ltc

#endif  // LTC_RANS_H_
