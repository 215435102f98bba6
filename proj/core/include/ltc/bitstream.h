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

#ifndef LTC_BITSTREAM_H_
#define LTC_BITSTREAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ltc/lattice.h"
#include "ltc/pmf.h"

namespace ltc {

inline constexpr uint8_t kBitstreamVersion = 1;

struct BitstreamHeader {
  uint8_t version = kBitstreamVersion;
  LatticeKind lattice = LatticeKind::kInteger1D;
  double volume = 1.0;
  // Dictionary bounds for the first Dimension(lattice) axes. The codec
  // stores them in units of sigma for the main latents.
  Box bounds{};
  Sha256 table_hash{};
  uint8_t step_code_f = 0;  // 3 bits
  uint8_t step_code_h = 0;  // 3 bits
  bool shifts_enabled = false;
  uint32_t code_count = 0;
};

struct Bitstream {
  BitstreamHeader header;
  std::vector<uint8_t> payload;
};

// Layout (little-endian): "LTC1", u8 version, u8 lattice kind, f64 volume,
// per axis f64 lo then f64 hi, 32-byte table-pool hash, u8 packed step codes
// (bits 0-2 step_code_f, bits 3-5 step_code_h, bit 6 shifts_enabled),
// u32 code count, u32 payload length, payload.
std::vector<uint8_t> WriteBitstream(const Bitstream& stream);

// Parses one bitstream from the front of `bytes`; `consumed` receives its
// length. Throws Error("bad magic"), Error("unsupported version"),
// Error("corrupt header") or Error("truncated input").
Bitstream ReadBitstream(std::span<const uint8_t> bytes,
                        size_t* consumed = nullptr);

}  // namespace ltc

#endif  // LTC_BITSTREAM_H_
