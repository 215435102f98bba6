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

#include "ltc/bitstream.h"

#include <cmath>

#include "ltc/bytes.h"
#include "ltc/error.h"

namespace ltc {

std::vector<uint8_t> WriteBitstream(const Bitstream& stream) {
  const BitstreamHeader& h = stream.header;
  if (h.step_code_f > 7 || h.step_code_h > 7) throw Error("step code out of range");
  if (stream.payload.size() > UINT32_MAX) throw Error("payload too large");
  ByteWriter w;
  w.Tag("LTC1");
  w.U8(h.version);
  w.U8(static_cast<uint8_t>(h.lattice));
  w.F64(h.volume);
  const int dim = Dimension(h.lattice);
  for (int i = 0; i < dim; ++i) {
    w.F64(h.bounds.lo[i]);
    w.F64(h.bounds.hi[i]);
  }
  w.Bytes(h.table_hash);
  w.U8(static_cast<uint8_t>(h.step_code_f | (h.step_code_h << 3) |
                            (h.shifts_enabled ? 0x40 : 0)));
  w.U32(h.code_count);
  w.U32(static_cast<uint32_t>(stream.payload.size()));
  w.Bytes(stream.payload);
  return w.Take();
}

Bitstream ReadBitstream(std::span<const uint8_t> bytes, size_t* consumed) {
  ByteReader r(bytes);
  if (bytes.size() < 4 || !r.Tag("LTC1")) throw Error("bad magic");
  Bitstream out;
  BitstreamHeader& h = out.header;
  h.version = r.U8();
  if (h.version != kBitstreamVersion) throw Error("unsupported version");
  const uint8_t kind = r.U8();
  if (!IsValidLatticeKind(kind)) throw Error("corrupt header");
  h.lattice = static_cast<LatticeKind>(kind);
  h.volume = r.F64();
  if (!std::isfinite(h.volume) || h.volume <= 0.0) throw Error("corrupt header");
  const int dim = Dimension(h.lattice);
  for (int i = 0; i < dim; ++i) {
    h.bounds.lo[i] = r.F64();
    h.bounds.hi[i] = r.F64();
  }
  auto hash = r.Bytes(h.table_hash.size());
  std::copy(hash.begin(), hash.end(), h.table_hash.begin());
  const uint8_t steps = r.U8();
  if (steps & 0x80) throw Error("corrupt header");
  h.step_code_f = steps & 0x7;
  h.step_code_h = (steps >> 3) & 0x7;
  h.shifts_enabled = (steps & 0x40) != 0;
  h.code_count = r.U32();
  const uint32_t length = r.U32();
  auto payload = r.Bytes(length);
  out.payload.assign(payload.begin(), payload.end());
  if (consumed != nullptr) *consumed = r.position();
  return out;
}

}  // namespace ltc
