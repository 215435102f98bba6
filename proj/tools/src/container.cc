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

#include "container.h"

#include "ltc/bytes.h"
#include "ltc/error.h"

namespace ltc::cli {

std::vector<uint8_t> SerializeContainer(const Container& c) {
  ByteWriter w;
  w.Tag("LTCF");
  w.U8(kContainerVersion);
  w.U64(c.seed);
  w.U32(static_cast<uint32_t>(c.config_text.size()));
  w.Tag(c.config_text);
  w.U8(static_cast<uint8_t>(c.shape.size()));
  for (uint32_t d : c.shape) w.U32(d);
  w.U32(static_cast<uint32_t>(c.chunks.size()));
  for (const EncodedStreams& s : c.chunks) {
    const std::vector<uint8_t> bytes = s.Serialize();
    w.U32(static_cast<uint32_t>(bytes.size()));
    w.Bytes(bytes);
  }
  return w.Take();
}

Container ParseContainer(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 4 || !r.Tag("LTCF")) throw Error("bad magic");
  if (r.U8() != kContainerVersion) throw Error("unsupported version");
  Container c;
  c.seed = r.U64();
  const auto text = r.Bytes(r.U32());
  c.config_text.assign(text.begin(), text.end());
  c.shape.resize(r.U8());
  for (uint32_t& d : c.shape) d = r.U32();
  const uint32_t chunks = r.U32();
  for (uint32_t i = 0; i < chunks; ++i) {
    const auto chunk = r.Bytes(r.U32());
    size_t used = 0;
    c.chunks.push_back(EncodedStreams::Parse(chunk, &used));
    if (used != chunk.size()) throw Error("corrupt container");
  }
  if (r.remaining() != 0) throw Error("corrupt container");
  return c;
}

}  // namespace ltc::cli
