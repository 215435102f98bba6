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

#ifndef LTC_TOOLS_CONTAINER_H_
#define LTC_TOOLS_CONTAINER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltc/codec.h"

namespace ltc::cli {

// File produced by `ltc encode`: "LTCF", u8 version, u64 model seed,
// u32 length + model config text, u8 rank, rank x u32 dims, u32 chunk
// count, then per chunk u32 length + side and main bitstreams. The tensor is
// flattened and split into chunks of the model's signal length, the last
// one zero-padded.
struct Container {
  uint64_t seed = 0;
  std::string config_text;
  std::vector<uint32_t> shape;
  std::vector<EncodedStreams> chunks;
};

inline constexpr uint8_t kContainerVersion = 1;

std::vector<uint8_t> SerializeContainer(const Container& c);
Container ParseContainer(std::span<const uint8_t> bytes);

}  // namespace ltc::cli

#endif  // LTC_TOOLS_CONTAINER_H_
