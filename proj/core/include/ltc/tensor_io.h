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

#ifndef LTC_TENSOR_IO_H_
#define LTC_TENSOR_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ltc {

// "TNS1", u8 dtype (1 = float32 little-endian), u8 rank, rank x u32 dims,
// then the row-major data.
struct Tensor {
  std::vector<uint32_t> shape;
  std::vector<float> data;

  size_t size() const;
};

inline constexpr uint8_t kTensorDtypeF32 = 1;

std::vector<uint8_t> SerializeTensor(const Tensor& t);
// Throws Error("bad magic"), Error("unsupported dtype"),
// Error("truncated input") or Error("shape mismatch").
Tensor ParseTensor(std::span<const uint8_t> bytes);

std::vector<uint8_t> ReadFileBytes(const std::string& path);
// Writes to a temporary sibling and renames it into place, so a failure
// never leaves a partial file at `path`.
void WriteFileAtomic(const std::string& path, std::span<const uint8_t> bytes);
void WriteFileAtomic(const std::string& path, const std::string& text);

}  // namespace ltc

#endif  // LTC_TENSOR_IO_H_
