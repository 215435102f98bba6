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

#include "ltc/tensor_io.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "ltc/bytes.h"
#include "ltc/error.h"

namespace ltc {

size_t Tensor::size() const {
  size_t n = 1;
  for (uint32_t d : shape) n *= d;
  return n;
}

std::vector<uint8_t> SerializeTensor(const Tensor& t) {
  if (t.shape.size() > 255) throw Error("rank too large");
  if (t.size() != t.data.size()) throw Error("shape mismatch");
  ByteWriter w;
  w.Tag("TNS1");
  w.U8(kTensorDtypeF32);
  w.U8(static_cast<uint8_t>(t.shape.size()));
  for (uint32_t d : t.shape) w.U32(d);
  for (float v : t.data) w.F32(v);
  return w.Take();
}

Tensor ParseTensor(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 4 || !r.Tag("TNS1")) throw Error("bad magic");
  if (r.U8() != kTensorDtypeF32) throw Error("unsupported dtype");
  Tensor t;
  t.shape.resize(r.U8());
  uint64_t count = 1;
  for (uint32_t& d : t.shape) {
    d = r.U32();
    count *= d;
    if (count > r.remaining()) throw Error("truncated input");
  }
  if (count * 4 != r.remaining()) {
    throw Error(count * 4 > r.remaining() ? "truncated input" : "shape mismatch");
  }
  t.data.resize(count);
  for (float& v : t.data) v = r.F32();
  return t;
}

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileAtomic(const std::string& path, std::span<const uint8_t> bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      throw Error("cannot write " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw Error("cannot write " + path);
  }
}

void WriteFileAtomic(const std::string& path, const std::string& text) {
  WriteFileAtomic(path, std::span(reinterpret_cast<const uint8_t*>(text.data()),
                                  text.size()));
}

}  // namespace ltc
