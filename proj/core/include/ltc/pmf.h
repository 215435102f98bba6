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

#ifndef LTC_PMF_H_
#define LTC_PMF_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ltc {

inline constexpr int kDefaultPrecision = 16;
inline constexpr int kMaxPrecision = 20;

using Sha256 = std::array<uint8_t, 32>;

// Fixed-point probability table over the codes of a dictionary. Entries are
// >= 1 and sum to exactly 2^precision.
class PmfTable {
 public:
  // Largest-remainder apportionment of 2^precision with a floor of one per
  // code. Throws Error("empty support") when the raw mass is (numerically)
  // zero and Error("dictionary too large") when the codes do not fit.
  static PmfTable FromProbabilities(std::span<const double> raw,
                                    int precision = kDefaultPrecision);
  // Validates the invariants; throws Error("invalid table") otherwise.
  static PmfTable FromFrequencies(std::vector<uint32_t> freqs,
                                  int precision = kDefaultPrecision);

  // "PMF1", u8 precision, u32 M, M x u32 frequencies; little-endian.
  std::vector<uint8_t> Serialize() const;
  static PmfTable Deserialize(std::span<const uint8_t> bytes);

  int precision() const { return precision_; }
  uint32_t total() const { return uint32_t{1} << precision_; }
  size_t size() const { return freqs_.size(); }
  uint32_t freq(size_t i) const { return freqs_[i]; }
  // Cumulative frequency of codes below i; cum(size()) == total().
  uint32_t cum(size_t i) const { return cum_[i]; }
  std::span<const uint32_t> frequencies() const { return freqs_; }
  double probability(size_t i) const {
    return static_cast<double>(freqs_[i]) / total();
  }
  // Code whose cumulative interval contains slot (< total()).
  size_t Lookup(uint32_t slot) const;
  double EntropyBits() const;

  friend bool operator==(const PmfTable& a, const PmfTable& b) {
    return a.precision_ == b.precision_ && a.freqs_ == b.freqs_;
  }

 private:
  PmfTable(std::vector<uint32_t> freqs, int precision);

  int precision_;
  std::vector<uint32_t> freqs_;
  std::vector<uint32_t> cum_;
};

// Tables shared by a stream plus the per-symbol table assignment.
struct TablePool {
  std::vector<PmfTable> tables;

  // SHA-256 over u32 table count followed by every serialized table.
  Sha256 Hash() const;
};

// -sum log2 P(code_i) under the fixed-point probabilities, where symbol i
// uses tables[table_index[i]]. Throws Error("code out of range").
double RateLowerBound(std::span<const uint32_t> codes, const TablePool& pool,
                      std::span<const uint32_t> table_index);
double RateLowerBound(std::span<const uint32_t> codes, const PmfTable& table);

}  // namespace ltc

#endif  // LTC_PMF_H_
