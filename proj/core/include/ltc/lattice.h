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

#ifndef LTC_LATTICE_H_
#define LTC_LATTICE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ltc {

// Uniform quantization lattices. Enumerator values are the on-disk ids.
enum class LatticeKind : uint8_t {
  kInteger1D = 1,   // scalar rounding
  kHex2D = 2,       // hexagonal (A2), regular hexagon cells
  kTruncOct3D = 3,  // body-centred cubic, truncated octahedron cells
};

inline constexpr int kMaxLatticeDim = 3;
// Highest number of codes a dictionary may hold (16-bit coder tables).
inline constexpr size_t kMaxDictionarySize = size_t{1} << 16;

using Vec = std::array<double, kMaxLatticeDim>;    // unused axes are zero
using IntVec = std::array<int64_t, kMaxLatticeDim>;

int Dimension(LatticeKind kind);
// Short names used by the CLI and CSV output: "sq", "hex", "oct".
std::string_view LatticeName(LatticeKind kind);
LatticeKind ParseLatticeKind(std::string_view name);
bool IsValidLatticeKind(uint8_t raw);

// A lattice center. `key` holds the integer coordinates in the lattice basis
// and is what identifies the point; `coords` is basis * key.
struct LatticePoint {
  IntVec key{};
  Vec coords{};
  int64_t index = -1;  // position in a Dictionary, -1 if not from one
};

// Axis-aligned box; only the first dim() axes are used.
struct Box {
  Vec lo{};
  Vec hi{};
};

class Lattice {
 public:
  // Throws Error("invalid lattice") unless volume is finite and > 0.
  Lattice(LatticeKind kind, double volume);

  LatticeKind kind() const { return kind_; }
  int dim() const { return dim_; }
  // Voronoi cell volume (length in 1D, area in 2D).
  double volume() const { return volume_; }
  // Edge length of the cell polytope (the cell width in 1D).
  double side_length() const { return side_; }
  // Distance between nearest lattice neighbours.
  double spacing() const { return spacing_; }
  // Row i is basis vector i.
  const std::array<Vec, kMaxLatticeDim>& basis() const { return basis_; }

  Vec CoordsOf(const IntVec& key) const;

  // Closest lattice point, found by rounding inside each coset of a
  // rectangular sublattice. Ties inside a coset round half away from zero;
  // equidistant cosets resolve to the one containing the origin.
  // Throws Error("invalid input") on non-finite coordinates.
  LatticePoint Nearest(std::span<const double> x) const;

  // Vertices of the Voronoi cell around the origin.
  std::span<const Vec> CellVertices() const { return vertices_; }
  double CellCircumradius() const { return circumradius_; }
  // Whether the open cell centred at `center` overlaps the open box.
  bool CellIntersectsBox(const Vec& center, const Box& box) const;

 private:
  struct Coset {
    Vec offset{};  // in units of the rectangular spacing
    int id = 0;
  };
  IntVec KeyFromCoset(int coset, const IntVec& rect) const;

  LatticeKind kind_;
  int dim_;
  double volume_;
  double side_ = 0.0;
  double spacing_ = 0.0;
  std::array<Vec, kMaxLatticeDim> basis_{};
  Vec rect_spacing_{};
  std::vector<Coset> cosets_;
  std::vector<Vec> vertices_;
  std::vector<Vec> axes_;
  std::vector<double> cell_support_;
  double circumradius_ = 0.0;
};

// Returns p.coords.
inline Vec Dequantize(const LatticePoint& p) { return p.coords; }

// Per-dimension mean squared error of a uniform source over one cell of the
// given volume: u^2/12, 5*sqrt(3)*u^2/108 and 19*u^2/(48*(8*sqrt(2))^(2/3))
// where u = volume^(1/v).
double SecondMoment(LatticeKind kind, double volume);

// The finite code set: every lattice center whose cell overlaps `bounds`,
// sorted lexicographically by key.
class Dictionary {
 public:
  // Throws Error("dictionary too large") past kMaxDictionarySize codes and
  // Error("invalid bounds") for empty or non-finite bounds.
  static Dictionary Enumerate(const Lattice& lattice, const Box& bounds);

  const Lattice& lattice() const { return lattice_; }
  const Box& bounds() const { return bounds_; }
  size_t size() const { return centers_.size(); }
  std::span<const LatticePoint> centers() const { return centers_; }
  const LatticePoint& operator[](size_t i) const { return centers_[i]; }

  // Index of the center with this key, or -1.
  int64_t Find(const IntVec& key) const;
  // Code for x. Points outside the bounds are clamped onto them first, so
  // out-of-range values map to a boundary cell.
  size_t Quantize(std::span<const double> x) const;
  // Exhaustive argmin over the centers; lowest index wins ties.
  size_t NearestByScan(std::span<const double> x) const;

 private:
  Dictionary(const Lattice& lattice, const Box& bounds)
      : lattice_(lattice), bounds_(bounds) {}

  Lattice lattice_;
  Box bounds_;
  std::vector<LatticePoint> centers_;
};

// Symmetric bounds [-half, half] on every axis of the lattice.
Box SymmetricBox(int dim, double half);

}  // namespace ltc

#endif  // LTC_LATTICE_H_
