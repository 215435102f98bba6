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

#include "ltc/lattice.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ltc/error.h"

namespace ltc {
namespace {

double Dot(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

double SquaredDistance(std::span<const double> x, const Vec& c, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double d = x[i] - c[i];
    s += d * d;
  }
  return s;
}

}  // namespace

int Dimension(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::kInteger1D:
      return 1;
    case LatticeKind::kHex2D:
      return 2;
    case LatticeKind::kTruncOct3D:
      return 3;
  }
  throw Error("invalid lattice");
}

std::string_view LatticeName(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::kInteger1D:
      return "sq";
    case LatticeKind::kHex2D:
      return "hex";
    case LatticeKind::kTruncOct3D:
      return "oct";
  }
  return "?";
}

LatticeKind ParseLatticeKind(std::string_view name) {
  if (name == "sq") return LatticeKind::kInteger1D;
  if (name == "hex") return LatticeKind::kHex2D;
  if (name == "oct") return LatticeKind::kTruncOct3D;
  throw Error("unknown lattice '" + std::string(name) + "'");
}

bool IsValidLatticeKind(uint8_t raw) { return raw >= 1 && raw <= 3; }

Lattice::Lattice(LatticeKind kind, double volume)
    : kind_(kind), dim_(Dimension(kind)), volume_(volume) {
  if (!std::isfinite(volume) || volume <= 0.0) throw Error("invalid lattice");
  const double sqrt3 = std::numbers::sqrt3;
  switch (kind) {
    case LatticeKind::kInteger1D: {
      side_ = spacing_ = volume;
      basis_[0] = {volume, 0.0, 0.0};
      rect_spacing_ = {volume, 0.0, 0.0};
      cosets_ = {{{0.0, 0.0, 0.0}, 0}};
      vertices_ = {{-0.5 * volume, 0.0, 0.0}, {0.5 * volume, 0.0, 0.0}};
      axes_ = {{1.0, 0.0, 0.0}};
      break;
    }
    case LatticeKind::kHex2D: {
      // Lattice vectors (d, 0) and (d/2, d*sqrt3/2): cells are hexagons with
      // vertices on the y axis and sides x = +-d/2.
      const double d = std::sqrt(2.0 * volume / sqrt3);
      const double a = d / sqrt3;
      side_ = a;
      spacing_ = d;
      basis_[0] = {d, 0.0, 0.0};
      basis_[1] = {0.5 * d, 0.5 * sqrt3 * d, 0.0};
      rect_spacing_ = {d, sqrt3 * d, 0.0};
      cosets_ = {{{0.0, 0.0, 0.0}, 0}, {{0.5, 0.5, 0.0}, 1}};
      const double hx = 0.5 * d;
      vertices_ = {{0.0, a, 0.0},  {-hx, 0.5 * a, 0.0}, {-hx, -0.5 * a, 0.0},
                   {0.0, -a, 0.0}, {hx, -0.5 * a, 0.0}, {hx, 0.5 * a, 0.0}};
      axes_ = {{1.0, 0.0, 0.0},
               {0.0, 1.0, 0.0},
               {0.5, 0.5 * sqrt3, 0.0},
               {-0.5, 0.5 * sqrt3, 0.0}};
      break;
    }
    case LatticeKind::kTruncOct3D: {
      // BCC: cubic cosets L*Z^3 and L*Z^3 + (L/2)(1,1,1).
      const double cube = std::cbrt(2.0 * volume);
      side_ = cube * std::numbers::sqrt2 / 4.0;
      spacing_ = 0.5 * sqrt3 * cube;
      basis_[0] = {cube, 0.0, 0.0};
      basis_[1] = {0.0, cube, 0.0};
      basis_[2] = {0.5 * cube, 0.5 * cube, 0.5 * cube};
      rect_spacing_ = {cube, cube, cube};
      cosets_ = {{{0.0, 0.0, 0.0}, 0}, {{0.5, 0.5, 0.5}, 1}};
      // Permutations of (0, +-L/4, +-L/2).
      const double q = 0.25 * cube;
      const double h = 0.5 * cube;
      for (double s1 : {-1.0, 1.0}) {
        for (double s2 : {-1.0, 1.0}) {
          const double b = s1 * q;
          const double c = s2 * h;
          vertices_.push_back({0.0, b, c});
          vertices_.push_back({0.0, c, b});
          vertices_.push_back({b, 0.0, c});
          vertices_.push_back({c, 0.0, b});
          vertices_.push_back({b, c, 0.0});
          vertices_.push_back({c, b, 0.0});
        }
      }
      // Separating axes for box vs truncated octahedron: face normals of
      // both plus cross products of their edge directions.
      axes_ = {{1, 0, 0},  {0, 1, 0},   {0, 0, 1},  {1, 1, 1},  {1, 1, -1},
               {1, -1, 1}, {-1, 1, 1},  {0, 1, 1},  {0, 1, -1}, {1, 0, 1},
               {1, 0, -1}, {1, 1, 0},   {1, -1, 0}};
      break;
    }
  }
  circumradius_ = 0.0;
  for (const Vec& v : vertices_) {
    circumradius_ = std::max(circumradius_, std::sqrt(Dot(v, v, dim_)));
  }
  cell_support_.reserve(axes_.size());
  for (const Vec& n : axes_) {
    double h = 0.0;
    for (const Vec& v : vertices_) h = std::max(h, std::abs(Dot(n, v, dim_)));
    cell_support_.push_back(h);
  }
}

Vec Lattice::CoordsOf(const IntVec& key) const {
  Vec out{};
  for (int i = 0; i < dim_; ++i) {
    const double k = static_cast<double>(key[i]);
    for (int j = 0; j < dim_; ++j) out[j] += k * basis_[i][j];
  }
  return out;
}

IntVec Lattice::KeyFromCoset(int coset, const IntVec& rect) const {
  switch (kind_) {
    case LatticeKind::kInteger1D:
      return {rect[0], 0, 0};
    case LatticeKind::kHex2D:
      return {rect[0] - rect[1], 2 * rect[1] + coset, 0};
    case LatticeKind::kTruncOct3D:
      return {rect[0] - rect[2], rect[1] - rect[2], 2 * rect[2] + coset};
  }
  return {};
}

LatticePoint Lattice::Nearest(std::span<const double> x) const {
  if (x.size() < static_cast<size_t>(dim_)) throw Error("invalid input");
  for (int i = 0; i < dim_; ++i) {
    if (!std::isfinite(x[i])) throw Error("invalid input");
  }
  LatticePoint best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const Coset& coset : cosets_) {
    IntVec rect{};
    for (int i = 0; i < dim_; ++i) {
      const double t = x[i] / rect_spacing_[i] - coset.offset[i];
      rect[i] = static_cast<int64_t>(std::round(t));
    }
    const IntVec key = KeyFromCoset(coset.id, rect);
    const Vec coords = CoordsOf(key);
    const double d2 = SquaredDistance(x, coords, dim_);
    if (d2 < best_d2) {
      best_d2 = d2;
      best.key = key;
      best.coords = coords;
    }
  }
  return best;
}

bool Lattice::CellIntersectsBox(const Vec& center, const Box& box) const {
  for (size_t a = 0; a < axes_.size(); ++a) {
    const Vec& n = axes_[a];
    double box_support = 0.0;
    double offset = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double half = 0.5 * (box.hi[i] - box.lo[i]);
      const double mid = 0.5 * (box.hi[i] + box.lo[i]);
      box_support += std::abs(n[i]) * half;
      offset += n[i] * (center[i] - mid);
    }
    if (std::abs(offset) >= box_support + cell_support_[a]) return false;
  }
  return true;
}

double SecondMoment(LatticeKind kind, double volume) {
  if (!std::isfinite(volume) || volume <= 0.0) throw Error("invalid lattice");
  switch (kind) {
    case LatticeKind::kInteger1D:
      return volume * volume / 12.0;
    case LatticeKind::kHex2D:
      return 5.0 * std::numbers::sqrt3 * volume / 108.0;
    case LatticeKind::kTruncOct3D: {
      const double u = std::cbrt(volume);
      return 19.0 * u * u /
             (48.0 * std::pow(8.0 * std::numbers::sqrt2, 2.0 / 3.0));
    }
  }
  throw Error("invalid lattice");
}

Box SymmetricBox(int dim, double half) {
  Box b;
  for (int i = 0; i < dim; ++i) {
    b.lo[i] = -half;
    b.hi[i] = half;
  }
  return b;
}

Dictionary Dictionary::Enumerate(const Lattice& lattice, const Box& bounds) {
  const int dim = lattice.dim();
  for (int i = 0; i < dim; ++i) {
    if (!std::isfinite(bounds.lo[i]) || !std::isfinite(bounds.hi[i]) ||
        !(bounds.hi[i] > bounds.lo[i])) {
      throw Error("invalid bounds");
    }
  }
  Dictionary dict(lattice, bounds);
  const double r = lattice.CellCircumradius();
  const auto& basis = lattice.basis();

  // Candidate centers: every point of each rectangular coset within the box
  // grown by the circumradius.
  const bool two_cosets = lattice.kind() != LatticeKind::kInteger1D;
  Vec rect_spacing{};
  if (lattice.kind() == LatticeKind::kInteger1D) {
    rect_spacing = {basis[0][0], 0, 0};
  } else if (lattice.kind() == LatticeKind::kHex2D) {
    rect_spacing = {basis[0][0], 2.0 * basis[1][1], 0};
  } else {
    rect_spacing = {basis[0][0], basis[1][1], 2.0 * basis[2][2]};
  }
  double candidates = two_cosets ? 2.0 : 1.0;
  for (int i = 0; i < dim; ++i) {
    candidates *= (bounds.hi[i] - bounds.lo[i] + 2.0 * r) / rect_spacing[i] + 2.0;
  }
  if (candidates > 64.0 * static_cast<double>(kMaxDictionarySize)) {
    throw Error("dictionary too large");
  }

  std::vector<LatticePoint> found;
  for (int coset = 0; coset < (two_cosets ? 2 : 1); ++coset) {
    const double off = coset == 0 ? 0.0 : 0.5;
    IntVec lo{}, hi{};
    for (int i = 0; i < dim; ++i) {
      lo[i] = static_cast<int64_t>(
          std::ceil((bounds.lo[i] - r) / rect_spacing[i] - off));
      hi[i] = static_cast<int64_t>(
          std::floor((bounds.hi[i] + r) / rect_spacing[i] - off));
    }
    IntVec rect = lo;
    while (true) {
      IntVec key{};
      switch (lattice.kind()) {
        case LatticeKind::kInteger1D:
          key = {rect[0], 0, 0};
          break;
        case LatticeKind::kHex2D:
          key = {rect[0] - rect[1], 2 * rect[1] + coset, 0};
          break;
        case LatticeKind::kTruncOct3D:
          key = {rect[0] - rect[2], rect[1] - rect[2], 2 * rect[2] + coset};
          break;
      }
      const Vec coords = lattice.CoordsOf(key);
      if (lattice.CellIntersectsBox(coords, bounds)) {
        found.push_back({key, coords, -1});
        if (found.size() > kMaxDictionarySize) {
          throw Error("dictionary too large");
        }
      }
      int axis = 0;
      while (axis < dim) {
        if (++rect[axis] <= hi[axis]) break;
        rect[axis] = lo[axis];
        ++axis;
      }
      if (axis == dim) break;
    }
  }
  std::sort(found.begin(), found.end(),
            [](const LatticePoint& a, const LatticePoint& b) {
              return a.key < b.key;
            });
  for (size_t i = 0; i < found.size(); ++i) {
    found[i].index = static_cast<int64_t>(i);
  }
  dict.centers_ = std::move(found);
  return dict;
}

int64_t Dictionary::Find(const IntVec& key) const {
  auto it = std::lower_bound(
      centers_.begin(), centers_.end(), key,
      [](const LatticePoint& p, const IntVec& k) { return p.key < k; });
  if (it == centers_.end() || it->key != key) return -1;
  return it - centers_.begin();
}

size_t Dictionary::Quantize(std::span<const double> x) const {
  const int dim = lattice_.dim();
  if (x.size() < static_cast<size_t>(dim)) throw Error("invalid input");
  Vec clamped{};
  for (int i = 0; i < dim; ++i) {
    if (!std::isfinite(x[i])) throw Error("invalid input");
    clamped[i] = std::clamp(x[i], bounds_.lo[i], bounds_.hi[i]);
  }
  const LatticePoint p =
      lattice_.Nearest(std::span<const double>(clamped.data(), dim));
  const int64_t idx = Find(p.key);
  if (idx >= 0) return static_cast<size_t>(idx);
  // A clamped point on the box boundary can sit on a cell that only touches
  // the box.
  return NearestByScan(std::span<const double>(clamped.data(), dim));
}

size_t Dictionary::NearestByScan(std::span<const double> x) const {
  const int dim = lattice_.dim();
  size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < centers_.size(); ++i) {
    const double d2 = SquaredDistance(x, centers_[i].coords, dim);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

}  // namespace ltc
