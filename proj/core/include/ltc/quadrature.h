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

#ifndef LTC_QUADRATURE_H_
#define LTC_QUADRATURE_H_

#include <cmath>

#include "ltc/error.h"

namespace ltc {

inline constexpr int kSimpsonMaxDepth = 40;

namespace internal {

template <typename F>
double SimpsonStep(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw Error("integration failed");
  return SimpsonStep(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         SimpsonStep(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace internal

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
// The interval is pre-split into `initial_panels` panels so that narrow
// features are not missed by the first estimate. Throws
// Error("integration failed") when the recursion bottoms out unconverged.
template <typename F>
double AdaptiveSimpson(const F& f, double a, double b, double tol,
                       int max_depth = kSimpsonMaxDepth,
                       int initial_panels = 4) {
  if (!(b > a)) return 0.0;
  const double width = (b - a) / initial_panels;
  const double panel_tol = tol / initial_panels;
  double total = 0.0;
  double x0 = a;
  double f0 = f(a);
  for (int p = 0; p < initial_panels; ++p) {
    const double x1 = p + 1 == initial_panels ? b : a + width * (p + 1);
    const double xm = 0.5 * (x0 + x1);
    const double fm = f(xm);
    const double f1 = f(x1);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += internal::SimpsonStep(f, x0, x1, f0, fm, f1, whole, panel_tol,
                                   max_depth);
    x0 = x1;
    f0 = f1;
  }
  return total;
}

}  // namespace ltc

#endif  // LTC_QUADRATURE_H_
