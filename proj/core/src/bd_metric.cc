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

#include "ltc/bd_metric.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "ltc/error.h"

namespace ltc {
namespace {

constexpr int kMonotoneChecks = 512;

double PolyIntegral(std::span<const double> c, double a, double b) {
  auto prim = [&](double t) {
    return t * (c[0] + t * (c[1] / 2 + t * (c[2] / 3 + t * c[3] / 4)));
  };
  return prim(b) - prim(a);
}

bool CubicMonotone(std::span<const double> c, double lo, double hi) {
  int sign = 0;
  for (int i = 0; i <= kMonotoneChecks; ++i) {
    const double t = lo + (hi - lo) * i / kMonotoneChecks;
    const double d = c[1] + t * (2 * c[2] + 3 * t * c[3]);
    const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (s == 0) continue;
    if (sign != 0 && s != sign) return false;
    sign = s;
  }
  return sign != 0;
}

// Integral of the fitted curve x -> y over [a, b].
double FittedIntegral(std::vector<double> x, std::vector<double> y, double a, double b) {
  std::vector<size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return x[i] < x[j]; });
  std::vector<double> xs, ys;
  for (size_t i : order) {
    xs.push_back(x[i]);
    ys.push_back(y[i]);
  }
  const std::vector<double> c = FitCubic(xs, ys);
  if (CubicMonotone(c, xs.front(), xs.back())) return PolyIntegral(c, a, b);
  return Pchip(xs, ys).Integral(a, b);
}

double AverageGap(std::span<const double> xa, std::span<const double> ya,
                  std::span<const double> xb, std::span<const double> yb) {
  const auto [amin, amax] = std::minmax_element(xa.begin(), xa.end());
  const auto [bmin, bmax] = std::minmax_element(xb.begin(), xb.end());
  const double lo = std::max(*amin, *bmin);
  const double hi = std::min(*amax, *bmax);
  if (!(hi > lo)) throw Error("no overlap");
  const double ia = FittedIntegral({xa.begin(), xa.end()}, {ya.begin(), ya.end()}, lo, hi);
  const double ib = FittedIntegral({xb.begin(), xb.end()}, {yb.begin(), yb.end()}, lo, hi);
  return (ib - ia) / (hi - lo);
}

void Split(const RdCurve& c, std::vector<double>& log_rate, std::vector<double>& quality) {
  c.Validate();
  for (const RdPoint& p : c.points) {
    log_rate.push_back(std::log(p.rate));
    quality.push_back(p.quality);
  }
}

}  // namespace

void RdCurve::Validate() const {
  if (points.size() < kMinBdPoints) throw Error("need at least 4 points");
  for (size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].rate > 0.0) || !std::isfinite(points[i].rate) ||
        !std::isfinite(points[i].quality)) {
      throw Error("invalid rate");
    }
    if (i > 0 && !(points[i].rate > points[i - 1].rate)) {
      throw Error("rates not increasing");
    }
  }
}

std::vector<double> FitCubic(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 4) throw Error("need at least 4 points");
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  // Fit in centred, scaled coordinates for conditioning, then expand.
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v - mean));
  if (scale == 0.0) throw Error("degenerate curve");
  Eigen::MatrixXd v(n, 4);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (x[i] - mean) / scale;
    v(i, 0) = 1.0;
    v(i, 1) = t;
    v(i, 2) = t * t;
    v(i, 3) = t * t * t;
    rhs(i) = y[i];
  }
  const Eigen::Vector4d a = v.colPivHouseholderQr().solve(rhs);
  // p(x) = sum a_k ((x - mean) / scale)^k
  const double s1 = 1.0 / scale, s2 = s1 * s1, s3 = s2 * s1;
  std::vector<double> c(4);
  c[3] = a[3] * s3;
  c[2] = a[2] * s2 - 3.0 * a[3] * s3 * mean;
  c[1] = a[1] * s1 - 2.0 * a[2] * s2 * mean + 3.0 * a[3] * s3 * mean * mean;
  c[0] = a[0] - a[1] * s1 * mean + a[2] * s2 * mean * mean -
         a[3] * s3 * mean * mean * mean;
  return c;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw Error("degenerate curve");
  for (size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw Error("degenerate curve");
  }
  std::vector<double> h(n - 1), delta(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = delta[0];
    return;
  }
  for (size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] > 0.0) {
      const double w1 = 2 * h[k] + h[k - 1];
      const double w2 = h[k] + 2 * h[k - 1];
      d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
  }
  auto edge = [](double h0, double h1, double m0, double m1) {
    double d = ((2 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (d * m0 <= 0.0) {
      d = 0.0;
    } else if (m0 * m1 <= 0.0 && std::abs(d) > 3 * std::abs(m0)) {
      d = 3 * m0;
    }
    return d;
  };
  d_[0] = edge(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double Pchip::operator()(double t) const {
  const auto it = std::upper_bound(x_.begin() + 1, x_.end() - 1, t);
  const size_t k = static_cast<size_t>(it - x_.begin()) - 1;
  const double h = x_[k + 1] - x_[k];
  const double s = (t - x_[k]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * y_[k] + h10 * h * d_[k] + h01 * y_[k + 1] + h11 * h * d_[k + 1];
}

double Pchip::Integral(double a, double b) const {
  // Each piece is a cubic, so Simpson's rule on every sub-interval is exact.
  double total = 0.0;
  for (size_t k = 0; k + 1 < x_.size(); ++k) {
    const double lo = std::max(a, x_[k]);
    const double hi = std::min(b, x_[k + 1]);
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi);
    total += (hi - lo) / 6.0 * ((*this)(lo) + 4.0 * (*this)(mid) + (*this)(hi));
  }
  return total;
}

double BdRate(const RdCurve& anchor, const RdCurve& test) {
  std::vector<double> ra, qa, rb, qb;
  Split(anchor, ra, qa);
  Split(test, rb, qb);
  return (std::exp(AverageGap(qa, ra, qb, rb)) - 1.0) * 100.0;
}

double BdPsnr(const RdCurve& anchor, const RdCurve& test) {
  std::vector<double> ra, qa, rb, qb;
  Split(anchor, ra, qa);
  Split(test, rb, qb);
  return AverageGap(ra, qa, rb, qb);
}

}  // namespace ltc
