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

#include "ltc/synthetic_model.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ltc/error.h"
#include "ltc/random.h"

namespace ltc {
namespace {

// Two-component mixture for the block means.
constexpr double kMixWeight[2] = {0.5, 0.5};
constexpr double kMixMean[2] = {-1.0, 1.0};
constexpr double kMixSd[2] = {0.5, 0.5};
constexpr double kPdfSpan = 8.0;  // tabulated range, in component sds
constexpr double kMaxSigma = 1e3;

double ParseDouble(const std::string& key, const std::string& value) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw Error("invalid config: " + key);
  }
  if (used != value.size() || !std::isfinite(v)) throw Error("invalid config: " + key);
  return v;
}

uint64_t ParseCount(const std::string& key, const std::string& value) {
  size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw Error("invalid config: " + key);
  }
  if (used != value.size() || value.find('-') != std::string::npos) {
    throw Error("invalid config: " + key);
  }
  return v;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void SyntheticConfig::Validate() const {
  if (n == 0) throw Error("invalid config: n");
  if (m == 0 || m > n) throw Error("invalid config: m");
  if (side == 0 || m % side != 0) throw Error("invalid config: side");
  if (!(sigma_lo > 0.0)) throw Error("invalid config: sigma_lo");
  if (!(sigma_hi >= sigma_lo)) throw Error("invalid config: sigma_hi");
  if (!std::isfinite(hyper_coupling)) throw Error("invalid config: hyper_coupling");
  if (!(rate_weight >= 0.0) || !std::isfinite(rate_weight)) {
    throw Error("invalid config: rate_weight");
  }
  if (!(bound_sigmas > 0.0) || !std::isfinite(bound_sigmas)) {
    throw Error("invalid config: bound_sigmas");
  }
  if (mc_samples < 100000) throw Error("invalid config: mc_samples");
}

std::string SyntheticConfig::ToText() const {
  std::ostringstream out;
  out.precision(17);
  out << "n=" << n << "\nm=" << m << "\nside=" << side
      << "\nsigma_lo=" << sigma_lo << "\nsigma_hi=" << sigma_hi
      << "\nhyper_coupling=" << hyper_coupling << "\nrate_weight=" << rate_weight
      << "\nmean_prior=" << (mean_prior ? 1 : 0)
      << "\nbound_sigmas=" << bound_sigmas << "\nmc_samples=" << mc_samples
      << "\n";
  return out.str();
}

void SyntheticConfig::Set(const std::string& key, const std::string& value) {
  if (key == "n") {
    n = ParseCount(key, value);
  } else if (key == "m") {
    m = ParseCount(key, value);
  } else if (key == "side") {
    side = ParseCount(key, value);
  } else if (key == "sigma_lo") {
    sigma_lo = ParseDouble(key, value);
  } else if (key == "sigma_hi") {
    sigma_hi = ParseDouble(key, value);
  } else if (key == "hyper_coupling") {
    hyper_coupling = ParseDouble(key, value);
  } else if (key == "rate_weight") {
    rate_weight = ParseDouble(key, value);
  } else if (key == "mean_prior") {
    if (value != "0" && value != "1") throw Error("invalid config: " + key);
    mean_prior = value == "1";
  } else if (key == "bound_sigmas") {
    bound_sigmas = ParseDouble(key, value);
  } else if (key == "mc_samples") {
    mc_samples = ParseCount(key, value);
  } else {
    throw Error("unknown config key: " + key);
  }
}

SyntheticConfig SyntheticConfig::FromText(const std::string& text) {
  SyntheticConfig config;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("invalid config line: " + line);
    config.Set(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  config.Validate();
  return config;
}

SyntheticModel::SyntheticModel(const SyntheticConfig& config, uint64_t seed)
    : config_(config), seed_(seed) {
  config_.Validate();
  const Eigen::Index n = static_cast<Eigen::Index>(config_.n);
  const Eigen::Index m = static_cast<Eigen::Index>(config_.m);
  Eigen::MatrixXd g(n, m);
  Rng rng(DeriveSeed(seed, 0));
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.Normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
  a_.assign(q.data(), q.data() + q.size());

  Rng bias_rng(DeriveSeed(seed, 1));
  bias_.resize(config_.side);
  const double lo = std::log(config_.sigma_lo), hi = std::log(config_.sigma_hi);
  for (double& b : bias_) b = bias_rng.Uniform(lo, hi);

  const double root_bs = std::sqrt(static_cast<double>(block_size()));
  side_pdfs_.reserve(config_.side);
  for (size_t k = 0; k < config_.side; ++k) {
    const double spread = std::exp(bias_[k]);
    double means[2], sds[2];
    double lo_z = INFINITY, hi_z = -INFINITY;
    for (int j = 0; j < 2; ++j) {
      means[j] = root_bs * kMixMean[j];
      sds[j] = std::sqrt(block_size() * kMixSd[j] * kMixSd[j] + spread * spread);
      lo_z = std::min(lo_z, means[j] - kPdfSpan * sds[j]);
      hi_z = std::max(hi_z, means[j] + kPdfSpan * sds[j]);
    }
    side_pdfs_.push_back(FactorizedPdf::FromDensity(
        [&](double z) {
          return kMixWeight[0] * NormalPdf(z, means[0], sds[0]) +
                 kMixWeight[1] * NormalPdf(z, means[1], sds[1]);
        },
        lo_z, hi_z));
  }
}

std::vector<double> SyntheticModel::Decode(std::span<const double> y) const {
  if (y.size() != config_.m) throw Error("length mismatch");
  Eigen::Map<const Eigen::MatrixXd> a(a_.data(), config_.n, config_.m);
  Eigen::Map<const Eigen::VectorXd> yv(y.data(), y.size());
  std::vector<double> x(config_.n);
  Eigen::Map<Eigen::VectorXd>(x.data(), x.size()).noalias() = a * yv;
  return x;
}

std::vector<double> SyntheticModel::Analyze(std::span<const double> x) const {
  if (x.size() != config_.n) throw Error("length mismatch");
  Eigen::Map<const Eigen::MatrixXd> a(a_.data(), config_.n, config_.m);
  Eigen::Map<const Eigen::VectorXd> xv(x.data(), x.size());
  std::vector<double> y(config_.m);
  Eigen::Map<Eigen::VectorXd>(y.data(), y.size()).noalias() = a.transpose() * xv;
  return y;
}

std::vector<double> SyntheticModel::SideDown(std::span<const double> y) const {
  if (y.size() != config_.m) throw Error("length mismatch");
  const size_t bs = block_size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(bs));
  std::vector<double> z(config_.side, 0.0);
  for (size_t k = 0; k < config_.side; ++k) {
    double sum = 0.0;
    for (size_t i = 0; i < bs; ++i) sum += y[k * bs + i];
    z[k] = sum * scale;
  }
  return z;
}

GaussianField SyntheticModel::Hyper(std::span<const double> z_hat) const {
  if (z_hat.size() != config_.side) throw Error("length mismatch");
  const size_t bs = block_size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(bs));
  GaussianField field;
  field.mu.resize(config_.m);
  field.sigma.resize(config_.m);
  for (size_t k = 0; k < config_.side; ++k) {
    const double t = z_hat[k] * scale;
    const double mu = config_.mean_prior ? t : 0.0;
    const double sigma = std::exp(bias_[k] + config_.hyper_coupling * t);
    for (size_t i = 0; i < bs; ++i) {
      field.mu[k * bs + i] = mu;
      field.sigma[k * bs + i] = sigma;
    }
  }
  field.Validate(kMaxSigma);
  return field;
}

std::vector<double> SyntheticModel::RateAwareEncode(std::span<const double> y0,
                                                    const GaussianField& field) const {
  if (y0.size() != field.size()) throw Error("length mismatch");
  const double w = config_.rate_weight;
  std::vector<double> y(y0.size());
  for (size_t i = 0; i < y0.size(); ++i) {
    const double k = w / (2.0 * field.sigma[i] * field.sigma[i]);
    y[i] = (y0[i] + k * field.mu[i]) / (1.0 + k);
  }
  return y;
}

std::vector<double> SyntheticModel::HyperRateGradient(std::span<const double> y,
                                                      std::span<const double> z) const {
  const GaussianField field = Hyper(z);
  if (y.size() != field.size()) throw Error("length mismatch");
  const size_t bs = block_size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(bs));
  const double dmu = config_.mean_prior ? scale : 0.0;
  std::vector<double> g(config_.side, 0.0);
  for (size_t k = 0; k < config_.side; ++k) {
    const double raw_log_sigma = bias_[k] + config_.hyper_coupling * z[k] * scale;
    const double raw_sigma = std::exp(raw_log_sigma);
    const bool clamped = raw_sigma < kSigmaMin || raw_sigma > kMaxSigma;
    const double dlog_sigma = clamped ? 0.0 : config_.hyper_coupling * scale;
    for (size_t i = k * bs; i < (k + 1) * bs; ++i) {
      const double r = (y[i] - field.mu[i]) / field.sigma[i];
      g[k] += -r / field.sigma[i] * dmu + (1.0 - r * r) * dlog_sigma;
    }
  }
  return g;
}

SyntheticModel::Sample SyntheticModel::SampleSource(uint64_t seed) const {
  Rng rng(DeriveSeed(seed, 0x5eed));
  const size_t bs = block_size();
  Sample s;
  s.w.resize(config_.m);
  for (size_t k = 0; k < config_.side; ++k) {
    const int j = rng.Uniform() < kMixWeight[0] ? 0 : 1;
    const double mean = rng.Normal(kMixMean[j], kMixSd[j]);
    const double spread = std::exp(bias_[k]);
    for (size_t i = 0; i < bs; ++i) s.w[k * bs + i] = rng.Normal(mean, spread);
  }
  s.x = Decode(s.w);
  return s;
}

double SyntheticModel::OrthonormalityError() const {
  Eigen::Map<const Eigen::MatrixXd> a(a_.data(), config_.n, config_.m);
  const Eigen::MatrixXd gram = a.transpose() * a;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace ltc
