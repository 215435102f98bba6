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

#include "cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "container.h"
#include "ltc/bd_metric.h"
#include "ltc/codec.h"
#include "ltc/error.h"
#include "ltc/latent_shift.h"
#include "ltc/rd_sim.h"
#include "ltc/shift_study.h"
#include "ltc/synthetic_model.h"
#include "ltc/tensor_io.h"

namespace ltc::cli {
namespace {

std::string ReadText(const std::string& path) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  return {bytes.begin(), bytes.end()};
}

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

// Emits to `path` atomically, or to `out` when path is empty.
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteFileAtomic(path, text);
  }
}

// Config file first, then --set overrides in order.
template <typename Config>
void ApplyOverrides(Config& config, const std::vector<std::string>& sets) {
  for (const std::string& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error("invalid --set: " + kv);
    config.Set(kv.substr(0, eq), kv.substr(eq + 1));
  }
}

SyntheticConfig LoadModelConfig(const std::string& path,
                                const std::vector<std::string>& sets) {
  SyntheticConfig config =
      path.empty() ? SyntheticConfig{} : SyntheticConfig::FromText(ReadText(path));
  ApplyOverrides(config, sets);
  config.Validate();
  return config;
}

struct CodecFlags {
  std::string lattice = "sq";
  double volume = 1.0;
  std::string shift = "off";

  CodecOptions Options() const {
    CodecOptions o;
    o.lattice = ParseLatticeKind(lattice);
    o.volume = volume;
    o.shift = shift == "on";
    return o;
  }
};

void AddCodecFlags(CLI::App* cmd, CodecFlags& f) {
  cmd->add_option("--lattice", f.lattice, "Main-latent lattice")
      ->check(CLI::IsMember({"sq", "hex", "oct"}));
  cmd->add_option("--volume", f.volume, "Lattice cell volume")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--shift", f.shift, "Latent shift")->check(CLI::IsMember({"on", "off"}));
}

std::vector<RdRow> FilterRows(std::vector<RdRow> rows, const std::string& lattice) {
  if (lattice.empty()) return rows;
  const LatticeKind kind = ParseLatticeKind(lattice);
  std::erase_if(rows, [&](const RdRow& r) { return r.lattice != kind; });
  return rows;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice quantization and latent shift toolkit", "ltc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ltc 0.1.0");

  uint64_t seed = 0;
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_path;

  // simulate-rd
  bool measured = false;
  auto* sim = app.add_subcommand("simulate-rd", "Quantize analytic sources, emit RD CSV");
  sim->add_option("--config", config_path, "key=value simulation config");
  sim->add_option("--set", sets, "Override one config key (key=value)");
  sim->add_option("--seed", seed, "Random seed");
  sim->add_option("--out", out_path, "CSV output path (default stdout)");
  sim->add_flag("--measured", measured, "Rate from rANS payload length");

  // bd
  std::string curve_a, curve_b, mode = "rate", lattice_a, lattice_b;
  auto* bd = app.add_subcommand("bd", "Bjontegaard delta between two RD CSV files");
  bd->add_option("curve_a", curve_a, "Anchor CSV")->required();
  bd->add_option("curve_b", curve_b, "Test CSV")->required();
  bd->add_option("--mode", mode, "rate or psnr")->check(CLI::IsMember({"rate", "psnr"}));
  bd->add_option("--lattice-a", lattice_a, "Use only rows of this lattice from A");
  bd->add_option("--lattice-b", lattice_b, "Use only rows of this lattice from B");
  bd->add_option("--seed", seed, "Unused; accepted for uniformity");

  // encode / decode
  std::string in_path;
  CodecFlags codec;
  auto* enc = app.add_subcommand("encode", "Encode a TNS1 tensor");
  enc->add_option("input", in_path, "TNS1 tensor")->required();
  enc->add_option("output", out_path, "Bitstream file")->required();
  AddCodecFlags(enc, codec);
  enc->add_option("--config", config_path, "key=value model config");
  enc->add_option("--set", sets, "Override one model config key (key=value)");
  enc->add_option("--seed", seed, "Model seed");

  std::optional<uint64_t> decode_seed;
  auto* dec = app.add_subcommand("decode", "Decode a bitstream file to TNS1");
  dec->add_option("input", in_path, "Bitstream file")->required();
  dec->add_option("output", out_path, "TNS1 tensor")->required();
  dec->add_option("--seed", decode_seed, "Override the stored model seed");

  // dequant-shift
  std::string reference_path;
  double alpha = 0.0, rate_a = 1.0, rate_b = 0.0;
  auto* dq = app.add_subcommand("dequant-shift",
                                "Apply |c| + alpha/|c| to integer coefficients");
  dq->add_option("input", in_path, "TNS1 tensor of integer coefficients")->required();
  dq->add_option("output", out_path, "Shifted TNS1 tensor")->required();
  dq->add_option("--alpha", alpha, "Shift strength")->check(CLI::NonNegativeNumber);
  dq->add_option("--reference", reference_path, "TNS1 reference for the MSE report");
  dq->add_option("--rate-a", rate_a, "Rate model slope a in a*log2|v| + b");
  dq->add_option("--rate-b", rate_b, "Rate model offset b");
  dq->add_option("--seed", seed, "Unused; accepted for uniformity");

  // shift-demo / correlation
  uint64_t instances = 10;
  std::string pair = "main";
  auto* demo = app.add_subcommand("shift-demo",
                                  "Latent shift, baselines and true-gradient bound per instance");
  demo->add_option("--instances", instances, "Number of synthetic instances")
      ->check(CLI::PositiveNumber);
  demo->add_option("--out", out_path, "CSV output path (default stdout)");
  AddCodecFlags(demo, codec);
  demo->add_option("--config", config_path, "key=value model config");
  demo->add_option("--set", sets, "Override one model config key (key=value)");
  demo->add_option("--seed", seed, "Model and source seed base");

  auto* corr = app.add_subcommand("correlation", "Gradient correlation report");
  corr->add_option("--instances", instances, "Number of synthetic instances")
      ->check(CLI::PositiveNumber);
  corr->add_option("--pair", pair, "main or side")->check(CLI::IsMember({"main", "side"}));
  AddCodecFlags(corr, codec);
  corr->add_option("--config", config_path, "key=value model config");
  corr->add_option("--set", sets, "Override one model config key (key=value)");
  corr->add_option("--seed", seed, "Model and source seed base");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "ltc 0.1.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (sim->parsed()) {
      RdSimConfig config =
          config_path.empty() ? RdSimConfig{} : RdSimConfig::FromText(ReadText(config_path));
      ApplyOverrides(config, sets);
      if (sim->count("--seed") > 0) config.seed = seed;
      if (measured) config.measured = true;
      Emit(out_path, RdRowsToCsv(SimulateRd(config)), out);
    } else if (bd->parsed()) {
      const RdCurve a = CurveFromRows(FilterRows(ParseRdCsv(ReadText(curve_a)), lattice_a), "a");
      const RdCurve b = CurveFromRows(FilterRows(ParseRdCsv(ReadText(curve_b)), lattice_b), "b");
      if (mode == "rate") {
        const double v = BdRate(a, b);
        out << "bd_rate_pct=" << Fmt("%.6f", v) << "\n";
      } else {
        const double v = BdPsnr(a, b);
        out << "bd_psnr_db=" << Fmt("%.6f", v) << "\n";
      }
    } else if (enc->parsed()) {
      const Tensor input = ParseTensor(ReadFileBytes(in_path));
      const SyntheticModel model(LoadModelConfig(config_path, sets), seed);
      const CodecOptions options = codec.Options();
      const size_t n = model.n();
      Container c;
      c.seed = seed;
      c.config_text = model.config().ToText();
      c.shape = input.shape;
      double sq_err = 0.0;
      for (size_t start = 0; start < input.data.size(); start += n) {
        std::vector<double> x(n, 0.0);
        const size_t len = std::min(n, input.data.size() - start);
        for (size_t i = 0; i < len; ++i) x[i] = input.data[start + i];
        EncodeResult r = EncodeFull(x, model, options);
        for (size_t i = 0; i < len; ++i) {
          const double d = static_cast<double>(static_cast<float>(r.instance.x_hat[i])) -
                           static_cast<double>(input.data[start + i]);
          sq_err += d * d;
        }
        c.chunks.push_back(std::move(r.streams));
      }
      const std::vector<uint8_t> bytes = SerializeContainer(c);
      WriteFileAtomic(out_path, bytes);
      const double count = static_cast<double>(std::max<size_t>(input.data.size(), 1));
      out << "rate_bpp=" << Fmt("%.6f", 8.0 * bytes.size() / count)
          << " psnr_db=" << Fmt("%.6f", Psnr(sq_err / count)) << "\n";
    } else if (dec->parsed()) {
      const Container c = ParseContainer(ReadFileBytes(in_path));
      const SyntheticModel model(SyntheticConfig::FromText(c.config_text),
                                 decode_seed.value_or(c.seed));
      Tensor t;
      t.shape = c.shape;
      const size_t total = t.size();
      const size_t n = model.n();
      if (c.chunks.size() != (total + n - 1) / n) throw Error("corrupt container");
      t.data.reserve(total);
      for (const EncodedStreams& s : c.chunks) {
        const DecodeResult r = DecodeFull(s, model);
        const size_t len = std::min(n, total - t.data.size());
        for (size_t i = 0; i < len; ++i) t.data.push_back(static_cast<float>(r.x_hat[i]));
      }
      WriteFileAtomic(out_path, SerializeTensor(t));
    } else if (dq->parsed()) {
      const Tensor input = ParseTensor(ReadFileBytes(in_path));
      std::vector<int64_t> coeffs(input.data.size());
      for (size_t i = 0; i < coeffs.size(); ++i) {
        const float v = input.data[i];
        if (!std::isfinite(v) || std::nearbyint(v) != v) throw Error("non-integer coefficient");
        coeffs[i] = static_cast<int64_t>(v);
      }
      std::vector<double> reference;
      if (!reference_path.empty()) {
        const Tensor ref = ParseTensor(ReadFileBytes(reference_path));
        if (ref.data.size() != coeffs.size()) throw Error("shape mismatch");
        reference.assign(ref.data.begin(), ref.data.end());
      }
      const std::vector<double> shifted = DequantShiftTraditional(coeffs, alpha);
      Tensor result;
      result.shape = input.shape;
      result.data.assign(shifted.begin(), shifted.end());
      const DequantShiftReport report = EvaluateDequantShift(
          coeffs, alpha, reference.empty() ? std::span<const double>(shifted) : reference,
          rate_a, rate_b);
      WriteFileAtomic(out_path, SerializeTensor(result));
      if (!reference.empty()) {
        out << "mse_before=" << Fmt("%.9g", report.mse_before)
            << " mse_after=" << Fmt("%.9g", report.mse_after) << " ";
      }
      out << "rate_before=" << Fmt("%.9g", report.rate_before)
          << " rate_after=" << Fmt("%.9g", report.rate_after) << "\n";
    } else if (demo->parsed()) {
      const SyntheticModel model(LoadModelConfig(config_path, sets), seed);
      std::vector<ShiftStudyRow> rows;
      for (uint64_t i = 0; i < instances; ++i) {
        rows.push_back(RunShiftStudy(model, codec.Options(), seed + i + 1));
      }
      Emit(out_path, ShiftStudyCsv(rows), out);
    } else if (corr->parsed()) {
      const SyntheticModel model(LoadModelConfig(config_path, sets), seed);
      CodecOptions options = codec.Options();
      options.shift = false;
      std::vector<GradientSample> samples;
      double mean_r = 0.0;
      for (uint64_t i = 0; i < instances; ++i) {
        const SyntheticModel::Sample s = model.SampleSource(seed + i + 1);
        const CodecInstance inst = EncodeFull(s.x, model, options).instance;
        samples.push_back(pair == "main" ? MainGradientSample(inst)
                                         : SideGradientSample(inst, model));
        mean_r += PearsonCorrelation(samples.back().first, samples.back().second);
      }
      const GradientReport report = CorrelationReport(
          samples, pair == "main" ? GradientPairId::kMainEntropyVsDistortion
                                  : GradientPairId::kSideEntropyVsMainEntropy);
      out << "pair=" << pair << " pearson_r=" << Fmt("%.6f", report.pearson_r)
          << " mean_instance_r=" << Fmt("%.6f", mean_r / instances)
          << " n=" << report.n << " instances=" << instances << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ltc::cli
