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

#include "ltc/shift_study.h"

#include <cstdio>

#include "ltc/error.h"

namespace ltc {

GradientSample MainGradientSample(const CodecInstance& instance) {
  return {EntropyGradient(instance.y_hat_unshifted, instance.field),
          LatentDistortionGradient(instance)(instance.y_hat_unshifted)};
}

GradientSample SideGradientSample(const CodecInstance& instance,
                                  const SyntheticModel& model) {
  return {SideGradient(instance.z_hat, model.side_pdfs(), SyntheticModel::kSideBinWidth),
          model.HyperRateGradient(instance.y_hat_unshifted, instance.z_hat)};
}

ShiftStudyRow RunShiftStudy(const SyntheticModel& model, const CodecOptions& codec,
                            uint64_t source_seed, const ShiftStudyOptions& options) {
  const SyntheticModel::Sample source = model.SampleSource(source_seed);
  CodecOptions off = codec, on = codec;
  off.shift = false;
  on.shift = true;
  const CodecInstance a = EncodeFull(source.x, model, off).instance;
  const CodecInstance b = EncodeFull(source.x, model, on).instance;

  ShiftStudyRow row;
  row.seed = source_seed;
  row.psnr_off_db = a.psnr_db;
  row.psnr_on_db = b.psnr_db;
  row.mse_off = a.mse;
  row.mse_on = b.mse;
  row.main_bits_off = a.main_bits;
  row.main_bits_on = b.main_bits;
  row.step_code_f = b.step_code_f;
  row.step_code_h = b.step_code_h;

  const DistortionFn distortion = LatentDistortion(a);
  const std::vector<double>& y_hat = a.y_hat_unshifted;
  const StepCandidates proxy = StepCandidates::ForField(a.field);
  const ShiftResult ls = SearchStepMain(distortion, y_hat, a.field, proxy);
  row.gain_latent_shift_db = GainDb(ls.objective_before, ls.objective_after);
  if (options.baselines) {
    const double side = Lattice(codec.lattice, codec.volume).side_length();
    row.gain_sign_db =
        BaselineShift(BaselineKind::kSign, distortion, y_hat, a.field, side, source_seed)
            .gain_db;
    row.gain_scalar_db =
        BaselineShift(BaselineKind::kScalar, distortion, y_hat, a.field, side, source_seed)
            .gain_db;
    row.gain_random_db =
        BaselineShift(BaselineKind::kRandom, distortion, y_hat, a.field, side, source_seed)
            .gain_db;
    // Curvature of the MSE objective is 2/n, hence base n/2.
    const TrueGradientReport t = TrueGradientBound(
        distortion, LatentDistortionGradient(a), y_hat, a.field, proxy,
        StepCandidates::Scaled(static_cast<double>(a.x.size()) / 2.0));
    row.gain_true_gradient_db = t.true_gain_db;
  }
  if (options.correlations) {
    const GradientSample main = MainGradientSample(a);
    row.r_main = PearsonCorrelation(main.first, main.second);
    const GradientSample side = SideGradientSample(a, model);
    row.r_side = PearsonCorrelation(side.first, side.second);
  }
  return row;
}

std::string ShiftStudyCsv(const std::vector<ShiftStudyRow>& rows) {
  std::string out =
      "seed,psnr_off_db,psnr_on_db,mse_off,mse_on,main_bits_off,main_bits_on,"
      "step_code_f,step_code_h,gain_latent_shift_db,gain_sign_db,gain_scalar_db,"
      "gain_random_db,gain_true_gradient_db,r_main,r_side\n";
  char buf[512];
  for (const ShiftStudyRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%llu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%d,%d,%.10g,%.10g,%.10g,"
                  "%.10g,%.10g,%.10g,%.10g\n",
                  static_cast<unsigned long long>(r.seed), r.psnr_off_db, r.psnr_on_db,
                  r.mse_off, r.mse_on, r.main_bits_off, r.main_bits_on, r.step_code_f,
                  r.step_code_h, r.gain_latent_shift_db, r.gain_sign_db,
                  r.gain_scalar_db, r.gain_random_db, r.gain_true_gradient_db,
                  r.r_main, r.r_side);
    out += buf;
  }
  return out;
}

}  // namespace ltc
