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

#ifndef LTC_SHIFT_STUDY_H_
#define LTC_SHIFT_STUDY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ltc/codec.h"
#include "ltc/latent_shift.h"
#include "ltc/synthetic_model.h"

namespace ltc {

// One synthetic instance encoded with shifts off and on, plus every shift
// variant evaluated on the shifts-off reconstruction.
struct ShiftStudyRow {
  uint64_t seed = 0;
  double psnr_off_db = 0.0;
  double psnr_on_db = 0.0;
  double mse_off = 0.0;
  double mse_on = 0.0;
  double main_bits_off = 0.0;
  double main_bits_on = 0.0;
  uint8_t step_code_f = 0;
  uint8_t step_code_h = 0;
  double gain_latent_shift_db = 0.0;
  double gain_sign_db = 0.0;
  double gain_scalar_db = 0.0;
  double gain_random_db = 0.0;
  double gain_true_gradient_db = 0.0;
  double r_main = 0.0;  // entropy vs distortion gradient
  double r_side = 0.0;  // side entropy vs main entropy gradient, over z_hat
};

struct ShiftStudyOptions {
  bool baselines = true;
  bool correlations = true;
};

ShiftStudyRow RunShiftStudy(const SyntheticModel& model, const CodecOptions& codec,
                            uint64_t source_seed,
                            const ShiftStudyOptions& options = {});

// (grad -ln p_h at y_hat, grad d at y_hat) for a shifts-off instance.
GradientSample MainGradientSample(const CodecInstance& instance);
// (grad -ln p_f at z_hat, grad of -ln p_h(y_hat; H(z_hat)) w.r.t. z_hat).
GradientSample SideGradientSample(const CodecInstance& instance,
                                  const SyntheticModel& model);

// CSV with a header row; columns follow the ShiftStudyRow field order.
std::string ShiftStudyCsv(const std::vector<ShiftStudyRow>& rows);

}  // namespace ltc

#endif  // LTC_SHIFT_STUDY_H_
