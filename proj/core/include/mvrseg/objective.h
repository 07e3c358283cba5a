// Copyright 2026 The mvrseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MVRSEG_OBJECTIVE_H_
#define MVRSEG_OBJECTIVE_H_

#include <cstddef>
#include <string_view>
#include <vector>

#include "mvrseg/segmenter.h"
#include "mvrseg/toy_model.h"

namespace mvrseg {

// baseline: cross-entropy on the deterministic view.
// SR: cross-entropy on a sampled view.
// MVR: 1/2 CE(det) + 1/2 CE(sampled) + lambda * KL(flat(det) || sampled).
enum class LossMode { kBaseline, kSr, kMvr };

const char* LossModeName(LossMode mode);
LossMode ParseLossMode(std::string_view name);  // "baseline", "SR", "MVR"

// Which side of the consistency term gets the temperature.
enum class FlattenTarget { kDetOnly, kBoth };

// MVR terms switched off for ablations. The remaining cross-entropy weights
// are rescaled to sum to one.
struct Ablation {
  bool det_ce = false;
  bool prob_ce = false;
  bool consistency = false;

  bool any() const { return det_ce || prob_ce || consistency; }
  bool operator==(const Ablation&) const = default;
};

// Parses a comma-separated subset of {det_ce, prob_ce, consistency}.
Ablation ParseAblation(std::string_view list);

struct ObjectiveConfig {
  LossMode mode = LossMode::kMvr;
  double lambda = 0.2;
  double tau = 1.0;
  FlattenTarget flatten_target = FlattenTarget::kDetOnly;
  // When false the flattened deterministic distribution is a constant target
  // of the consistency term (no gradient through it).
  bool kl_target_grad = true;
  Ablation ablate;
  std::size_t max_pieces = 0;  // per-view truncation, 0 = none

  // Throws Error on lambda < 0, tau <= 0, or ablations outside MVR mode.
  void Validate() const;
};

// The deterministic view x-hat and sampled view x' of one input.
struct ExampleViews {
  TokenSeq det;
  TokenSeq prob;
  std::vector<std::size_t> labels;  // one per unit (class, or tag per word)
};

struct LossValue {
  double total = 0.0;
  double ce_det = 0.0;   // mean over units; 0 when the mode does not use it
  double ce_prob = 0.0;
  double kl = 0.0;
  std::size_t units = 0;  // units the loss averaged over
  bool skipped = false;   // no shared units after truncation
};

// Loss of one example. Tagging losses average over words; MVR uses only the
// words that survive truncation in both views. When `grad` is non-null the
// gradient of `total` is added to it. Skipped examples leave it untouched.
LossValue ComputeLoss(const ToyModel& model, const ExampleViews& views,
                      const ObjectiveConfig& config, Parameters* grad);

// Mode-specific entry points; each forces config.mode.
LossValue MvrLoss(const ToyModel& model, const ExampleViews& views,
                  const ObjectiveConfig& config, Parameters* grad);
LossValue SrLoss(const ToyModel& model, const ExampleViews& views,
                 const ObjectiveConfig& config, Parameters* grad);
LossValue BaselineLoss(const ToyModel& model, const ExampleViews& views,
                       const ObjectiveConfig& config, Parameters* grad);

}  // namespace mvrseg

#endif  // MVRSEG_OBJECTIVE_H_
