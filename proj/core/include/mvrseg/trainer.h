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

#ifndef MVRSEG_TRAINER_H_
#define MVRSEG_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvrseg/dataset.h"
#include "mvrseg/objective.h"
#include "mvrseg/segmenter.h"
#include "mvrseg/toy_model.h"

namespace mvrseg {

struct TrainConfig {
  LossMode mode = LossMode::kBaseline;
  // Unset values take the per-family defaults (see Resolve()).
  std::optional<double> lambda;
  std::optional<double> dropout_p;  // BPE family
  std::optional<double> alpha;      // unigram family
  double tau = 1.0;
  FlattenTarget flatten_target = FlattenTarget::kDetOnly;
  bool kl_target_grad = true;
  Ablation ablate;

  double learning_rate = 0.5;
  double momentum = 0.0;
  std::size_t epochs = 30;
  std::size_t batch_size = 16;
  std::uint64_t seed = 1;
  std::size_t max_pieces = 128;  // 0 = no truncation
  std::size_t dim = 16;
  double init_scale = 0.1;

  void Validate() const;
};

// Hyperparameters after applying the per-family defaults:
//   SR:  p = 0.1 (BPE-dropout), alpha = 0.6 (ULM-sample)
//   MVR: lambda = 0.2 with p = 0.2 (BPE), lambda = 0.6 with alpha = 0.2 (ULM)
struct ResolvedConfig {
  double lambda = 0.0;
  double strength = 0.0;  // dropout probability or alpha, by family
  ObjectiveConfig objective;
};
ResolvedConfig Resolve(const TrainConfig& config, SegmenterFamily family);

struct EpochMetrics {
  std::size_t epoch = 0;
  double loss = 0.0;
  double ce_det = 0.0;
  double ce_prob = 0.0;
  double kl = 0.0;
  double train_acc = 0.0;
  std::optional<double> dev_acc;
  std::size_t skipped = 0;

  nlohmann::json ToJson() const;
};

struct TrainResult {
  ToyModel model;
  std::vector<EpochMetrics> history;
};

// Minibatch SGD (optionally with momentum) over `train`. Deterministic views
// are computed once; sampled views are redrawn for every step from a stream
// keyed by (seed, epoch, example). Throws Error on an empty dataset, labels
// outside the label space, or an invalid configuration.
TrainResult Train(const Dataset& train, const Dataset* dev, const Segmenter& segmenter,
                  const TrainConfig& config,
                  const std::function<void(const EpochMetrics&)>& on_epoch = {});

struct Prediction {
  std::vector<std::size_t> labels;          // argmax per unit
  std::vector<std::vector<double>> probs;   // distribution per unit
};

// Inference on the deterministic view only, without truncation.
Prediction Predict(const ToyModel& model, std::span<const std::string> words,
                   const Segmenter& segmenter);
Prediction Predict(const ToyModel& model, const TokenSeq& det_tokens);

// Fraction of correct units (examples for classification, words for tagging).
double Accuracy(const ToyModel& model, const Dataset& data, const Segmenter& segmenter);

}  // namespace mvrseg

#endif  // MVRSEG_TRAINER_H_
