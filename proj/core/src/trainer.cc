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

#include "mvrseg/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvrseg/text.h"

namespace mvrseg {

void TrainConfig::Validate() const {
  if (lambda && !(*lambda >= 0.0)) throw Error("lambda must be >= 0");
  if (!(tau > 0.0)) throw Error("tau must be > 0");
  if (dropout_p && !(*dropout_p >= 0.0 && *dropout_p <= 1.0)) {
    throw Error("dropout_p must be in [0, 1]");
  }
  if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0)) throw Error("alpha must be in [0, 1]");
  if (ablate.any() && mode != LossMode::kMvr) {
    throw Error("ablations are only valid in MVR mode");
  }
  if (!(learning_rate > 0.0)) throw Error("learning rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw Error("momentum must be in [0, 1)");
  if (batch_size < 1) throw Error("batch size must be >= 1");
  if (dim < 1) throw Error("dim must be >= 1");
  if (!(init_scale >= 0.0)) throw Error("init scale must be >= 0");
}

ResolvedConfig Resolve(const TrainConfig& config, SegmenterFamily family) {
  config.Validate();
  const bool bpe = family == SegmenterFamily::kBpe;
  const bool mvr = config.mode == LossMode::kMvr;
  ResolvedConfig r;
  r.lambda = config.lambda.value_or(bpe ? 0.2 : 0.6);
  if (bpe) {
    r.strength = config.dropout_p.value_or(mvr ? 0.2 : 0.1);
  } else {
    r.strength = config.alpha.value_or(mvr ? 0.2 : 0.6);
  }
  r.objective.mode = config.mode;
  r.objective.lambda = r.lambda;
  r.objective.tau = config.tau;
  r.objective.flatten_target = config.flatten_target;
  r.objective.kl_target_grad = config.kl_target_grad;
  r.objective.ablate = config.ablate;
  r.objective.max_pieces = config.max_pieces;
  r.objective.Validate();
  return r;
}

nlohmann::json EpochMetrics::ToJson() const {
  nlohmann::json j = {
      {"epoch", epoch},     {"loss", loss},           {"ce_det", ce_det},
      {"ce_prob", ce_prob}, {"kl", kl},               {"train_acc", train_acc},
      {"dev_acc", nullptr}, {"skipped", skipped},
  };
  if (dev_acc) j["dev_acc"] = *dev_acc;
  return j;
}

namespace {

std::size_t Argmax(const std::vector<double>& p) {
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

double AccuracyOnViews(const ToyModel& model, const Dataset& data,
                       const std::vector<TokenSeq>& det) {
  std::size_t correct = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < data.examples.size(); ++i) {
    const Prediction pred = Predict(model, det[i]);
    const Example& ex = data.examples[i];
    if (model.task() == Task::kClassification) {
      correct += pred.labels[0] == ex.labels[0];
      ++total;
    } else {
      for (std::size_t w = 0; w < pred.labels.size(); ++w) {
        correct += pred.labels[w] == ex.labels[w];
        ++total;
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<TokenSeq> DeterministicViews(const Dataset& data, const Segmenter& segmenter) {
  std::vector<TokenSeq> out;
  out.reserve(data.examples.size());
  for (const Example& ex : data.examples) out.push_back(segmenter.Deterministic(ex.words));
  return out;
}

}  // namespace

TrainResult Train(const Dataset& train, const Dataset* dev, const Segmenter& segmenter,
                  const TrainConfig& config,
                  const std::function<void(const EpochMetrics&)>& on_epoch) {
  const ResolvedConfig resolved = Resolve(config, segmenter.family());
  train.Validate();
  if (dev) {
    dev->Validate();
    if (dev->task != train.task || dev->label_names != train.label_names) {
      throw Error("dev set label space differs from the training set");
    }
  }

  Rng init_rng = Rng::Stream(config.seed, {0});
  TrainResult result;
  result.model = ToyModel::Random(train.task, segmenter.PieceInventory(), train.label_names,
                                  config.dim, config.init_scale, init_rng);
  ToyModel& model = result.model;

  const std::vector<TokenSeq> det = DeterministicViews(train, segmenter);
  const std::vector<TokenSeq> dev_det =
      dev ? DeterministicViews(*dev, segmenter) : std::vector<TokenSeq>{};
  const bool needs_sample = config.mode != LossMode::kBaseline;

  const std::size_t n = train.examples.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  Parameters grad(model.params().vocab_size, model.params().dim, model.params().num_classes);
  Parameters velocity = grad;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    Rng shuffle_rng = Rng::Stream(config.seed, {1, epoch});
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.UniformInt(i)]);
    }

    EpochMetrics m;
    m.epoch = epoch;
    std::size_t counted = 0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t stop = std::min(n, start + config.batch_size);
      grad.SetZero();
      std::size_t used = 0;
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t idx = order[k];
        const Example& ex = train.examples[idx];
        ExampleViews views;
        views.det = det[idx];
        views.labels = ex.labels;
        if (needs_sample) {
          Rng rng = Rng::Stream(config.seed, {2, epoch, idx});
          views.prob = segmenter.Sample(ex.words, resolved.strength, rng);
        }
        const LossValue lv = ComputeLoss(model, views, resolved.objective, &grad);
        if (lv.skipped) {
          ++m.skipped;
          continue;
        }
        if (lv.kl < 0.0) throw Error("negative KL divergence during training");
        ++used;
        m.loss += lv.total;
        m.ce_det += lv.ce_det;
        m.ce_prob += lv.ce_prob;
        m.kl += lv.kl;
      }
      if (used == 0) continue;
      counted += used;
      grad.Scale(1.0 / static_cast<double>(used));
      if (config.momentum > 0.0) {
        velocity.Scale(config.momentum);
        velocity.AddScaled(1.0, grad);
        model.params().AddScaled(-config.learning_rate, velocity);
      } else {
        model.params().AddScaled(-config.learning_rate, grad);
      }
    }
    if (!model.params().AllFinite()) throw Error("training diverged (non-finite parameters)");
    if (counted > 0) {
      const double inv = 1.0 / static_cast<double>(counted);
      m.loss *= inv;
      m.ce_det *= inv;
      m.ce_prob *= inv;
      m.kl *= inv;
    }
    m.train_acc = AccuracyOnViews(model, train, det);
    if (dev) m.dev_acc = AccuracyOnViews(model, *dev, dev_det);
    result.history.push_back(m);
    if (on_epoch) on_epoch(m);
  }
  return result;
}

Prediction Predict(const ToyModel& model, const TokenSeq& det_tokens) {
  Prediction pred;
  pred.probs = Forward(model, det_tokens, 0);
  for (const auto& p : pred.probs) pred.labels.push_back(Argmax(p));
  return pred;
}

Prediction Predict(const ToyModel& model, std::span<const std::string> words,
                   const Segmenter& segmenter) {
  return Predict(model, segmenter.Deterministic(words));
}

double Accuracy(const ToyModel& model, const Dataset& data, const Segmenter& segmenter) {
  return AccuracyOnViews(model, data, DeterministicViews(data, segmenter));
}

}  // namespace mvrseg
