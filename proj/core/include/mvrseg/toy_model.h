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

#ifndef MVRSEG_TOY_MODEL_H_
#define MVRSEG_TOY_MODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvrseg/random.h"
#include "mvrseg/segmenter.h"

namespace mvrseg {

enum class Task { kClassification, kTagging };

const char* TaskName(Task task);
Task ParseTask(std::string_view name);

// Dense parameter block; also used for gradients and momentum buffers.
struct Parameters {
  std::size_t vocab_size = 0;
  std::size_t dim = 0;
  std::size_t num_classes = 0;
  std::vector<double> embeddings;  // vocab_size x dim, row-major
  std::vector<double> weights;     // dim x num_classes, row-major
  std::vector<double> bias;        // num_classes

  Parameters() = default;
  Parameters(std::size_t vocab, std::size_t d, std::size_t classes);

  std::size_t size() const {
    return embeddings.size() + weights.size() + bias.size();
  }
  // Flat view over embeddings, then weights, then bias.
  double& operator[](std::size_t i);
  double operator[](std::size_t i) const;

  void SetZero();
  void Scale(double a);
  void AddScaled(double a, const Parameters& other);  // this += a * other
  bool AllFinite() const;

  bool operator==(const Parameters&) const = default;
};

// Bag-of-pieces classifier: mean-pooled piece embeddings followed by a
// linear softmax layer. Tagging pools each word's pieces separately.
class ToyModel {
 public:
  ToyModel() = default;
  // `pieces` must contain "<unk>". Parameters start at zero.
  ToyModel(Task task, std::vector<std::string> pieces,
           std::vector<std::string> labels, std::size_t dim);

  // Parameters drawn from N(0, scale^2).
  static ToyModel Random(Task task, std::vector<std::string> pieces,
                         std::vector<std::string> labels, std::size_t dim,
                         double scale, Rng& rng);

  Task task() const { return task_; }
  const std::vector<std::string>& pieces() const { return pieces_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t num_classes() const { return labels_.size(); }
  std::size_t dim() const { return params_.dim; }

  // Id of `piece`, or of "<unk>" when it is not in the vocabulary.
  std::size_t PieceId(const std::string& piece) const;
  std::size_t unk_id() const { return unk_id_; }

  Parameters& params() { return params_; }
  const Parameters& params() const { return params_; }

  nlohmann::json ToJson() const;
  static ToyModel FromJson(const nlohmann::json& j);

  bool operator==(const ToyModel& other) const {
    return task_ == other.task_ && pieces_ == other.pieces_ &&
           labels_ == other.labels_ && params_ == other.params_;
  }

 private:
  Task task_ = Task::kClassification;
  std::vector<std::string> pieces_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::size_t unk_id_ = 0;
  Parameters params_;
};

// Activations of one prediction unit: the whole sentence for classification,
// one word for tagging.
struct UnitActivation {
  std::size_t word = 0;                // word index (0 for classification)
  std::vector<std::size_t> piece_ids;  // pooled pieces
  std::vector<double> hidden;          // mean embedding
  std::vector<double> logits;
};

// Keeps the first `max_pieces` pieces (0 = keep all). For tagging, a word is
// a unit when its first piece survives and pools only its surviving pieces.
// Throws Error when nothing survives.
std::vector<UnitActivation> ForwardUnits(const ToyModel& model, const TokenSeq& tokens,
                                         std::size_t max_pieces = 0);

// Probability vector per unit.
std::vector<std::vector<double>> Forward(const ToyModel& model, const TokenSeq& tokens,
                                         std::size_t max_pieces = 0);

// Accumulates d(loss)/d(params) into `grad` given d(loss)/d(logits) of a unit.
void BackwardUnit(const ToyModel& model, const UnitActivation& unit,
                  std::span<const double> dlogits, Parameters& grad);

}  // namespace mvrseg

#endif  // MVRSEG_TOY_MODEL_H_
