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

#include "mvrseg/toy_model.h"

#include <cmath>

#include "mvrseg/distribution.h"
#include "mvrseg/text.h"

namespace mvrseg {

const char* TaskName(Task task) {
  return task == Task::kClassification ? "clf" : "tag";
}

Task ParseTask(std::string_view name) {
  if (name == "clf") return Task::kClassification;
  if (name == "tag") return Task::kTagging;
  throw Error("unknown task '" + std::string(name) + "' (expected clf or tag)");
}

Parameters::Parameters(std::size_t vocab, std::size_t d, std::size_t classes)
    : vocab_size(vocab),
      dim(d),
      num_classes(classes),
      embeddings(vocab * d, 0.0),
      weights(d * classes, 0.0),
      bias(classes, 0.0) {}

double& Parameters::operator[](std::size_t i) {
  if (i < embeddings.size()) return embeddings[i];
  i -= embeddings.size();
  if (i < weights.size()) return weights[i];
  return bias.at(i - weights.size());
}

double Parameters::operator[](std::size_t i) const {
  return const_cast<Parameters&>(*this)[i];
}

void Parameters::SetZero() {
  std::fill(embeddings.begin(), embeddings.end(), 0.0);
  std::fill(weights.begin(), weights.end(), 0.0);
  std::fill(bias.begin(), bias.end(), 0.0);
}

void Parameters::Scale(double a) {
  for (double& x : embeddings) x *= a;
  for (double& x : weights) x *= a;
  for (double& x : bias) x *= a;
}

void Parameters::AddScaled(double a, const Parameters& other) {
  for (std::size_t i = 0; i < embeddings.size(); ++i) embeddings[i] += a * other.embeddings[i];
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] += a * other.weights[i];
  for (std::size_t i = 0; i < bias.size(); ++i) bias[i] += a * other.bias[i];
}

bool Parameters::AllFinite() const {
  for (const auto* v : {&embeddings, &weights, &bias}) {
    for (double x : *v) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

ToyModel::ToyModel(Task task, std::vector<std::string> pieces,
                   std::vector<std::string> labels, std::size_t dim)
    : task_(task), pieces_(std::move(pieces)), labels_(std::move(labels)) {
  if (dim < 1) throw Error("model dimension must be >= 1");
  if (labels_.size() < 2) throw Error("need at least two classes");
  ids_.reserve(pieces_.size());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!ids_.emplace(pieces_[i], i).second) {
      throw Error("duplicate piece in model vocabulary: " + pieces_[i]);
    }
  }
  auto unk = ids_.find(std::string(kUnkPiece));
  if (unk == ids_.end()) throw Error("model vocabulary lacks <unk>");
  unk_id_ = unk->second;
  params_ = Parameters(pieces_.size(), dim, labels_.size());
}

ToyModel ToyModel::Random(Task task, std::vector<std::string> pieces,
                          std::vector<std::string> labels, std::size_t dim,
                          double scale, Rng& rng) {
  ToyModel model(task, std::move(pieces), std::move(labels), dim);
  Parameters& p = model.params_;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = scale * rng.Normal();
  return model;
}

std::size_t ToyModel::PieceId(const std::string& piece) const {
  auto it = ids_.find(piece);
  return it == ids_.end() ? unk_id_ : it->second;
}

nlohmann::json ToyModel::ToJson() const {
  return {
      {"format", "mvrseg-toy-v1"},
      {"task", TaskName(task_)},
      {"labels", labels_},
      {"dim", params_.dim},
      {"pieces", pieces_},
      {"embeddings", params_.embeddings},
      {"weights", params_.weights},
      {"bias", params_.bias},
  };
}

ToyModel ToyModel::FromJson(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "mvrseg-toy-v1") {
      throw Error("unsupported model format");
    }
    ToyModel model(ParseTask(j.at("task").get<std::string>()),
                   j.at("pieces").get<std::vector<std::string>>(),
                   j.at("labels").get<std::vector<std::string>>(),
                   j.at("dim").get<std::size_t>());
    Parameters& p = model.params_;
    auto emb = j.at("embeddings").get<std::vector<double>>();
    auto w = j.at("weights").get<std::vector<double>>();
    auto b = j.at("bias").get<std::vector<double>>();
    if (emb.size() != p.embeddings.size() || w.size() != p.weights.size() ||
        b.size() != p.bias.size()) {
      throw Error("parameter shapes do not match the vocabulary and labels");
    }
    p.embeddings = std::move(emb);
    p.weights = std::move(w);
    p.bias = std::move(b);
    if (!p.AllFinite()) throw Error("non-finite parameter");
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model: ") + e.what());
  }
}

namespace {

UnitActivation Pool(const ToyModel& model, std::size_t word,
                    std::vector<std::size_t> ids) {
  const Parameters& p = model.params();
  const std::size_t d = p.dim;
  const std::size_t c = p.num_classes;
  UnitActivation u;
  u.word = word;
  u.piece_ids = std::move(ids);
  u.hidden.assign(d, 0.0);
  for (std::size_t id : u.piece_ids) {
    const double* row = &p.embeddings[id * d];
    for (std::size_t k = 0; k < d; ++k) u.hidden[k] += row[k];
  }
  const double inv = 1.0 / static_cast<double>(u.piece_ids.size());
  for (double& h : u.hidden) h *= inv;
  u.logits = p.bias;
  for (std::size_t k = 0; k < d; ++k) {
    const double* w = &p.weights[k * c];
    for (std::size_t j = 0; j < c; ++j) u.logits[j] += u.hidden[k] * w[j];
  }
  return u;
}

}  // namespace

std::vector<UnitActivation> ForwardUnits(const ToyModel& model, const TokenSeq& tokens,
                                         std::size_t max_pieces) {
  const std::size_t kept = max_pieces == 0
                               ? tokens.pieces.size()
                               : std::min(max_pieces, tokens.pieces.size());
  if (kept == 0) throw Error("no pieces left after truncation");

  std::vector<UnitActivation> units;
  if (model.task() == Task::kClassification) {
    std::vector<std::size_t> ids;
    ids.reserve(kept);
    for (std::size_t i = 0; i < kept; ++i) ids.push_back(model.PieceId(tokens.pieces[i]));
    units.push_back(Pool(model, 0, std::move(ids)));
    return units;
  }
  for (std::size_t w = 0; w < tokens.num_words(); ++w) {
    const auto [begin, end] = tokens.word_spans[w];
    if (begin >= kept || begin == end) continue;
    std::vector<std::size_t> ids;
    for (std::size_t i = begin; i < std::min(end, kept); ++i) {
      ids.push_back(model.PieceId(tokens.pieces[i]));
    }
    units.push_back(Pool(model, w, std::move(ids)));
  }
  if (units.empty()) throw Error("no words left after truncation");
  return units;
}

std::vector<std::vector<double>> Forward(const ToyModel& model, const TokenSeq& tokens,
                                         std::size_t max_pieces) {
  std::vector<std::vector<double>> out;
  for (const UnitActivation& u : ForwardUnits(model, tokens, max_pieces)) {
    out.push_back(Softmax(u.logits));
  }
  return out;
}

void BackwardUnit(const ToyModel& model, const UnitActivation& unit,
                  std::span<const double> dlogits, Parameters& grad) {
  const Parameters& p = model.params();
  const std::size_t d = p.dim;
  const std::size_t c = p.num_classes;
  std::vector<double> dhidden(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    const double* w = &p.weights[k * c];
    double* gw = &grad.weights[k * c];
    for (std::size_t j = 0; j < c; ++j) {
      gw[j] += unit.hidden[k] * dlogits[j];
      dhidden[k] += w[j] * dlogits[j];
    }
  }
  for (std::size_t j = 0; j < c; ++j) grad.bias[j] += dlogits[j];
  const double inv = 1.0 / static_cast<double>(unit.piece_ids.size());
  for (std::size_t id : unit.piece_ids) {
    double* ge = &grad.embeddings[id * d];
    for (std::size_t k = 0; k < d; ++k) ge[k] += dhidden[k] * inv;
  }
}

}  // namespace mvrseg
