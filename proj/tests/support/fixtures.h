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


#ifndef MVRSEG_TESTS_SUPPORT_FIXTURES_H_
#define MVRSEG_TESTS_SUPPORT_FIXTURES_H_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mvrseg/objective.h"
#include "mvrseg/random.h"
#include "mvrseg/segmenter.h"
#include "mvrseg/toy_model.h"

namespace mvrseg::testing {

// Largest |analytic - numeric| / max(|analytic|, |numeric|, 1e-3) over all
// parameters, using central differences with step `h`.
inline double MaxGradientError(const ToyModel& model, const ExampleViews& views,
                               const ObjectiveConfig& config, double h = 1e-5) {
  Parameters grad(model.params().vocab_size, model.params().dim, model.params().num_classes);
  ComputeLoss(model, views, config, &grad);
  ToyModel probe = model;
  double worst = 0.0;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double orig = probe.params()[i];
    probe.params()[i] = orig + h;
    const double up = ComputeLoss(probe, views, config, nullptr).total;
    probe.params()[i] = orig - h;
    const double down = ComputeLoss(probe, views, config, nullptr).total;
    probe.params()[i] = orig;
    const double numeric = (up - down) / (2.0 * h);
    const double denom = std::max({std::abs(grad[i]), std::abs(numeric), 1e-3});
    worst = std::max(worst, std::abs(grad[i] - numeric) / denom);
  }
  return worst;
}

// Random token sequence over `pieces` with `words` words of 1..3 pieces.
inline TokenSeq RandomTokens(Rng& rng, const std::vector<std::string>& pieces,
                             std::size_t words) {
  TokenSeq t;
  for (std::size_t w = 0; w < words; ++w) {
    const std::size_t begin = t.pieces.size();
    const auto n = 1 + rng.UniformInt(3);
    for (std::uint64_t k = 0; k < n; ++k) t.pieces.push_back(pieces[rng.UniformInt(pieces.size())]);
    t.word_spans.emplace_back(begin, t.pieces.size());
  }
  return t;
}

// A random model and example pair for gradient checking.
struct GradientInstance {
  ToyModel model;
  ExampleViews views;
};

inline GradientInstance RandomInstance(Rng& rng, Task task, std::size_t classes = 3) {
  std::vector<std::string> pieces = {"<unk>", "p0", "p1", "p2", "p3", "p4", "p5"};
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < classes; ++c) labels.push_back("c" + std::to_string(c));
  GradientInstance inst;
  inst.model = ToyModel::Random(task, pieces, labels, 4, 0.8, rng);
  const std::size_t words = 1 + rng.UniformInt(4);
  inst.views.det = RandomTokens(rng, pieces, words);
  inst.views.prob = RandomTokens(rng, pieces, words);
  const std::size_t units = task == Task::kClassification ? 1 : words;
  for (std::size_t u = 0; u < units; ++u) inst.views.labels.push_back(rng.UniformInt(classes));
  return inst;
}

}  // namespace mvrseg::testing

#endif  // MVRSEG_TESTS_SUPPORT_FIXTURES_H_
