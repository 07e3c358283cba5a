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


#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "mvrseg/bpe_model.h"
#include "mvrseg/corpus.h"
#include "mvrseg/objective.h"
#include "mvrseg/random.h"
#include "mvrseg/segmenter.h"
#include "mvrseg/toy_model.h"
#include "mvrseg/trainer.h"

namespace mvrseg {
namespace {

Dataset MakeDataset(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> lexicon;
  for (int i = 0; i < 300; ++i) {
    std::string w;
    const auto len = 3 + rng.UniformInt(7);
    for (std::uint64_t k = 0; k < len; ++k) w += static_cast<char>('a' + rng.UniformInt(12));
    lexicon.push_back(w);
  }
  Dataset ds;
  ds.label_names = {"0", "1", "2"};
  for (std::size_t i = 0; i < n; ++i) {
    Example ex;
    const std::size_t y = rng.UniformInt(3);
    for (int k = 0; k < 16; ++k) {
      ex.words.push_back(lexicon[(y * 100 + rng.UniformInt(150)) % lexicon.size()]);
    }
    ex.labels = {y};
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

std::shared_ptr<const Segmenter> MakeSegmenter(const Dataset& ds) {
  std::vector<std::string> text;
  for (const Example& ex : ds.examples) {
    std::string s;
    for (const std::string& w : ex.words) s += w + " ";
    text.push_back(s);
  }
  return MakeBpeSegmenter(TrainBpe(CountCorpus(text), 300));
}

// One loss-and-gradient evaluation per mode (0 baseline, 1 SR, 2 MVR).
void BM_LossAndGradient(benchmark::State& state) {
  const Dataset ds = MakeDataset(64, 3);
  const auto seg = MakeSegmenter(ds);
  std::vector<std::string> pieces = seg->PieceInventory();
  Rng rng(5);
  const ToyModel model = ToyModel::Random(Task::kClassification, pieces, ds.label_names,
                                          static_cast<std::size_t>(state.range(1)), 0.1, rng);
  std::vector<ExampleViews> views;
  for (const Example& ex : ds.examples) {
    views.push_back({seg->Deterministic(ex.words), seg->Sample(ex.words, 0.2, rng), ex.labels});
  }
  ObjectiveConfig config;
  config.mode = static_cast<LossMode>(state.range(0));
  config.tau = 2.0;
  Parameters grad(model.params().vocab_size, model.params().dim, model.params().num_classes);
  for (auto _ : state) {
    for (const ExampleViews& v : views) {
      benchmark::DoNotOptimize(ComputeLoss(model, v, config, &grad));
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * views.size()));
  state.SetLabel(LossModeName(config.mode));
}
BENCHMARK(BM_LossAndGradient)->ArgsProduct({{0, 1, 2}, {16, 64}});

// A full training epoch, including resampling of the probabilistic view.
void BM_TrainEpoch(benchmark::State& state) {
  const Dataset ds = MakeDataset(256, 4);
  const auto seg = MakeSegmenter(ds);
  TrainConfig config;
  config.mode = static_cast<LossMode>(state.range(0));
  config.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(Train(ds, nullptr, *seg, config));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * ds.examples.size()));
  state.SetLabel(LossModeName(config.mode));
}
BENCHMARK(BM_TrainEpoch)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mvrseg
