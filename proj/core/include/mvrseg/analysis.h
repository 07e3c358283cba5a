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

#ifndef MVRSEG_ANALYSIS_H_
#define MVRSEG_ANALYSIS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvrseg/segmenter.h"

namespace mvrseg {

// ---- segmentation granularity ----

// Buckets for 1..9 pieces per word, the last one holding everything above 9.
inline constexpr std::size_t kGranularityBuckets = 10;

struct GroupGranularity {
  std::array<std::uint64_t, kGranularityBuckets> counts{};
  std::uint64_t words = 0;
  std::uint64_t pieces = 0;

  double Fraction(std::size_t bucket) const;
  double MeanPiecesPerWord() const;
};

struct GranularityReport {
  std::map<std::string, GroupGranularity> groups;
  nlohmann::json ToJson() const;
};

struct LabeledSentence {
  std::string text;
  std::string group;
};

using SegmentFn = std::function<TokenSeq(std::span<const std::string>)>;

// Pieces-per-word histogram and mean per group. With `known_groups` set
// (strict mode) a sentence whose group is not listed raises Error.
GranularityReport Granularity(std::span<const LabeledSentence> corpus,
                              const SegmentFn& segment,
                              const std::set<std::string>* known_groups = nullptr);

// ---- prediction files ----

// One line of a predictions file: {"id", "group", "gold", "probs"}.
struct PredictionRecord {
  std::int64_t id = 0;
  std::string group;
  std::size_t gold = 0;
  std::vector<double> probs;

  nlohmann::json ToJson() const;
  static PredictionRecord FromJson(const nlohmann::json& j);
};

std::vector<PredictionRecord> ParsePredictions(std::string_view jsonl);
std::vector<PredictionRecord> LoadPredictions(const std::string& path);
std::string SerializePredictions(std::span<const PredictionRecord> records);

// ---- entropy buckets ----

struct EntropyBucket {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double metric_a = 0.0;  // accuracy of run A in the bucket
  double metric_b = 0.0;
  double delta = 0.0;     // B - A
};

struct EntropyBucketReport {
  std::size_t num_classes = 0;
  std::vector<EntropyBucket> buckets;
  nlohmann::json ToJson() const;
};

// Index of the equal-width bucket over [0, ln C] holding `entropy`; values at
// or above ln C land in the top bucket.
std::size_t EntropyBucketIndex(double entropy, std::size_t num_classes,
                               std::size_t num_buckets);

// Buckets examples by the entropy of run A's prediction and reports the
// per-bucket accuracy delta of run B over run A. Throws Error when the runs
// are not aligned (same ids, gold labels and class count).
EntropyBucketReport EntropyBuckets(std::span<const PredictionRecord> run_a,
                                   std::span<const PredictionRecord> run_b,
                                   std::size_t num_buckets = 5);

// ---- ensemble distance ----

// Element-wise mean of two distributions.
std::vector<double> EnsembleDistribution(std::span<const double> a, std::span<const double> b);

// Mean KL(ensemble || test) per group, ensemble = mean of base and SR.
std::map<std::string, double> EnsembleKl(std::span<const PredictionRecord> base,
                                         std::span<const PredictionRecord> sr,
                                         std::span<const PredictionRecord> test);

// ---- grouped score deltas ----

struct GroupDelta {
  std::size_t count = 0;
  double score_a = 0.0;  // accuracy
  double score_b = 0.0;
  double delta = 0.0;    // B - A
};

// Per-group accuracy of two aligned runs. Groups come from the records
// unless `group_of_id` maps an id to a group label.
std::map<std::string, GroupDelta> GroupedDelta(
    std::span<const PredictionRecord> run_a, std::span<const PredictionRecord> run_b,
    const std::map<std::int64_t, std::string>* group_of_id = nullptr);

// (mean pieces per word, accuracy delta) for every group present in both.
std::vector<std::pair<double, double>> GainVsGranularity(
    const GranularityReport& granularity, const std::map<std::string, GroupDelta>& deltas);

nlohmann::json GroupDeltasToJson(const std::map<std::string, GroupDelta>& deltas);

}  // namespace mvrseg

#endif  // MVRSEG_ANALYSIS_H_
