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

#ifndef MVRSEG_BPE_MODEL_H_
#define MVRSEG_BPE_MODEL_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mvrseg/corpus.h"

namespace mvrseg {

struct BpeMerge {
  std::string left;
  std::string right;

  std::string Merged() const { return left + right; }
  bool operator==(const BpeMerge&) const = default;
};

// Ordered merge table. The rank of a merge is its position (0 = applied
// first). Merges are stored without continuation markers.
//
// The vocabulary is the alphabet (single characters of the training corpus)
// plus the output piece of every merge. Every merge operand must be either an
// alphabet character or the output of an earlier merge.
class BpeModel {
 public:
  BpeModel() = default;
  // Throws Error when an operand is not yet in the vocabulary, a pair is
  // repeated, or an alphabet entry is not a single character.
  BpeModel(std::vector<BpeMerge> merges, std::set<std::string> alphabet);

  const std::vector<BpeMerge>& merges() const { return merges_; }
  const std::set<std::string>& alphabet() const { return alphabet_; }
  const std::set<std::string>& vocabulary() const { return vocabulary_; }

  // Rank of the pair (left, right), both given without markers.
  std::optional<std::size_t> Rank(std::string_view left,
                                  std::string_view right) const;

  bool InVocabulary(const std::string& piece) const {
    return vocabulary_.contains(piece);
  }

  bool operator==(const BpeModel& other) const {
    return merges_ == other.merges_ && alphabet_ == other.alphabet_;
  }

 private:
  std::vector<BpeMerge> merges_;
  std::set<std::string> alphabet_;
  std::set<std::string> vocabulary_;
  // Keyed by "left right"; pieces never contain ASCII whitespace.
  std::unordered_map<std::string, std::size_t> ranks_;
};

// Greedy pair-merge training. Each step merges the adjacent pair with the
// highest corpus count (weighted by word frequency); ties go to the
// lexicographically smallest (left, right). Stops after `num_merges` merges
// or when no pair occurs at least twice.
BpeModel TrainBpe(const CorpusStats& stats, std::size_t num_merges);

// Text format:
//   #mvrseg-bpe-v1
//   #chars <space separated alphabet>
//   <left> <right>        one merge per line, rank = line order
std::string SerializeBpe(const BpeModel& model);
BpeModel ParseBpe(std::string_view text);

void SaveBpe(const BpeModel& model, const std::string& path);
BpeModel LoadBpe(const std::string& path);

inline constexpr std::string_view kBpeHeader = "#mvrseg-bpe-v1";

}  // namespace mvrseg

#endif  // MVRSEG_BPE_MODEL_H_
