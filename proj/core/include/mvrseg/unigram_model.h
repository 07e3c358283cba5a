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

#ifndef MVRSEG_UNIGRAM_MODEL_H_
#define MVRSEG_UNIGRAM_MODEL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mvrseg/corpus.h"

namespace mvrseg {

// Piece -> natural-log probability. Probabilities sum to one (within 1e-6)
// and every log-probability is finite and negative, except for a
// single-piece model whose only piece has log-probability 0.
class UnigramModel {
 public:
  using Piece = std::pair<std::string, double>;

  UnigramModel() = default;
  // Throws Error when an invariant does not hold. Piece order is kept and is
  // the order used by serialization.
  explicit UnigramModel(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  std::optional<double> LogProb(const std::string& piece) const;

  // Score of an edge covering one character that is not a piece:
  // (minimum piece log-probability) - 10.
  double unk_log_prob() const { return unk_log_prob_; }

  // Longest piece, in characters.
  std::size_t max_piece_chars() const { return max_piece_chars_; }

  bool operator==(const UnigramModel& other) const {
    return pieces_ == other.pieces_;
  }

 private:
  std::vector<Piece> pieces_;
  std::unordered_map<std::string, double> index_;
  double unk_log_prob_ = 0.0;
  std::size_t max_piece_chars_ = 0;
};

struct UnigramTrainerOptions {
  std::size_t target_vocab_size = 8000;
  std::size_t seed_max_len = 8;
  double prune_fraction = 0.25;
  std::size_t em_iters = 2;
};

// Corpus log-likelihood before and after every EM iteration, one entry per
// EM phase (the phases are separated by pruning rounds; the last phase is
// the final EM pass).
struct UnigramTrainingTrace {
  std::vector<std::vector<double>> em_phases;
  std::vector<std::size_t> vocab_sizes;
};

// Trains a unigram model over "▁"-marked words. The seed vocabulary holds
// every substring of up to `seed_max_len` characters occurring at least twice
// (frequency-weighted) plus all single characters. EM and pruning alternate
// until at most `target_vocab_size` pieces remain or only single characters
// are left; a final EM phase follows. Single characters are never pruned.
//
// Throws Error if target_vocab_size is smaller than the character inventory
// or prune_fraction is outside (0, 1).
UnigramModel TrainUnigram(const CorpusStats& stats,
                          const UnigramTrainerOptions& options,
                          UnigramTrainingTrace* trace = nullptr);

// Sum over words of count * log P(word), with P(word) the total probability
// of all its segmentations. Words are marked before scoring.
double CorpusLogLikelihood(const UnigramModel& model, const CorpusStats& stats);

// TSV format:
//   #mvrseg-ulm-v1
//   <piece>\t<log_prob>
std::string SerializeUnigram(const UnigramModel& model);
UnigramModel ParseUnigram(std::string_view text);

void SaveUnigram(const UnigramModel& model, const std::string& path);
UnigramModel LoadUnigram(const std::string& path);

inline constexpr std::string_view kUnigramHeader = "#mvrseg-ulm-v1";

// "▁" + word.
std::string MarkWord(std::string_view word);

}  // namespace mvrseg

#endif  // MVRSEG_UNIGRAM_MODEL_H_
