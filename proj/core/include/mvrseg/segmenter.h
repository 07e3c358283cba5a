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

#ifndef MVRSEG_SEGMENTER_H_
#define MVRSEG_SEGMENTER_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvrseg/bpe_model.h"
#include "mvrseg/random.h"
#include "mvrseg/unigram_model.h"

namespace mvrseg {

struct SegmenterConfig {
  double dropout_p = 0.1;  // BPE-dropout merge drop probability
  double alpha = 0.6;      // ULM sampling temperature
  std::uint64_t rng_seed = 0;

  // Throws Error unless both parameters are in [0, 1].
  void Validate() const;
};

// Segmented sentence. word_spans[i] is the half-open piece range of word i;
// the spans partition `pieces` in order.
struct TokenSeq {
  std::vector<std::string> pieces;
  std::vector<std::pair<std::size_t, std::size_t>> word_spans;

  std::size_t num_words() const { return word_spans.size(); }
  std::size_t PiecesInWord(std::size_t w) const {
    return word_spans[w].second - word_spans[w].first;
  }
  bool operator==(const TokenSeq&) const = default;
};

enum class SegmenterFamily { kBpe, kUnigram };

const char* FamilyName(SegmenterFamily family);

// Words recovered from a TokenSeq: BPE strips "##" from non-initial pieces,
// the unigram family strips the leading "▁". "<unk>" pieces are kept verbatim.
std::vector<std::string> Detokenize(const TokenSeq& tokens, SegmenterFamily family);

// Space-separated pieces, the encoded-corpus line format.
std::string JoinPieces(const TokenSeq& tokens);

// ---- BPE ----

// Greedy merge segmentation of one word. Non-initial pieces carry "##";
// characters outside the alphabet become "<unk>" and never merge. With
// `dropout_p` > 0, every candidate merge occurrence is dropped independently
// at each iteration and the loop ends when all candidates were dropped.
std::vector<std::string> BpeSegmentWord(std::string_view word, const BpeModel& model,
                                        double dropout_p = 0.0, Rng* rng = nullptr);

TokenSeq BpeEncode(std::string_view sentence, const BpeModel& model);
TokenSeq BpeEncodeWords(std::span<const std::string> words, const BpeModel& model);
TokenSeq BpeDropoutEncode(std::string_view sentence, const BpeModel& model,
                          const SegmenterConfig& config, Rng& rng);
TokenSeq BpeDropoutEncodeWords(std::span<const std::string> words,
                               const BpeModel& model, double dropout_p, Rng& rng);

// ---- unigram LM ----

// Pieces of each "▁"-marked word; unknown characters become "<unk>".
TokenSeq UlmEncode(std::string_view sentence, const UnigramModel& model);
TokenSeq UlmEncodeWords(std::span<const std::string> words, const UnigramModel& model);
TokenSeq UlmSample(std::string_view sentence, const UnigramModel& model,
                   const SegmenterConfig& config, Rng& rng);
TokenSeq UlmSampleWords(std::span<const std::string> words, const UnigramModel& model,
                        double alpha, Rng& rng);

// ---- family-agnostic interface used by training, analysis and the CLI ----

class Segmenter {
 public:
  virtual ~Segmenter() = default;

  virtual SegmenterFamily family() const = 0;

  // Deterministic view (greedy BPE or Viterbi).
  virtual TokenSeq Deterministic(std::span<const std::string> words) const = 0;

  // Probabilistic view. `strength` is the dropout probability for BPE and
  // the temperature alpha for the unigram family.
  virtual TokenSeq Sample(std::span<const std::string> words, double strength,
                          Rng& rng) const = 0;

  // Every piece either view can emit, including "<unk>". Sorted, unique.
  virtual std::vector<std::string> PieceInventory() const = 0;
};

std::shared_ptr<const Segmenter> MakeBpeSegmenter(BpeModel model);
std::shared_ptr<const Segmenter> MakeUnigramSegmenter(UnigramModel model);

// Chooses the family from the file header.
std::shared_ptr<const Segmenter> LoadSegmenter(const std::string& path);

}  // namespace mvrseg

#endif  // MVRSEG_SEGMENTER_H_
