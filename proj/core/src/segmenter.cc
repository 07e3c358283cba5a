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

#include "mvrseg/segmenter.h"

#include <algorithm>
#include <limits>
#include <set>

#include "mvrseg/lattice.h"
#include "mvrseg/text.h"

namespace mvrseg {

void SegmenterConfig::Validate() const {
  if (!(dropout_p >= 0.0 && dropout_p <= 1.0)) throw Error("dropout_p must be in [0, 1]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must be in [0, 1]");
}

const char* FamilyName(SegmenterFamily family) {
  return family == SegmenterFamily::kBpe ? "bpe" : "ulm";
}

std::vector<std::string> Detokenize(const TokenSeq& tokens, SegmenterFamily family) {
  std::vector<std::string> words;
  words.reserve(tokens.num_words());
  for (const auto& [begin, end] : tokens.word_spans) {
    std::string word;
    for (std::size_t i = begin; i < end; ++i) {
      std::string_view piece = tokens.pieces[i];
      if (piece == kUnkPiece) {
        word += piece;
      } else if (family == SegmenterFamily::kBpe) {
        word += i == begin ? piece : StripPrefix(piece, kContinuationMarker);
      } else {
        word += i == begin ? StripPrefix(piece, kWordMarker) : piece;
      }
    }
    words.push_back(std::move(word));
  }
  return words;
}

std::string JoinPieces(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.pieces.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens.pieces[i];
  }
  return out;
}

// ---- BPE ----

std::vector<std::string> BpeSegmentWord(std::string_view word, const BpeModel& model,
                                        double dropout_p, Rng* rng) {
  struct Symbol {
    std::string raw;
    bool unk;
  };
  std::vector<Symbol> syms;
  for (std::string& c : SplitChars(word)) {
    const bool unk = !model.alphabet().contains(c);
    syms.push_back({std::move(c), unk});
  }
  if (dropout_p > 0.0 && rng == nullptr) throw Error("BPE-dropout needs a random stream");

  while (syms.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    std::size_t best_pos = 0;
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      if (syms[i].unk || syms[i + 1].unk) continue;
      auto rank = model.Rank(syms[i].raw, syms[i + 1].raw);
      if (!rank) continue;
      if (dropout_p > 0.0 && rng->Bernoulli(dropout_p)) continue;
      if (*rank < best_rank) {
        best_rank = *rank;
        best_pos = i;
      }
    }
    if (best_rank == std::numeric_limits<std::size_t>::max()) break;
    syms[best_pos].raw += syms[best_pos + 1].raw;
    syms.erase(syms.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1);
  }

  std::vector<std::string> pieces;
  pieces.reserve(syms.size());
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (syms[i].unk) {
      pieces.emplace_back(kUnkPiece);
    } else if (i == 0) {
      pieces.push_back(std::move(syms[i].raw));
    } else {
      pieces.push_back(std::string(kContinuationMarker) + syms[i].raw);
    }
  }
  return pieces;
}

namespace {

template <typename WordFn>
TokenSeq EncodeWords(std::span<const std::string> words, WordFn&& segment_word) {
  TokenSeq out;
  out.word_spans.reserve(words.size());
  for (const std::string& word : words) {
    const std::size_t begin = out.pieces.size();
    for (std::string& p : segment_word(word)) out.pieces.push_back(std::move(p));
    out.word_spans.emplace_back(begin, out.pieces.size());
  }
  return out;
}

}  // namespace

TokenSeq BpeEncodeWords(std::span<const std::string> words, const BpeModel& model) {
  return EncodeWords(words, [&](const std::string& w) { return BpeSegmentWord(w, model); });
}

TokenSeq BpeEncode(std::string_view sentence, const BpeModel& model) {
  const std::vector<std::string> words = SplitWhitespace(sentence);
  return BpeEncodeWords(words, model);
}

TokenSeq BpeDropoutEncodeWords(std::span<const std::string> words,
                               const BpeModel& model, double dropout_p, Rng& rng) {
  if (!(dropout_p >= 0.0 && dropout_p <= 1.0)) throw Error("dropout_p must be in [0, 1]");
  return EncodeWords(words, [&](const std::string& w) {
    return BpeSegmentWord(w, model, dropout_p, &rng);
  });
}

TokenSeq BpeDropoutEncode(std::string_view sentence, const BpeModel& model,
                          const SegmenterConfig& config, Rng& rng) {
  config.Validate();
  const std::vector<std::string> words = SplitWhitespace(sentence);
  return BpeDropoutEncodeWords(words, model, config.dropout_p, rng);
}

// ---- unigram LM ----

namespace {

std::vector<std::string> PiecesOf(const SegmentationLattice& lattice,
                                  const Segmentation& seg) {
  std::vector<std::string> out;
  out.reserve(seg.edges.size());
  for (std::size_t e : seg.edges) {
    const LatticeEdge& edge = lattice.edges()[e];
    out.push_back(edge.unk ? std::string(kUnkPiece) : edge.piece);
  }
  return out;
}

}  // namespace

TokenSeq UlmEncodeWords(std::span<const std::string> words, const UnigramModel& model) {
  return EncodeWords(words, [&](const std::string& w) {
    const SegmentationLattice lattice = BuildLattice(MarkWord(w), model);
    return PiecesOf(lattice, Viterbi(lattice));
  });
}

TokenSeq UlmEncode(std::string_view sentence, const UnigramModel& model) {
  const std::vector<std::string> words = SplitWhitespace(sentence);
  return UlmEncodeWords(words, model);
}

TokenSeq UlmSampleWords(std::span<const std::string> words, const UnigramModel& model,
                        double alpha, Rng& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must be in [0, 1]");
  return EncodeWords(words, [&](const std::string& w) {
    const SegmentationLattice lattice = BuildLattice(MarkWord(w), model);
    return PiecesOf(lattice, SampleSegmentation(lattice, alpha, rng));
  });
}

TokenSeq UlmSample(std::string_view sentence, const UnigramModel& model,
                   const SegmenterConfig& config, Rng& rng) {
  config.Validate();
  const std::vector<std::string> words = SplitWhitespace(sentence);
  return UlmSampleWords(words, model, config.alpha, rng);
}

// ---- Segmenter implementations ----

namespace {

class BpeSegmenter final : public Segmenter {
 public:
  explicit BpeSegmenter(BpeModel model) : model_(std::move(model)) {}

  SegmenterFamily family() const override { return SegmenterFamily::kBpe; }

  TokenSeq Deterministic(std::span<const std::string> words) const override {
    return BpeEncodeWords(words, model_);
  }

  TokenSeq Sample(std::span<const std::string> words, double strength,
                  Rng& rng) const override {
    return BpeDropoutEncodeWords(words, model_, strength, rng);
  }

  std::vector<std::string> PieceInventory() const override {
    std::set<std::string> out{std::string(kUnkPiece)};
    for (const std::string& v : model_.vocabulary()) {
      out.insert(v);
      out.insert(std::string(kContinuationMarker) + v);
    }
    return {out.begin(), out.end()};
  }

 private:
  BpeModel model_;
};

class UnigramSegmenter final : public Segmenter {
 public:
  explicit UnigramSegmenter(UnigramModel model) : model_(std::move(model)) {}

  SegmenterFamily family() const override { return SegmenterFamily::kUnigram; }

  TokenSeq Deterministic(std::span<const std::string> words) const override {
    return UlmEncodeWords(words, model_);
  }

  TokenSeq Sample(std::span<const std::string> words, double strength,
                  Rng& rng) const override {
    return UlmSampleWords(words, model_, strength, rng);
  }

  std::vector<std::string> PieceInventory() const override {
    std::set<std::string> out{std::string(kUnkPiece)};
    for (const auto& [piece, lp] : model_.pieces()) out.insert(piece);
    return {out.begin(), out.end()};
  }

 private:
  UnigramModel model_;
};

}  // namespace

std::shared_ptr<const Segmenter> MakeBpeSegmenter(BpeModel model) {
  return std::make_shared<BpeSegmenter>(std::move(model));
}

std::shared_ptr<const Segmenter> MakeUnigramSegmenter(UnigramModel model) {
  return std::make_shared<UnigramSegmenter>(std::move(model));
}

std::shared_ptr<const Segmenter> LoadSegmenter(const std::string& path) {
  const std::string text = ReadFile(path);
  const std::string_view first =
      std::string_view(text).substr(0, text.find_first_of("\r\n"));
  if (first == kBpeHeader) return MakeBpeSegmenter(ParseBpe(text));
  if (first == kUnigramHeader) return MakeUnigramSegmenter(ParseUnigram(text));
  throw ParseError("unrecognized model header in " + path, 1);
}

}  // namespace mvrseg
