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

#ifndef MVRSEG_CORPUS_H_
#define MVRSEG_CORPUS_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>

namespace mvrseg {

// Word frequencies of a whitespace pre-tokenized corpus.
struct CorpusStats {
  std::map<std::string, std::uint64_t> word_counts;
  // Union of the characters of all words.
  std::set<std::string> chars;

  std::uint64_t TotalWords() const;
  bool operator==(const CorpusStats&) const = default;
};

// Throws Error("empty corpus") when no sentence contains a word.
CorpusStats CountCorpus(std::span<const std::string> sentences);

// Builds stats directly from (word, count) pairs. Counts of zero are
// rejected, repeated words accumulate.
CorpusStats StatsFromCounts(
    std::span<const std::pair<std::string, std::uint64_t>> counts);

}  // namespace mvrseg

#endif  // MVRSEG_CORPUS_H_
