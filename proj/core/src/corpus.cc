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

#include "mvrseg/corpus.h"

#include "mvrseg/text.h"

namespace mvrseg {

std::uint64_t CorpusStats::TotalWords() const {
  std::uint64_t total = 0;
  for (const auto& [word, count] : word_counts) total += count;
  return total;
}

CorpusStats CountCorpus(std::span<const std::string> sentences) {
  CorpusStats stats;
  for (const std::string& sentence : sentences) {
    for (std::string& word : SplitWhitespace(sentence)) {
      for (std::string& c : SplitChars(word)) stats.chars.insert(std::move(c));
      ++stats.word_counts[std::move(word)];
    }
  }
  if (stats.word_counts.empty()) throw Error("empty corpus");
  return stats;
}

CorpusStats StatsFromCounts(
    std::span<const std::pair<std::string, std::uint64_t>> counts) {
  CorpusStats stats;
  for (const auto& [word, count] : counts) {
    if (count == 0) throw Error("word count must be positive: " + word);
    if (word.empty()) throw Error("empty word in counts");
    for (std::string& c : SplitChars(word)) stats.chars.insert(std::move(c));
    stats.word_counts[word] += count;
  }
  if (stats.word_counts.empty()) throw Error("empty corpus");
  return stats;
}

}  // namespace mvrseg
