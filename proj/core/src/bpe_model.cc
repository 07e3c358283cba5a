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

#include "mvrseg/bpe_model.h"

#include <cstdint>
#include <map>
#include <utility>

#include "mvrseg/text.h"

namespace mvrseg {

namespace {

std::string PairKey(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key.push_back(' ');
  key.append(right);
  return key;
}

bool HasWhitespace(std::string_view s) {
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
        c == '\f') {
      return true;
    }
  }
  return false;
}

}  // namespace

BpeModel::BpeModel(std::vector<BpeMerge> merges, std::set<std::string> alphabet)
    : merges_(std::move(merges)), alphabet_(std::move(alphabet)) {
  for (const std::string& c : alphabet_) {
    if (c.empty() || CharLength(c) != 1 || HasWhitespace(c)) {
      throw Error("alphabet entry is not a single character: '" + c + "'");
    }
  }
  vocabulary_ = alphabet_;
  ranks_.reserve(merges_.size());
  for (std::size_t rank = 0; rank < merges_.size(); ++rank) {
    const BpeMerge& m = merges_[rank];
    if (!vocabulary_.contains(m.left) || !vocabulary_.contains(m.right)) {
      throw Error("merge " + std::to_string(rank) + " (" + m.left + " " +
                  m.right + ") uses a piece not yet in the vocabulary");
    }
    if (!ranks_.emplace(PairKey(m.left, m.right), rank).second) {
      throw Error("duplicate merge (" + m.left + " " + m.right + ")");
    }
    vocabulary_.insert(m.Merged());
  }
}

std::optional<std::size_t> BpeModel::Rank(std::string_view left,
                                          std::string_view right) const {
  auto it = ranks_.find(PairKey(left, right));
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

namespace {

using Pair = std::pair<std::string, std::string>;

struct CountOrder {
  bool operator()(const std::pair<std::int64_t, Pair>& a,
                  const std::pair<std::int64_t, Pair>& b) const {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  }
};

class PairTable {
 public:
  void Add(const Pair& pair, std::int64_t delta) {
    std::int64_t& count = counts_[pair];
    if (count > 0) queue_.erase({count, pair});
    count += delta;
    if (count > 0) {
      queue_.insert({count, pair});
    } else {
      counts_.erase(pair);
    }
  }

  bool Empty() const { return queue_.empty(); }
  const std::pair<std::int64_t, Pair>& Best() const { return *queue_.begin(); }

 private:
  std::map<Pair, std::int64_t> counts_;
  std::set<std::pair<std::int64_t, Pair>, CountOrder> queue_;
};

}  // namespace

BpeModel TrainBpe(const CorpusStats& stats, std::size_t num_merges) {
  std::vector<std::vector<std::string>> words;
  std::vector<std::int64_t> freqs;
  words.reserve(stats.word_counts.size());
  for (const auto& [word, count] : stats.word_counts) {
    words.push_back(SplitChars(word));
    freqs.push_back(static_cast<std::int64_t>(count));
  }

  PairTable table;
  std::map<Pair, std::set<std::size_t>> occurs_in;
  auto account = [&](std::size_t w, std::int64_t sign) {
    const auto& syms = words[w];
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      Pair p{syms[i], syms[i + 1]};
      table.Add(p, sign * freqs[w]);
      if (sign > 0) occurs_in[p].insert(w);
    }
  };
  for (std::size_t w = 0; w < words.size(); ++w) account(w, +1);

  std::vector<BpeMerge> merges;
  while (merges.size() < num_merges && !table.Empty()) {
    const auto [count, best] = table.Best();
    if (count < 2) break;
    const std::set<std::size_t> affected = std::move(occurs_in[best]);
    occurs_in.erase(best);
    const std::string merged = best.first + best.second;
    for (std::size_t w : affected) {
      account(w, -1);
      auto& syms = words[w];
      std::vector<std::string> next;
      next.reserve(syms.size());
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i + 1 < syms.size() && syms[i] == best.first &&
            syms[i + 1] == best.second) {
          next.push_back(merged);
          ++i;
        } else {
          next.push_back(std::move(syms[i]));
        }
      }
      syms = std::move(next);
      account(w, +1);
    }
    merges.push_back({best.first, best.second});
  }
  return BpeModel(std::move(merges), stats.chars);
}

std::string SerializeBpe(const BpeModel& model) {
  std::string out(kBpeHeader);
  out += "\n#chars";
  for (const std::string& c : model.alphabet()) {
    out += ' ';
    out += c;
  }
  out += '\n';
  for (const BpeMerge& m : model.merges()) {
    out += m.left;
    out += ' ';
    out += m.right;
    out += '\n';
  }
  return out;
}

BpeModel ParseBpe(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos <= text.size();) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }

  if (lines.empty() || lines[0] != kBpeHeader) {
    throw ParseError("missing header " + std::string(kBpeHeader), 1);
  }
  if (lines.size() < 2 || !(lines[1] == "#chars" || StartsWith(lines[1], "#chars "))) {
    throw ParseError("expected '#chars' alphabet line", 2);
  }
  std::set<std::string> alphabet;
  for (std::string& c : SplitWhitespace(lines[1].substr(6))) {
    if (CharLength(c) != 1) {
      throw ParseError("alphabet entry is not a single character: '" + c + "'", 2);
    }
    if (!alphabet.insert(std::move(c)).second) {
      throw ParseError("duplicate alphabet character", 2);
    }
  }

  std::set<std::string> vocab = alphabet;
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<BpeMerge> merges;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos || sp == 0 || sp + 1 == line.size() ||
        line.find(' ', sp + 1) != std::string_view::npos ||
        HasWhitespace(line.substr(0, sp)) || HasWhitespace(line.substr(sp + 1))) {
      throw ParseError("expected '<left> <right>'", lineno);
    }
    BpeMerge m{std::string(line.substr(0, sp)), std::string(line.substr(sp + 1))};
    if (!vocab.contains(m.left) || !vocab.contains(m.right)) {
      throw ParseError("merge operand not in vocabulary", lineno);
    }
    if (!seen.insert({m.left, m.right}).second) {
      throw ParseError("duplicate merge '" + std::string(line) + "'", lineno);
    }
    vocab.insert(m.Merged());
    merges.push_back(std::move(m));
  }
  return BpeModel(std::move(merges), std::move(alphabet));
}

void SaveBpe(const BpeModel& model, const std::string& path) {
  WriteFile(path, SerializeBpe(model));
}

BpeModel LoadBpe(const std::string& path) { return ParseBpe(ReadFile(path)); }

}  // namespace mvrseg
