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

#include "mvrseg/unigram_model.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "mvrseg/text.h"

namespace mvrseg {

UnigramModel::UnigramModel(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error("unigram model has no pieces");
  index_.reserve(pieces_.size());
  double min_lp = 0.0;
  double mass = 0.0;
  for (const auto& [piece, lp] : pieces_) {
    if (piece.empty()) throw Error("empty piece");
    for (char c : piece) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        throw Error("piece contains whitespace: '" + piece + "'");
      }
    }
    if (!std::isfinite(lp)) throw Error("non-finite log-probability for '" + piece + "'");
    if (lp > 0.0 || (lp == 0.0 && pieces_.size() > 1)) {
      throw Error("log-probability must be negative for '" + piece + "'");
    }
    if (!index_.emplace(piece, lp).second) throw Error("duplicate piece '" + piece + "'");
    min_lp = std::min(min_lp, lp);
    mass += std::exp(lp);
    max_piece_chars_ = std::max(max_piece_chars_, CharLength(piece));
  }
  if (std::abs(mass - 1.0) > 1e-6) {
    throw Error("piece probabilities sum to " + FormatDouble(mass) + ", not 1");
  }
  unk_log_prob_ = min_lp - 10.0;
}

std::optional<double> UnigramModel::LogProb(const std::string& piece) const {
  auto it = index_.find(piece);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string MarkWord(std::string_view word) {
  std::string out(kWordMarker);
  out.append(word);
  return out;
}

std::string SerializeUnigram(const UnigramModel& model) {
  std::string out(kUnigramHeader);
  out += '\n';
  for (const auto& [piece, lp] : model.pieces()) {
    out += piece;
    out += '\t';
    out += FormatDouble(lp);
    out += '\n';
  }
  return out;
}

UnigramModel ParseUnigram(std::string_view text) {
  std::vector<UnigramModel::Piece> pieces;
  std::set<std::string> seen;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  bool header = false;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header) {
      if (line != kUnigramHeader) {
        throw ParseError("missing header " + std::string(kUnigramHeader), lineno);
      }
      header = true;
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError("expected '<piece>\\t<log_prob>'", lineno);
    }
    std::string piece(line.substr(0, tab));
    double lp = ParseDouble(line.substr(tab + 1), lineno);
    if (!std::isfinite(lp) || lp > 0.0) {
      throw ParseError("log-probability must be finite and non-positive", lineno);
    }
    if (!seen.insert(piece).second) {
      throw ParseError("duplicate piece '" + piece + "'", lineno);
    }
    pieces.emplace_back(std::move(piece), lp);
  }
  if (!header) throw ParseError("missing header " + std::string(kUnigramHeader), 1);
  try {
    return UnigramModel(std::move(pieces));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

void SaveUnigram(const UnigramModel& model, const std::string& path) {
  WriteFile(path, SerializeUnigram(model));
}

UnigramModel LoadUnigram(const std::string& path) {
  return ParseUnigram(ReadFile(path));
}

}  // namespace mvrseg
