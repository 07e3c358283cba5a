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

// EM training and likelihood-based pruning of a unigram piece vocabulary.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "mvrseg/lattice.h"
#include "mvrseg/text.h"
#include "mvrseg/unigram_model.h"

namespace mvrseg {

namespace {

// Smallest expected count kept for a single character, relative to the total.
// Characters whose posterior underflows to zero would otherwise get an
// infinite negative log-probability.
constexpr double kCharCountFloor = 1e-250;

struct MarkedWord {
  std::string text;
  std::vector<std::string> chars;
  double count = 0.0;
};

class VocabState {
 public:
  std::vector<std::string> pieces;
  std::vector<double> probs;

  UnigramModel ToModel() const {
    std::vector<UnigramModel::Piece> out;
    out.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      double lp = pieces.size() == 1 ? 0.0 : std::log(probs[i]);
      if (pieces.size() > 1 && probs[i] > 0.5) {
        // ln p = -ln(1 + rest/p) stays negative when rest/p is below epsilon.
        double rest = 0.0;
        for (std::size_t j = 0; j < probs.size(); ++j) {
          if (j != i) rest += probs[j];
        }
        lp = -std::log1p(rest / probs[i]);
      }
      out.emplace_back(pieces[i], lp);
    }
    return UnigramModel(std::move(out));
  }

  void Normalize() {
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (double& p : probs) p /= total;
  }
};

bool IsSingleChar(const std::string& piece) { return CharLength(piece) == 1; }

struct EStepResult {
  std::vector<double> expected;
  double log_likelihood = 0.0;
};

EStepResult ExpectationStep(const VocabState& state,
                            const std::vector<MarkedWord>& words) {
  const UnigramModel model = state.ToModel();
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(state.pieces.size());
  for (std::size_t i = 0; i < state.pieces.size(); ++i) index.emplace(state.pieces[i], i);

  EStepResult r;
  r.expected.assign(state.pieces.size(), 0.0);
  for (const MarkedWord& w : words) {
    const SegmentationLattice lattice = BuildLattice(w.text, model);
    const EdgeMarginals m = ComputeMarginals(lattice);
    r.log_likelihood += w.count * m.log_z;
    for (std::size_t e = 0; e < lattice.edges().size(); ++e) {
      // Every character of the corpus is a piece, so there are no unk edges.
      r.expected[index.at(lattice.edges()[e].piece)] += w.count * m.posterior[e];
    }
  }
  return r;
}

void MaximizationStep(VocabState& state, const std::vector<double>& expected) {
  const double total = std::accumulate(expected.begin(), expected.end(), 0.0);
  VocabState next;
  for (std::size_t i = 0; i < state.pieces.size(); ++i) {
    double c = expected[i];
    if (IsSingleChar(state.pieces[i])) {
      c = std::max(c, total * kCharCountFloor);
    } else if (!(c / total >= std::numeric_limits<double>::min())) {
      continue;  // (near) zero mass: removing it leaves the distribution unchanged
    }
    next.pieces.push_back(state.pieces[i]);
    next.probs.push_back(c);
  }
  next.Normalize();
  state = std::move(next);
}

void RunEmPhase(VocabState& state, const std::vector<MarkedWord>& words,
                std::size_t iters, std::vector<double>* lls) {
  for (std::size_t it = 0; it < iters; ++it) {
    EStepResult r = ExpectationStep(state, words);
    if (lls) lls->push_back(r.log_likelihood);
    MaximizationStep(state, r.expected);
  }
}

// Best log-probability of segmenting `piece` without using the piece itself.
double AlternativeScore(const std::string& piece, const UnigramModel& model) {
  const SegmentationLattice lattice = BuildLattice(piece, model);
  const std::size_t n = lattice.num_chars();
  std::vector<double> best(n + 1, -std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::size_t t = 1; t <= n; ++t) {
    for (std::size_t ei : lattice.incoming(t)) {
      const LatticeEdge& e = lattice.edges()[ei];
      if (e.start == 0 && e.end == n) continue;
      best[t] = std::max(best[t], best[e.start] + e.log_prob);
    }
  }
  return best[n];
}

// Removes up to `max_remove` multi-character pieces, smallest estimated
// likelihood loss first. Returns the number removed.
std::size_t Prune(VocabState& state, const std::vector<double>& expected,
                  double fraction, std::size_t max_remove) {
  const UnigramModel model = state.ToModel();
  std::vector<std::pair<double, std::size_t>> candidates;
  for (std::size_t i = 0; i < state.pieces.size(); ++i) {
    if (IsSingleChar(state.pieces[i])) continue;
    const double alt = AlternativeScore(state.pieces[i], model);
    const double loss = expected[i] * (std::log(state.probs[i]) - alt);
    candidates.emplace_back(loss, i);
  }
  if (candidates.empty()) return 0;
  std::sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return state.pieces[a.second] < state.pieces[b.second];
  });
  const auto wanted = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(candidates.size())));
  const std::size_t k = std::min({std::max<std::size_t>(wanted, 1), max_remove,
                                  candidates.size()});
  std::vector<bool> drop(state.pieces.size(), false);
  for (std::size_t j = 0; j < k; ++j) drop[candidates[j].second] = true;

  VocabState next;
  for (std::size_t i = 0; i < state.pieces.size(); ++i) {
    if (drop[i]) continue;
    next.pieces.push_back(state.pieces[i]);
    next.probs.push_back(state.probs[i]);
  }
  next.Normalize();
  state = std::move(next);
  return k;
}

std::vector<MarkedWord> MarkCorpus(const CorpusStats& stats) {
  std::vector<MarkedWord> words;
  words.reserve(stats.word_counts.size());
  for (const auto& [word, count] : stats.word_counts) {
    MarkedWord w;
    w.text = MarkWord(word);
    w.chars = SplitChars(w.text);
    w.count = static_cast<double>(count);
    words.push_back(std::move(w));
  }
  return words;
}

}  // namespace

UnigramModel TrainUnigram(const CorpusStats& stats,
                          const UnigramTrainerOptions& options,
                          UnigramTrainingTrace* trace) {
  if (stats.word_counts.empty()) throw Error("empty corpus");
  if (!(options.prune_fraction > 0.0 && options.prune_fraction < 1.0)) {
    throw Error("prune_fraction must be in (0, 1)");
  }
  if (options.target_vocab_size < stats.chars.size()) {
    throw Error("target vocabulary size " + std::to_string(options.target_vocab_size) +
                " is smaller than the character inventory (" +
                std::to_string(stats.chars.size()) + ")");
  }
  if (options.seed_max_len < 1) throw Error("seed_max_len must be >= 1");
  if (options.em_iters < 1) throw Error("em_iters must be >= 1");

  const std::vector<MarkedWord> words = MarkCorpus(stats);

  // Frequency-weighted substring counts of the marked words.
  std::map<std::string, double> seed_counts;
  for (const MarkedWord& w : words) {
    for (std::size_t s = 0; s < w.chars.size(); ++s) {
      std::string sub;
      for (std::size_t e = s; e < w.chars.size() && e - s < options.seed_max_len; ++e) {
        sub += w.chars[e];
        seed_counts[sub] += w.count;
      }
    }
  }
  VocabState state;
  for (const auto& [piece, count] : seed_counts) {
    if (count >= 2.0 || IsSingleChar(piece)) {
      state.pieces.push_back(piece);
      state.probs.push_back(count);
    }
  }
  state.Normalize();

  auto record_phase = [&](std::vector<double> lls) {
    if (trace) {
      trace->em_phases.push_back(std::move(lls));
      trace->vocab_sizes.push_back(state.pieces.size());
    }
  };

  while (true) {
    std::vector<double> lls;
    RunEmPhase(state, words, options.em_iters, &lls);
    EStepResult r = ExpectationStep(state, words);
    lls.push_back(r.log_likelihood);
    record_phase(std::move(lls));
    if (state.pieces.size() <= options.target_vocab_size) break;
    const std::size_t removed = Prune(state, r.expected, options.prune_fraction,
                                      state.pieces.size() - options.target_vocab_size);
    if (removed == 0) break;  // only single characters remain
  }

  std::vector<double> lls;
  RunEmPhase(state, words, options.em_iters, &lls);
  lls.push_back(ExpectationStep(state, words).log_likelihood);
  record_phase(std::move(lls));

  std::vector<std::size_t> order(state.pieces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (state.probs[a] != state.probs[b]) return state.probs[a] > state.probs[b];
    return state.pieces[a] < state.pieces[b];
  });
  VocabState sorted;
  for (std::size_t i : order) {
    sorted.pieces.push_back(state.pieces[i]);
    sorted.probs.push_back(state.probs[i]);
  }
  return sorted.ToModel();
}

double CorpusLogLikelihood(const UnigramModel& model, const CorpusStats& stats) {
  double ll = 0.0;
  for (const auto& [word, count] : stats.word_counts) {
    const SegmentationLattice lattice = BuildLattice(MarkWord(word), model);
    ll += static_cast<double>(count) * ForwardLogSums(lattice, 1.0).back();
  }
  return ll;
}

}  // namespace mvrseg
