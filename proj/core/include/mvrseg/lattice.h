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

#ifndef MVRSEG_LATTICE_H_
#define MVRSEG_LATTICE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mvrseg/random.h"
#include "mvrseg/unigram_model.h"

namespace mvrseg {

struct LatticeEdge {
  std::size_t start = 0;  // character boundary
  std::size_t end = 0;
  std::string piece;      // spanned substring
  double log_prob = 0.0;
  bool unk = false;       // single character absent from the model
};

// DAG over the character boundaries 0..n of one word. Source-to-sink paths
// are exactly the segmentations of the word under the model.
class SegmentationLattice {
 public:
  const std::string& word() const { return word_; }
  std::size_t num_chars() const { return num_chars_; }
  std::size_t num_nodes() const { return num_chars_ + 1; }
  const std::vector<LatticeEdge>& edges() const { return edges_; }
  // Edge indices ending at / starting from a node, in ascending start / end
  // order respectively.
  const std::vector<std::size_t>& incoming(std::size_t node) const { return in_[node]; }
  const std::vector<std::size_t>& outgoing(std::size_t node) const { return out_[node]; }

 private:
  friend SegmentationLattice BuildLattice(std::string_view word,
                                          const UnigramModel& model);
  std::string word_;
  std::size_t num_chars_ = 0;
  std::vector<LatticeEdge> edges_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

// One edge per (substring that is a model piece), plus an unk edge for each
// character that is not a piece. Throws Error on an empty word.
SegmentationLattice BuildLattice(std::string_view word, const UnigramModel& model);

struct Segmentation {
  std::vector<std::size_t> edges;  // indices into the lattice, left to right
  std::vector<std::string> pieces;
  double log_prob = 0.0;

  bool operator==(const Segmentation&) const = default;
};

// Relative tolerance under which two path scores count as equal, so that the
// same pieces summed in a different order tie.
inline constexpr double kScoreTieTolerance = 1e-12;
bool ScoresTie(double a, double b);

// Strict total order used for ties: higher log_prob, then fewer pieces, then
// the longer piece at the first position where the piece lengths differ.
// Returns true if `a` ranks before `b`.
bool RanksBefore(const SegmentationLattice& lattice, const Segmentation& a,
                 const Segmentation& b);

// Highest-ranked segmentation under RanksBefore.
Segmentation Viterbi(const SegmentationLattice& lattice);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// Number of source-to-sink paths, saturating at SIZE_MAX.
std::size_t CountPaths(const SegmentationLattice& lattice);

// Every segmentation, sorted by RanksBefore. Throws Error("lattice too
// large") when there are more than `cap` paths.
std::vector<Segmentation> EnumerateAll(const SegmentationLattice& lattice,
                                       std::size_t cap = kDefaultEnumerationCap);

// scores[t] = log sum over paths 0 -> t of exp(alpha * path_log_prob).
// scores.back() is log Z(alpha). Throws Error when alpha < 0.
std::vector<double> ForwardLogSums(const SegmentationLattice& lattice, double alpha);

// scores[t] = log sum over paths t -> n of exp(alpha * path_log_prob).
std::vector<double> BackwardLogSums(const SegmentationLattice& lattice, double alpha);

// Posterior probability of each edge at alpha = 1, and log Z.
struct EdgeMarginals {
  std::vector<double> posterior;
  double log_z = 0.0;
};
EdgeMarginals ComputeMarginals(const SegmentationLattice& lattice);

// Draws a path with probability P(x)^alpha / sum_x' P(x')^alpha by forward
// filtering and backward sampling.
Segmentation SampleSegmentation(const SegmentationLattice& lattice, double alpha,
                                Rng& rng);

// Same draw, reusing forward scores computed for this lattice and alpha.
Segmentation SampleSegmentation(const SegmentationLattice& lattice, double alpha,
                                const std::vector<double>& forward, Rng& rng);

}  // namespace mvrseg

#endif  // MVRSEG_LATTICE_H_
