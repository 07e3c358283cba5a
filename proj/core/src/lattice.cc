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

#include "mvrseg/lattice.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mvrseg/text.h"

namespace mvrseg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

SegmentationLattice BuildLattice(std::string_view word, const UnigramModel& model) {
  if (word.empty()) throw Error("cannot build a lattice for an empty word");
  const std::vector<std::string> chars = SplitChars(word);
  const std::size_t n = chars.size();

  SegmentationLattice lattice;
  lattice.word_ = std::string(word);
  lattice.num_chars_ = n;
  lattice.in_.resize(n + 1);
  lattice.out_.resize(n + 1);

  const std::size_t max_len = std::max<std::size_t>(model.max_piece_chars(), 1);
  std::string buffer;
  for (std::size_t start = 0; start < n; ++start) {
    buffer.clear();
    const std::size_t limit = std::min(n, start + max_len);
    for (std::size_t end = start + 1; end <= limit; ++end) {
      buffer += chars[end - 1];
      if (auto lp = model.LogProb(buffer)) {
        lattice.edges_.push_back({start, end, buffer, *lp, false});
      } else if (end == start + 1) {
        lattice.edges_.push_back(
            {start, end, buffer, model.unk_log_prob(), true});
      }
    }
  }
  for (std::size_t i = 0; i < lattice.edges_.size(); ++i) {
    lattice.out_[lattice.edges_[i].start].push_back(i);
    lattice.in_[lattice.edges_[i].end].push_back(i);
  }
  return lattice;
}

bool ScoresTie(double a, double b) {
  return a == b || std::abs(a - b) <= kScoreTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

bool RanksBefore(const SegmentationLattice& lattice, const Segmentation& a,
                 const Segmentation& b) {
  if (!ScoresTie(a.log_prob, b.log_prob)) return a.log_prob > b.log_prob;
  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
  const auto& edges = lattice.edges();
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const LatticeEdge& ea = edges[a.edges[i]];
    const LatticeEdge& eb = edges[b.edges[i]];
    const std::size_t la = ea.end - ea.start;
    const std::size_t lb = eb.end - eb.start;
    if (la != lb) return la > lb;
  }
  return false;
}

namespace {

Segmentation FromEdges(const SegmentationLattice& lattice,
                       std::vector<std::size_t> edges) {
  Segmentation seg;
  seg.pieces.reserve(edges.size());
  for (std::size_t e : edges) {
    seg.log_prob += lattice.edges()[e].log_prob;
    seg.pieces.push_back(lattice.edges()[e].piece);
  }
  seg.edges = std::move(edges);
  return seg;
}

}  // namespace

Segmentation Viterbi(const SegmentationLattice& lattice) {
  struct Cell {
    double score = kNegInf;
    std::size_t count = 0;
    std::size_t back = 0;  // edge index
    bool reached = false;
  };
  const std::size_t n = lattice.num_chars();
  const auto& edges = lattice.edges();
  std::vector<Cell> cells(n + 1);
  cells[0] = {0.0, 0, 0, true};

  // Piece lengths, left to right, of the best path to `node` extended by `edge`.
  auto lengths = [&](std::size_t node, std::size_t last_len) {
    std::vector<std::size_t> out{last_len};
    while (node > 0) {
      const LatticeEdge& e = edges[cells[node].back];
      out.push_back(e.end - e.start);
      node = e.start;
    }
    std::reverse(out.begin(), out.end());
    return out;
  };

  for (std::size_t t = 1; t <= n; ++t) {
    Cell& cell = cells[t];
    for (std::size_t ei : lattice.incoming(t)) {
      const LatticeEdge& e = edges[ei];
      const Cell& from = cells[e.start];
      if (!from.reached) continue;
      const double score = from.score + e.log_prob;
      const std::size_t count = from.count + 1;
      bool better = false;
      if (!cell.reached) {
        better = true;
      } else if (!ScoresTie(score, cell.score)) {
        better = score > cell.score;
      } else {
        if (count != cell.count) {
          better = count < cell.count;
        } else {
          const LatticeEdge& cur = edges[cell.back];
          better = lengths(e.start, e.end - e.start) >
                   lengths(cur.start, cur.end - cur.start);
        }
      }
      if (better) cell = {score, count, ei, true};
    }
  }

  std::vector<std::size_t> path;
  for (std::size_t node = n; node > 0;) {
    const std::size_t ei = cells[node].back;
    path.push_back(ei);
    node = edges[ei].start;
  }
  std::reverse(path.begin(), path.end());
  return FromEdges(lattice, std::move(path));
}

std::size_t CountPaths(const SegmentationLattice& lattice) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> count(lattice.num_nodes(), 0);
  count[0] = 1;
  for (std::size_t t = 1; t < lattice.num_nodes(); ++t) {
    for (std::size_t ei : lattice.incoming(t)) {
      const std::size_t add = count[lattice.edges()[ei].start];
      count[t] = add > kMax - count[t] ? kMax : count[t] + add;
    }
  }
  return count.back();
}

std::vector<Segmentation> EnumerateAll(const SegmentationLattice& lattice,
                                       std::size_t cap) {
  if (CountPaths(lattice) > cap) throw Error("lattice too large");
  std::vector<Segmentation> out;
  std::vector<std::size_t> stack;
  const std::size_t sink = lattice.num_chars();

  auto dfs = [&](auto&& self, std::size_t node) -> void {
    if (node == sink) {
      out.push_back(FromEdges(lattice, stack));
      return;
    }
    for (std::size_t ei : lattice.outgoing(node)) {
      stack.push_back(ei);
      self(self, lattice.edges()[ei].end);
      stack.pop_back();
    }
  };
  dfs(dfs, 0);

  std::sort(out.begin(), out.end(),
            [&](const Segmentation& a, const Segmentation& b) {
              return RanksBefore(lattice, a, b);
            });
  return out;
}

std::vector<double> ForwardLogSums(const SegmentationLattice& lattice, double alpha) {
  if (!(alpha >= 0.0)) throw Error("alpha must be >= 0");
  std::vector<double> fwd(lattice.num_nodes(), kNegInf);
  fwd[0] = 0.0;
  for (std::size_t t = 1; t < lattice.num_nodes(); ++t) {
    double acc = kNegInf;
    for (std::size_t ei : lattice.incoming(t)) {
      const LatticeEdge& e = lattice.edges()[ei];
      acc = LogAdd(acc, fwd[e.start] + alpha * e.log_prob);
    }
    fwd[t] = acc;
  }
  return fwd;
}

std::vector<double> BackwardLogSums(const SegmentationLattice& lattice, double alpha) {
  if (!(alpha >= 0.0)) throw Error("alpha must be >= 0");
  const std::size_t n = lattice.num_chars();
  std::vector<double> bwd(n + 1, kNegInf);
  bwd[n] = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    double acc = kNegInf;
    for (std::size_t ei : lattice.outgoing(t)) {
      const LatticeEdge& e = lattice.edges()[ei];
      acc = LogAdd(acc, bwd[e.end] + alpha * e.log_prob);
    }
    bwd[t] = acc;
  }
  return bwd;
}

EdgeMarginals ComputeMarginals(const SegmentationLattice& lattice) {
  const std::vector<double> fwd = ForwardLogSums(lattice, 1.0);
  const std::vector<double> bwd = BackwardLogSums(lattice, 1.0);
  EdgeMarginals m;
  m.log_z = fwd.back();
  m.posterior.reserve(lattice.edges().size());
  for (const LatticeEdge& e : lattice.edges()) {
    m.posterior.push_back(std::exp(fwd[e.start] + e.log_prob + bwd[e.end] - m.log_z));
  }
  return m;
}

Segmentation SampleSegmentation(const SegmentationLattice& lattice, double alpha,
                                Rng& rng) {
  return SampleSegmentation(lattice, alpha, ForwardLogSums(lattice, alpha), rng);
}

Segmentation SampleSegmentation(const SegmentationLattice& lattice, double alpha,
                                const std::vector<double>& forward, Rng& rng) {
  const auto& edges = lattice.edges();
  std::vector<std::size_t> path;
  for (std::size_t node = lattice.num_chars(); node > 0;) {
    const auto& in = lattice.incoming(node);
    double u = rng.Uniform();
    std::size_t chosen = in.back();
    for (std::size_t ei : in) {
      const LatticeEdge& e = edges[ei];
      const double w = std::exp(forward[e.start] + alpha * e.log_prob - forward[node]);
      if (u < w) {
        chosen = ei;
        break;
      }
      u -= w;
    }
    path.push_back(chosen);
    node = edges[chosen].start;
  }
  std::reverse(path.begin(), path.end());
  return FromEdges(lattice, std::move(path));
}

}  // namespace mvrseg
