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


#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mvrseg/analysis.h"
#include "mvrseg/distribution.h"

#include "mvrseg/text.h"

namespace mvrseg {
namespace {

// Segments each word into as many pieces as its length (one char per piece).
TokenSeq CharSplit(std::span<const std::string> words) {
  TokenSeq t;
  for (const auto& w : words) {
    const std::size_t begin = t.pieces.size();
    for (auto& c : SplitChars(w)) t.pieces.push_back(c);
    t.word_spans.emplace_back(begin, t.pieces.size());
  }
  return t;
}

TEST(GranularityTest, SinglePieceWords) {
  const std::vector<LabeledSentence> corpus = {{"a b c", "en"}, {"d", "en"}};
  const GranularityReport r = Granularity(corpus, CharSplit);
  const GroupGranularity& g = r.groups.at("en");
  EXPECT_EQ(g.Fraction(0), 1.0);
  EXPECT_EQ(g.MeanPiecesPerWord(), 1.0);
}

TEST(GranularityTest, EqualMixOfOneTwoThreePieces) {
  const std::vector<LabeledSentence> corpus = {{"a bb ccc", "x"}};
  const GroupGranularity& g = Granularity(corpus, CharSplit).groups.at("x");
  EXPECT_DOUBLE_EQ(g.MeanPiecesPerWord(), 2.0);
  for (std::size_t b = 0; b < 3; ++b) EXPECT_NEAR(g.Fraction(b), 1.0 / 3.0, 1e-12);
}

TEST(GranularityTest, LongWordsLandInTerminalBucket) {
  const std::vector<LabeledSentence> corpus = {{"abcdefghijkl abcdefghi", "x"}};
  const GroupGranularity& g = Granularity(corpus, CharSplit).groups.at("x");
  EXPECT_EQ(g.counts[8], 1u);
  EXPECT_EQ(g.counts[9], 1u);
  double mass = 0.0;
  for (std::size_t b = 0; b < kGranularityBuckets; ++b) mass += g.Fraction(b);
  EXPECT_NEAR(mass, 1.0, 1e-9);
  EXPECT_TRUE(Granularity(corpus, CharSplit).ToJson()["x"]["histogram"].contains("9+"));
}

TEST(GranularityTest, StrictModeRejectsUnknownGroup) {
  const std::vector<LabeledSentence> corpus = {{"a", "en"}, {"b", "xx"}};
  const std::set<std::string> known = {"en"};
  EXPECT_THROW(Granularity(corpus, CharSplit, &known), Error);
  EXPECT_NO_THROW(Granularity(corpus, CharSplit));
}

PredictionRecord Rec(std::int64_t id, std::string group, std::size_t gold,
                     std::vector<double> probs) {
  return {id, std::move(group), gold, std::move(probs)};
}

TEST(EntropyBucketTest, UniformInTopOneHotInBottom) {
  EXPECT_NEAR(Entropy(std::vector<double>{0.5, 0.5}), std::log(2.0), 1e-12);
  EXPECT_EQ(EntropyBucketIndex(std::log(2.0), 2, 5), 4u);
  EXPECT_EQ(EntropyBucketIndex(0.0, 2, 5), 0u);
}

TEST(EntropyBucketTest, IdenticalRunsHaveZeroDelta) {
  const std::vector<PredictionRecord> run = {Rec(0, "g", 0, {0.9, 0.1}), Rec(1, "g", 1, {0.5, 0.5}),
                                             Rec(2, "g", 1, {1.0, 0.0})};
  const EntropyBucketReport r = EntropyBuckets(run, run);
  ASSERT_EQ(r.buckets.size(), 5u);
  std::size_t total = 0;
  for (const auto& b : r.buckets) {
    EXPECT_EQ(b.delta, 0.0);
    total += b.count;
  }
  EXPECT_EQ(total, 3u);
  EXPECT_NEAR(r.buckets.back().upper, std::log(2.0), 1e-12);
}

TEST(EntropyBucketTest, DeltaIsBMinusA) {
  const std::vector<PredictionRecord> a = {Rec(0, "g", 1, {0.5, 0.5}), Rec(1, "g", 0, {1.0, 0.0})};
  const std::vector<PredictionRecord> b = {Rec(1, "g", 0, {1.0, 0.0}), Rec(0, "g", 1, {0.2, 0.8})};
  const EntropyBucketReport r = EntropyBuckets(a, b);
  EXPECT_EQ(r.buckets[4].count, 1u);
  EXPECT_EQ(r.buckets[4].delta, 1.0);
  EXPECT_EQ(r.buckets[0].delta, 0.0);
}

TEST(EntropyBucketTest, MisalignedIdsAreAnError) {
  const std::vector<PredictionRecord> a = {Rec(0, "g", 0, {0.5, 0.5})};
  const std::vector<PredictionRecord> b = {Rec(1, "g", 0, {0.5, 0.5})};
  EXPECT_THROW(EntropyBuckets(a, b), Error);
  EXPECT_THROW(EntropyBuckets(a, {}), Error);
}

TEST(EnsembleKlTest, HandComputedExample) {
  const std::vector<PredictionRecord> base = {Rec(0, "g", 0, {1.0, 0.0})};
  const std::vector<PredictionRecord> sr = {Rec(0, "g", 0, {0.0, 1.0})};
  const std::vector<PredictionRecord> test = {Rec(0, "g", 0, {0.75, 0.25})};
  const auto kl = EnsembleKl(base, sr, test);
  EXPECT_NEAR(kl.at("g"), 0.5 * std::log(0.5 / 0.75) + 0.5 * std::log(0.5 / 0.25), 1e-12);
  EXPECT_NEAR(kl.at("g"), 0.1438, 1e-4);
}

TEST(EnsembleKlTest, EnsembleItselfIsCloser) {
  const std::vector<PredictionRecord> base = {Rec(0, "a", 0, {0.9, 0.1}), Rec(1, "b", 1, {0.3, 0.7})};
  const std::vector<PredictionRecord> sr = {Rec(0, "a", 0, {0.6, 0.4}), Rec(1, "b", 1, {0.1, 0.9})};
  std::vector<PredictionRecord> ens;
  for (std::size_t i = 0; i < 2; ++i) {
    ens.push_back(base[i]);
    ens.back().probs = EnsembleDistribution(base[i].probs, sr[i].probs);
  }
  const std::vector<PredictionRecord> other = {Rec(0, "a", 0, {0.5, 0.5}), Rec(1, "b", 1, {0.5, 0.5})};
  const auto zero = EnsembleKl(base, sr, ens);
  const auto far = EnsembleKl(base, sr, other);
  for (const char* g : {"a", "b"}) {
    EXPECT_NEAR(zero.at(g), 0.0, 1e-15);
    EXPECT_GT(far.at(g), zero.at(g));
  }
}

TEST(GroupedDeltaTest, HandBuiltTwoGroups) {
  const std::vector<PredictionRecord> a = {Rec(0, "x", 0, {0.9, 0.1}), Rec(1, "x", 0, {0.1, 0.9}),
                                           Rec(2, "y", 1, {0.9, 0.1})};
  const std::vector<PredictionRecord> b = {Rec(0, "x", 0, {0.9, 0.1}), Rec(1, "x", 0, {0.8, 0.2}),
                                           Rec(2, "y", 1, {0.7, 0.3})};
  const auto d = GroupedDelta(a, b);
  EXPECT_DOUBLE_EQ(d.at("x").score_a, 0.5);
  EXPECT_DOUBLE_EQ(d.at("x").delta, 0.5);
  EXPECT_DOUBLE_EQ(d.at("y").delta, 0.0);
  for (const auto& [g, v] : GroupedDelta(a, a)) EXPECT_EQ(v.delta, 0.0);
  const std::map<std::int64_t, std::string> one = {{0, "all"}, {1, "all"}, {2, "all"}};
  EXPECT_NEAR(GroupedDelta(a, b, &one).at("all").delta, 1.0 / 3.0, 1e-12);
}

TEST(GainVsGranularityTest, PairsSharedGroups) {
  GranularityReport gr;
  gr.groups["x"].words = 2;
  gr.groups["x"].pieces = 5;
  gr.groups["z"].words = 1;
  std::map<std::string, GroupDelta> d;
  d["x"].delta = 0.25;
  const auto pairs = GainVsGranularity(gr, d);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0], std::make_pair(2.5, 0.25));
}

TEST(PredictionIoTest, JsonLinesRoundTrip) {
  const std::vector<PredictionRecord> recs = {Rec(3, "en", 1, {0.25, 0.75}),
                                              Rec(4, "de", 0, {1.0, 0.0})};
  const auto back = ParsePredictions(SerializePredictions(recs));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].probs, recs[0].probs);
  EXPECT_EQ(back[1].group, "de");
  try {
    ParsePredictions("{\"id\":1,\"gold\":0,\"probs\":[1.0]}\n{bad json}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ParsePredictions("{\"id\":1,\"gold\":2,\"probs\":[0.5,0.5]}\n"), ParseError);
}

}  // namespace
}  // namespace mvrseg
