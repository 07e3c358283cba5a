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

#include "mvrseg/analysis.h"

#include <algorithm>
#include <cmath>

#include "mvrseg/distribution.h"
#include "mvrseg/text.h"

namespace mvrseg {

double GroupGranularity::Fraction(std::size_t bucket) const {
  return words == 0 ? 0.0
                    : static_cast<double>(counts[bucket]) / static_cast<double>(words);
}

double GroupGranularity::MeanPiecesPerWord() const {
  return words == 0 ? 0.0 : static_cast<double>(pieces) / static_cast<double>(words);
}

nlohmann::json GranularityReport::ToJson() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, g] : groups) {
    nlohmann::json hist = nlohmann::json::object();
    for (std::size_t b = 0; b < kGranularityBuckets; ++b) {
      const std::string key = b + 1 < kGranularityBuckets ? std::to_string(b + 1) : "9+";
      hist[key] = g.Fraction(b);
    }
    out[name] = {{"words", g.words},
                 {"pieces", g.pieces},
                 {"mean_pieces_per_word", g.MeanPiecesPerWord()},
                 {"histogram", hist}};
  }
  return out;
}

GranularityReport Granularity(std::span<const LabeledSentence> corpus,
                              const SegmentFn& segment,
                              const std::set<std::string>* known_groups) {
  GranularityReport report;
  for (const LabeledSentence& s : corpus) {
    if (known_groups && !known_groups->contains(s.group)) {
      throw Error("unknown group '" + s.group + "'");
    }
    const std::vector<std::string> words = SplitWhitespace(s.text);
    GroupGranularity& g = report.groups[s.group];
    if (words.empty()) continue;
    const TokenSeq tokens = segment(words);
    for (std::size_t w = 0; w < tokens.num_words(); ++w) {
      const std::size_t k = tokens.PiecesInWord(w);
      ++g.counts[std::min(k, kGranularityBuckets) - 1];
      ++g.words;
      g.pieces += k;
    }
  }
  return report;
}

nlohmann::json PredictionRecord::ToJson() const {
  return {{"id", id}, {"group", group}, {"gold", gold}, {"probs", probs}};
}

PredictionRecord PredictionRecord::FromJson(const nlohmann::json& j) {
  PredictionRecord r;
  r.id = j.at("id").get<std::int64_t>();
  r.group = j.contains("group") ? j.at("group").get<std::string>() : std::string("all");
  r.gold = j.at("gold").get<std::size_t>();
  r.probs = j.at("probs").get<std::vector<double>>();
  return r;
}

std::vector<PredictionRecord> ParsePredictions(std::string_view jsonl) {
  std::vector<PredictionRecord> out;
  std::size_t pos = 0;
  std::size_t lineno = 0;
  while (pos < jsonl.size()) {
    std::size_t nl = jsonl.find('\n', pos);
    std::string_view line =
        jsonl.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? jsonl.size() : nl + 1;
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      PredictionRecord r = PredictionRecord::FromJson(nlohmann::json::parse(line));
      CheckDistribution(r.probs, 1e-6);
      if (r.gold >= r.probs.size()) throw Error("gold label out of range");
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), lineno);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return out;
}

std::vector<PredictionRecord> LoadPredictions(const std::string& path) {
  return ParsePredictions(ReadFile(path));
}

std::string SerializePredictions(std::span<const PredictionRecord> records) {
  std::string out;
  for (const PredictionRecord& r : records) {
    out += r.ToJson().dump();
    out += '\n';
  }
  return out;
}

namespace {

std::size_t Argmax(const std::vector<double>& p) {
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

// Sorts copies of both runs by id and checks they describe the same examples.
std::vector<std::pair<const PredictionRecord*, const PredictionRecord*>> Align(
    std::span<const PredictionRecord> a, std::span<const PredictionRecord> b) {
  if (a.size() != b.size()) throw Error("misaligned ids: runs have different sizes");
  std::vector<const PredictionRecord*> pa, pb;
  for (const auto& r : a) pa.push_back(&r);
  for (const auto& r : b) pb.push_back(&r);
  auto by_id = [](const PredictionRecord* x, const PredictionRecord* y) { return x->id < y->id; };
  std::sort(pa.begin(), pa.end(), by_id);
  std::sort(pb.begin(), pb.end(), by_id);
  std::vector<std::pair<const PredictionRecord*, const PredictionRecord*>> out;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i]->id != pb[i]->id || (i > 0 && pa[i]->id == pa[i - 1]->id)) {
      throw Error("misaligned ids");
    }
    if (pa[i]->gold != pb[i]->gold || pa[i]->probs.size() != pb[i]->probs.size()) {
      throw Error("misaligned ids: example " + std::to_string(pa[i]->id) +
                  " differs between runs");
    }
    out.emplace_back(pa[i], pb[i]);
  }
  return out;
}

}  // namespace

std::size_t EntropyBucketIndex(double entropy, std::size_t num_classes,
                               std::size_t num_buckets) {
  if (num_classes < 2 || num_buckets < 1) throw Error("invalid entropy bucketing");
  const double width = std::log(static_cast<double>(num_classes)) /
                       static_cast<double>(num_buckets);
  if (!(entropy > 0.0)) return 0;
  const auto b = static_cast<std::size_t>(std::floor(entropy / width));
  return std::min(b, num_buckets - 1);
}

nlohmann::json EntropyBucketReport::ToJson() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const EntropyBucket& b : buckets) {
    arr.push_back({{"lower", b.lower},
                   {"upper", b.upper},
                   {"count", b.count},
                   {"acc_a", b.metric_a},
                   {"acc_b", b.metric_b},
                   {"delta", b.delta}});
  }
  return {{"num_classes", num_classes}, {"buckets", arr}};
}

EntropyBucketReport EntropyBuckets(std::span<const PredictionRecord> run_a,
                                   std::span<const PredictionRecord> run_b,
                                   std::size_t num_buckets) {
  if (num_buckets < 1) throw Error("need at least one bucket");
  const auto pairs = Align(run_a, run_b);
  if (pairs.empty()) throw Error("no predictions");
  EntropyBucketReport report;
  report.num_classes = pairs.front().first->probs.size();
  for (const auto& [a, b] : pairs) {
    if (a->probs.size() != report.num_classes) throw Error("inconsistent class count");
  }
  const double width = std::log(static_cast<double>(report.num_classes)) /
                       static_cast<double>(num_buckets);
  report.buckets.resize(num_buckets);
  std::vector<std::size_t> correct_a(num_buckets, 0), correct_b(num_buckets, 0);
  for (std::size_t k = 0; k < num_buckets; ++k) {
    report.buckets[k].lower = width * static_cast<double>(k);
    report.buckets[k].upper = width * static_cast<double>(k + 1);
  }
  for (const auto& [a, b] : pairs) {
    const std::size_t k = EntropyBucketIndex(Entropy(a->probs), report.num_classes, num_buckets);
    ++report.buckets[k].count;
    correct_a[k] += Argmax(a->probs) == a->gold;
    correct_b[k] += Argmax(b->probs) == b->gold;
  }
  for (std::size_t k = 0; k < num_buckets; ++k) {
    EntropyBucket& bucket = report.buckets[k];
    if (bucket.count == 0) continue;
    const double n = static_cast<double>(bucket.count);
    bucket.metric_a = static_cast<double>(correct_a[k]) / n;
    bucket.metric_b = static_cast<double>(correct_b[k]) / n;
    bucket.delta = bucket.metric_b - bucket.metric_a;
  }
  return report;
}

std::vector<double> EnsembleDistribution(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("ensemble of distributions with different sizes");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = 0.5 * (a[i] + b[i]);
  return out;
}

std::map<std::string, double> EnsembleKl(std::span<const PredictionRecord> base,
                                         std::span<const PredictionRecord> sr,
                                         std::span<const PredictionRecord> test) {
  const auto base_sr = Align(base, sr);
  const auto base_test = Align(base, test);
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (std::size_t i = 0; i < base_sr.size(); ++i) {
    const PredictionRecord& b = *base_sr[i].first;
    const std::vector<double> ens = EnsembleDistribution(b.probs, base_sr[i].second->probs);
    auto& [sum, count] = acc[b.group];
    sum += KlDivergence(ens, base_test[i].second->probs);
    ++count;
  }
  std::map<std::string, double> out;
  for (const auto& [group, sc] : acc) out[group] = sc.first / static_cast<double>(sc.second);
  return out;
}

std::map<std::string, GroupDelta> GroupedDelta(
    std::span<const PredictionRecord> run_a, std::span<const PredictionRecord> run_b,
    const std::map<std::int64_t, std::string>* group_of_id) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> correct;
  std::map<std::string, GroupDelta> out;
  for (const auto& [a, b] : Align(run_a, run_b)) {
    std::string group = a->group;
    if (group_of_id) {
      auto it = group_of_id->find(a->id);
      if (it == group_of_id->end()) throw Error("no group for id " + std::to_string(a->id));
      group = it->second;
    }
    ++out[group].count;
    correct[group].first += Argmax(a->probs) == a->gold;
    correct[group].second += Argmax(b->probs) == b->gold;
  }
  for (auto& [group, d] : out) {
    const double n = static_cast<double>(d.count);
    d.score_a = static_cast<double>(correct[group].first) / n;
    d.score_b = static_cast<double>(correct[group].second) / n;
    d.delta = d.score_b - d.score_a;
  }
  return out;
}

std::vector<std::pair<double, double>> GainVsGranularity(
    const GranularityReport& granularity, const std::map<std::string, GroupDelta>& deltas) {
  std::vector<std::pair<double, double>> out;
  for (const auto& [group, g] : granularity.groups) {
    auto it = deltas.find(group);
    if (it != deltas.end()) out.emplace_back(g.MeanPiecesPerWord(), it->second.delta);
  }
  return out;
}

nlohmann::json GroupDeltasToJson(const std::map<std::string, GroupDelta>& deltas) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [group, d] : deltas) {
    out[group] = {{"count", d.count},
                  {"acc_a", d.score_a},
                  {"acc_b", d.score_b},
                  {"delta", d.delta}};
  }
  return out;
}

}  // namespace mvrseg
