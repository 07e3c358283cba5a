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


#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mvrseg/bpe_model.h"
#include "mvrseg/random.h"
#include "mvrseg/segmenter.h"
#include "mvrseg/text.h"

namespace mvrseg::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("mvrseg_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    previous_ = fs::current_path();
    fs::current_path(dir_);
  }
  void TearDown() override {
    fs::current_path(previous_);
    fs::remove_all(dir_);
  }

  static Result Run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = RunCli(args, out, err);
    return {code, out.str(), err.str()};
  }

  static void Write(const std::string& path, const std::string& text) { WriteFile(path, text); }

  // Two classes, each decided by one cue word among shared filler.
  static void WriteSeparableData(std::size_t n, std::uint64_t seed) {
    const std::vector<std::string> pos = {"good", "great", "nice"};
    const std::vector<std::string> neg = {"bad", "awful", "poor"};
    const std::vector<std::string> fill = {"the", "movie", "was", "plot", "very"};
    Rng rng(seed);
    std::string corpus, train, dev;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t y = rng.UniformInt(2);
      std::string s;
      for (int k = 0; k < 3; ++k) s += fill[rng.UniformInt(fill.size())] + " ";
      s += (y ? pos : neg)[rng.UniformInt(3)];
      corpus += s + "\n";
      (i % 5 == 4 ? dev : train) += std::to_string(y) + "\t" + s + "\n";
    }
    Write("corpus.txt", corpus);
    Write("train.tsv", train);
    Write("dev.tsv", dev);
  }

  // A BPE model trained on the separable corpus.
  static void PrepareTrainingFiles() {
    WriteSeparableData(200, 7);
    ASSERT_EQ(Run({"train-vocab", "--family", "bpe", "--corpus", "corpus.txt", "--vocab-size",
                   "40", "--out", "bpe.model"})
                  .code,
              kExitOk);
  }

  static std::vector<nlohmann::json> JsonLines(const std::string& text) {
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) out.push_back(nlohmann::json::parse(line));
    }
    return out;
  }

  fs::path dir_;
  fs::path previous_;
};

std::size_t CountLines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

// ---- train-vocab ----

TEST_F(CliTest, TrainVocabWritesExpectedFirstMerge) {
  // Pair counts: (a,a) = 2, (a,b) = 3.
  Write("corpus.txt", "aab aab ab\n");
  const Result r = Run({"train-vocab", "--family", "bpe", "--corpus", "corpus.txt",
                        "--vocab-size", "3", "--out", "m.bpe"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<std::string> lines = ReadLines("m.bpe");
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], kBpeHeader);
  EXPECT_EQ(lines[2], "a b");
}

TEST_F(CliTest, VocabSizeBelowCharacterInventoryFails) {
  Write("corpus.txt", "abc abd\n");
  for (const char* family : {"bpe", "ulm"}) {
    const Result r = Run({"train-vocab", "--family", family, "--corpus", "corpus.txt",
                          "--vocab-size", "3", "--out", "m"});
    EXPECT_NE(r.code, kExitOk);
    EXPECT_EQ(CountLines(r.err), 1u) << r.err;
    EXPECT_NE(r.err.find("character inventory"), std::string::npos);
    EXPECT_FALSE(fs::exists("m"));
  }
}

TEST_F(CliTest, TrainedModelsLoadAndEncodeLikeTheLibrary) {
  WriteSeparableData(100, 3);
  for (const char* family : {"bpe", "ulm"}) {
    const std::string path = std::string(family) + ".model";
    const Result trained = Run({"train-vocab", "--family", family, "--corpus", "corpus.txt",
                                "--vocab-size", "35", "--out", path});
    ASSERT_EQ(trained.code, kExitOk) << trained.err;
    const auto seg = LoadSegmenter(path);
    const Result r = Run({"encode", "--model", path, "--in", "corpus.txt"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::string expected;
    for (const std::string& line : ReadLines("corpus.txt")) {
      expected += JoinPieces(seg->Deterministic(SplitWhitespace(line))) + "\n";
    }
    EXPECT_EQ(r.out, expected) << family;
  }
}

// ---- encode ----

TEST_F(CliTest, DeterministicEncodingIsStable) {
  PrepareTrainingFiles();
  const Result a = Run({"encode", "--model", "bpe.model", "--in", "corpus.txt", "--out", "a"});
  const Result b = Run({"encode", "--model", "bpe.model", "--in", "corpus.txt", "--out", "b"});
  ASSERT_EQ(a.code, kExitOk);
  ASSERT_EQ(b.code, kExitOk);
  EXPECT_EQ(ReadFile("a"), ReadFile("b"));
  EXPECT_EQ(CountLines(ReadFile("a")), 200u);
}

TEST_F(CliTest, SampledEncodingIsReproduciblePerSeed) {
  PrepareTrainingFiles();
  auto sample = [](const std::string& seed) {
    return Run({"encode", "--model", "bpe.model", "--mode", "sample", "--p", "0.3", "--seed",
                seed, "--in", "corpus.txt"})
        .out;
  };
  EXPECT_EQ(sample("5"), sample("5"));
  EXPECT_NE(sample("5"), sample("6"));
}

TEST_F(CliTest, DropoutZeroEqualsDeterministic) {
  PrepareTrainingFiles();
  const Result det = Run({"encode", "--model", "bpe.model", "--in", "corpus.txt"});
  const Result p0 = Run({"encode", "--model", "bpe.model", "--mode", "sample", "--p", "0",
                         "--seed", "9", "--in", "corpus.txt"});
  ASSERT_EQ(det.code, kExitOk);
  EXPECT_EQ(det.out, p0.out);
}

// ---- train ----

TEST_F(CliTest, BaselineReachesPerfectTrainingAccuracy) {
  PrepareTrainingFiles();
  const Result r = Run({"train", "--seg-model", "bpe.model", "--data", "train.tsv", "--epochs",
                        "50", "--out", "m.json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto metrics = JsonLines(r.out);
  ASSERT_EQ(metrics.size(), 50u);
  EXPECT_DOUBLE_EQ(metrics.back().at("train_acc").get<double>(), 1.0);
  EXPECT_TRUE(fs::exists("m.json"));
}

TEST_F(CliTest, AblatingConsistencyMatchesZeroLambda) {
  PrepareTrainingFiles();
  const std::vector<std::string> common = {"train", "--seg-model", "bpe.model", "--data",
                                           "train.tsv", "--epochs", "3", "--mode", "MVR",
                                           "--p", "0.2"};
  auto run = [&](std::vector<std::string> extra, const std::string& out) {
    std::vector<std::string> args = common;
    args.insert(args.end(), extra.begin(), extra.end());
    args.insert(args.end(), {"--out", out});
    return Run(args);
  };
  const Result ablated = run({"--ablate", "consistency", "--lambda", "0.6"}, "a.json");
  const Result zero = run({"--lambda", "0"}, "b.json");
  ASSERT_EQ(ablated.code, kExitOk) << ablated.err;
  ASSERT_EQ(zero.code, kExitOk) << zero.err;
  const auto a = JsonLines(ablated.out);
  const auto b = JsonLines(zero.out);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t e = 0; e < a.size(); ++e) {
    EXPECT_NEAR(a[e].at("loss").get<double>(),
                0.5 * (a[e].at("ce_det").get<double>() + a[e].at("ce_prob").get<double>()),
                1e-12);
    EXPECT_DOUBLE_EQ(a[e].at("ce_det").get<double>(), b[e].at("ce_det").get<double>());
    EXPECT_DOUBLE_EQ(a[e].at("ce_prob").get<double>(), b[e].at("ce_prob").get<double>());
  }
  EXPECT_EQ(ReadFile("a.json"), ReadFile("b.json"));
}

TEST_F(CliTest, TrainingIsSeedDeterministic) {
  PrepareTrainingFiles();
  auto train = [](const std::string& seed, const std::string& out) {
    return Run({"train", "--seg-model", "bpe.model", "--data", "train.tsv", "--mode", "SR",
                "--epochs", "3", "--seed", seed, "--out", out});
  };
  const Result a = train("4", "a.json");
  const Result b = train("4", "b.json");
  const Result c = train("5", "c.json");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(ReadFile("a.json"), ReadFile("b.json"));
  EXPECT_NE(ReadFile("a.json"), ReadFile("c.json"));
}

TEST_F(CliTest, MetricsCanGoToAFile) {
  PrepareTrainingFiles();
  const Result r = Run({"train", "--seg-model", "bpe.model", "--data", "train.tsv", "--dev",
                        "dev.tsv", "--epochs", "2", "--out", "m.json", "--metrics", "m.jsonl"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto metrics = JsonLines(ReadFile("m.jsonl"));
  ASSERT_EQ(metrics.size(), 2u);
  EXPECT_TRUE(metrics[0].contains("dev_acc"));
}

TEST_F(CliTest, BadTrainingInputsFail) {
  PrepareTrainingFiles();
  Write("bad.tsv", "x\tgood\n");
  EXPECT_EQ(Run({"train", "--seg-model", "bpe.model", "--data", "bad.tsv", "--out", "m.json"})
                .code,
            kExitFailure);
  EXPECT_EQ(Run({"train", "--seg-model", "bpe.model", "--data", "train.tsv", "--ablate",
                 "nothing", "--out", "m.json"})
                .code,
            kExitFailure);
  EXPECT_FALSE(fs::exists("m.json"));
}

// ---- eval ----

TEST_F(CliTest, EvalTwiceGivesIdenticalFiles) {
  PrepareTrainingFiles();
  ASSERT_EQ(Run({"train", "--seg-model", "bpe.model", "--data", "train.tsv", "--epochs", "5",
                 "--out", "m.json"})
                .code,
            kExitOk);
  const Result a = Run({"eval", "--model", "m.json", "--data", "dev.tsv", "--out-predictions",
                        "a.jsonl"});
  const Result b = Run({"eval", "--model", "m.json", "--data", "dev.tsv", "--out-predictions",
                        "b.jsonl"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(ReadFile("a.jsonl"), ReadFile("b.jsonl"));
  EXPECT_EQ(CountLines(ReadFile("a.jsonl")), 40u);
}

TEST_F(CliTest, EvalAccuracyOnHandLabeledSet) {
  // "▁good" pools to +1 and "▁bad" to -1; class 1 wins iff the mean is positive.
  Write("seg.ulm", "#mvrseg-ulm-v1\n▁good\t-0.6931471805599453\n▁bad\t-0.6931471805599453\n");
  const nlohmann::json model = {{"format", "mvrseg-toy-v1"},
                                {"task", "clf"},
                                {"labels", {"0", "1"}},
                                {"dim", 1},
                                {"pieces", {"<unk>", "▁good", "▁bad"}},
                                {"embeddings", {0.0, 1.0, -1.0}},
                                {"weights", {-1.0, 1.0}},
                                {"bias", {0.0, 0.0}},
                                {"segmenter", "seg.ulm"}};
  Write("m.json", model.dump());
  // Correct: 1st, 2nd, 4th (mean -1/3). Wrong: 3rd.
  Write("data.tsv", "1\tgood\n0\tbad\n0\tgood\n0\tbad good bad\n");
  const Result r = Run({"eval", "--model", "m.json", "--data", "data.tsv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json metrics = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(metrics.at("accuracy").get<double>(), 0.75);
  EXPECT_EQ(metrics.at("correct").get<int>(), 3);
  EXPECT_EQ(metrics.at("examples").get<int>(), 4);
}

TEST_F(CliTest, EvalWithMissingModelFails) {
  Write("data.tsv", "1\tgood\n0\tbad\n");
  const Result r = Run({"eval", "--model", "missing.json", "--data", "data.tsv"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_EQ(CountLines(r.err), 1u);
  EXPECT_EQ(r.err.rfind("mvrseg: error: ", 0), 0u);
}

TEST_F(CliTest, TaggingPredictionsHaveOneRecordPerWord) {
  PrepareTrainingFiles();
  Write("tags.tsv", "the\tD\ngood\tA\n\nbad\tA\nmovie\tN\nthe\tD\n");
  ASSERT_EQ(Run({"train", "--task", "tag", "--seg-model", "bpe.model", "--data", "tags.tsv",
                 "--epochs", "2", "--out", "t.json"})
                .code,
            kExitOk);
  const Result r = Run({"eval", "--model", "t.json", "--data", "tags.tsv", "--out-predictions",
                        "p.jsonl"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("units").get<int>(), 5);
  EXPECT_EQ(CountLines(ReadFile("p.jsonl")), 5u);
}

// ---- sweep ----

TEST_F(CliTest, SweepEmitsOneRowPerGridPoint) {
  PrepareTrainingFiles();
  const Result r = Run({"sweep", "--seg-model", "bpe.model", "--data", "train.tsv", "--dev",
                        "dev.tsv", "--mode", "MVR", "--epochs", "2", "--grid", "tau=1,2",
                        "--repeats", "2", "--out", "sweep.json", "--out-dir", "runs"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(CountLines(r.out), 3u);  // header + 2 rows
  const nlohmann::json sweep = nlohmann::json::parse(ReadFile("sweep.json"));
  ASSERT_EQ(sweep.at("points").size(), 2u);
  for (std::size_t p = 0; p < 2; ++p) {
    const auto& point = sweep["points"][p];
    std::vector<double> values;
    for (std::size_t k = 0; k < 2; ++k) {
      // Means are recomputable from the per-run metrics files.
      const auto run = JsonLines(ReadFile("runs/point" + std::to_string(p) + "/seed" +
                                          std::to_string(1 + k) + ".jsonl"));
      values.push_back(run.back().at("dev_acc").get<double>());
      EXPECT_DOUBLE_EQ(point["runs"][k]["metric"].get<double>(), values.back());
    }
    EXPECT_DOUBLE_EQ(point.at("mean").get<double>(), (values[0] + values[1]) / 2.0);
  }
}

TEST_F(CliTest, SinglePointSweepMatchesRepeatedTraining) {
  PrepareTrainingFiles();
  const Result r = Run({"sweep", "--seg-model", "bpe.model", "--data", "train.tsv", "--dev",
                        "dev.tsv", "--mode", "MVR", "--epochs", "2", "--grid", "lambda=0.4",
                        "--repeats", "3", "--seed", "10", "--out", "sweep.json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(CountLines(r.out), 2u);
  const nlohmann::json runs = nlohmann::json::parse(ReadFile("sweep.json"))["points"][0]["runs"];
  ASSERT_EQ(runs.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string seed = std::to_string(10 + k);
    const Result t = Run({"train", "--seg-model", "bpe.model", "--data", "train.tsv", "--dev",
                          "dev.tsv", "--mode", "MVR", "--epochs", "2", "--lambda", "0.4",
                          "--seed", seed, "--out", "m" + seed + ".json"});
    ASSERT_EQ(t.code, kExitOk);
    EXPECT_EQ(runs[k]["seed"].get<int>(), 10 + static_cast<int>(k));
    EXPECT_DOUBLE_EQ(runs[k]["metric"].get<double>(),
                     JsonLines(t.out).back().at("dev_acc").get<double>());
  }
}

TEST(GridTest, ParsesAndExpandsInOrder) {
  const auto axes = ParseGrid("lambda=0.2,0.6;tau=1,2,3");
  ASSERT_EQ(axes.size(), 2u);
  EXPECT_EQ(axes[0].name, "lambda");
  EXPECT_EQ(axes[1].values, (std::vector<double>{1, 2, 3}));
  const auto points = ExpandGrid(axes);
  ASSERT_EQ(points.size(), 6u);
  EXPECT_EQ(points[0], (std::vector<double>{0.2, 1}));
  EXPECT_EQ(points[1], (std::vector<double>{0.2, 2}));
  EXPECT_EQ(points[3], (std::vector<double>{0.6, 1}));
}

TEST(GridTest, RejectsMalformedSpecs) {
  EXPECT_THROW(ParseGrid(""), Error);
  EXPECT_THROW(ParseGrid("gamma=1"), Error);
  EXPECT_THROW(ParseGrid("tau=1;tau=2"), Error);
  EXPECT_THROW(ParseGrid("tau="), Error);
  EXPECT_THROW(ParseGrid("tau=x"), Error);
}

// ---- config, manifests, exit codes ----

TEST_F(CliTest, ConfigFileSetsDefaultsAndFlagsOverrideIt) {
  PrepareTrainingFiles();
  Write("run.ini", "# defaults\nepochs=2\nmode=SR\n");
  const Result from_file = Run({"train", "--config", "run.ini", "--seg-model", "bpe.model",
                                "--data", "train.tsv", "--out", "a.json"});
  ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
  EXPECT_EQ(JsonLines(from_file.out).size(), 2u);
  const Result overridden = Run({"train", "--config", "run.ini", "--seg-model", "bpe.model",
                                 "--data", "train.tsv", "--epochs", "3", "--out", "b.json"});
  ASSERT_EQ(overridden.code, kExitOk);
  EXPECT_EQ(JsonLines(overridden.out).size(), 3u);
  const nlohmann::json manifest = nlohmann::json::parse(ReadFile("b.json.manifest.json"));
  EXPECT_EQ(manifest["options"]["epochs"], "3");
  EXPECT_EQ(manifest["options"]["mode"], "SR");
}

TEST_F(CliTest, ManifestRecordsTheResolvedRun) {
  PrepareTrainingFiles();
  ASSERT_EQ(Run({"train", "--seg-model", "bpe.model", "--data", "train.tsv", "--epochs", "1",
                 "--seed", "42", "--out", "m.json"})
                .code,
            kExitOk);
  const nlohmann::json m = nlohmann::json::parse(ReadFile("m.json.manifest.json"));
  EXPECT_EQ(m["format"], "mvrseg-manifest-v1");
  EXPECT_EQ(m["command"], "train");
  EXPECT_EQ(m["seed"], 42);
  EXPECT_EQ(m["models"]["segmenter"], "bpe.model");
  EXPECT_EQ(m["options"]["lr"], "0.5");
  EXPECT_TRUE(m.contains("created"));
}

TEST_F(CliTest, ReplayReproducesOutputsByteForByte) {
  PrepareTrainingFiles();
  ASSERT_EQ(Run({"train", "--seg-model", "bpe.model", "--data", "train.tsv", "--mode", "MVR",
                 "--epochs", "3", "--seed", "3", "--out", "m.json", "--metrics", "m.jsonl"})
                .code,
            kExitOk);
  ASSERT_EQ(Run({"encode", "--model", "bpe.model", "--mode", "sample", "--p", "0.4", "--seed",
                 "8", "--in", "corpus.txt", "--out", "enc.txt"})
                .code,
            kExitOk);
  const std::string model = ReadFile("m.json");
  const std::string metrics = ReadFile("m.jsonl");
  const std::string encoded = ReadFile("enc.txt");
  fs::remove("m.json");
  fs::remove("m.jsonl");
  fs::remove("enc.txt");
  // The replay must not depend on the config file any more.
  ASSERT_EQ(Run({"replay", "m.json.manifest.json"}).code, kExitOk);
  ASSERT_EQ(Run({"replay", "enc.txt.manifest.json"}).code, kExitOk);
  EXPECT_EQ(ReadFile("m.json"), model);
  EXPECT_EQ(ReadFile("m.jsonl"), metrics);
  EXPECT_EQ(ReadFile("enc.txt"), encoded);
}

TEST_F(CliTest, UsageErrorsExitWithTwoAndOneLine) {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{{},
                                             {"frobnicate"},
                                             {"encode"},
                                             {"encode", "--model", "x", "--mode", "maybe"},
                                             {"encode", "--model", "x", "--p", "1.5"}}) {
    const Result r = Run(args);
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_EQ(CountLines(r.err), 1u) << r.err;
  }
}

TEST_F(CliTest, HelpSucceeds) {
  const Result r = Run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("train-vocab"), std::string::npos);
}

// ---- stats and analyze ----

TEST_F(CliTest, StatsReportsGroupsAndEnforcesKnownGroups) {
  PrepareTrainingFiles();
  std::string groups;
  for (int i = 0; i < 200; ++i) groups += i % 2 ? "x\n" : "y\n";
  Write("groups.txt", groups);
  const Result r = Run({"stats", "--model", "bpe.model", "--corpus", "corpus.txt", "--groups",
                        "groups.txt", "--known-groups", "x,y"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["x"]["words"].get<int>() + report["y"]["words"].get<int>(), 800);
  const Result strict = Run({"stats", "--model", "bpe.model", "--corpus", "corpus.txt",
                             "--groups", "groups.txt", "--known-groups", "x"});
  EXPECT_EQ(strict.code, kExitFailure);
  EXPECT_NE(strict.err.find("unknown group 'y'"), std::string::npos);
}

TEST_F(CliTest, AnalyzeComparesPredictionFiles) {
  Write("a.jsonl",
        "{\"id\":0,\"group\":\"g\",\"gold\":0,\"probs\":[0.75,0.25]}\n"
        "{\"id\":1,\"group\":\"h\",\"gold\":1,\"probs\":[0.6,0.4]}\n");
  Write("b.jsonl",
        "{\"id\":0,\"group\":\"g\",\"gold\":0,\"probs\":[0.75,0.25]}\n"
        "{\"id\":1,\"group\":\"h\",\"gold\":1,\"probs\":[0.3,0.7]}\n");
  const Result delta = Run({"analyze", "delta", "--a", "a.jsonl", "--b", "b.jsonl"});
  ASSERT_EQ(delta.code, kExitOk) << delta.err;
  const nlohmann::json d = nlohmann::json::parse(delta.out);
  EXPECT_DOUBLE_EQ(d["groups"]["h"]["delta"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(d["groups"]["g"]["delta"].get<double>(), 0.0);

  const Result kl = Run({"analyze", "ensemble-kl", "--base", "a.jsonl", "--sr", "a.jsonl",
                         "--test", "a.jsonl"});
  ASSERT_EQ(kl.code, kExitOk) << kl.err;
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(kl.out)["g"].get<double>(), 0.0);

  const Result ent = Run({"analyze", "entropy", "--a", "a.jsonl", "--b", "b.jsonl"});
  ASSERT_EQ(ent.code, kExitOk) << ent.err;
  EXPECT_EQ(nlohmann::json::parse(ent.out)["buckets"].size(), 5u);

  Write("c.jsonl", "{\"id\":7,\"gold\":0,\"probs\":[0.5,0.5]}\n");
  EXPECT_EQ(Run({"analyze", "delta", "--a", "a.jsonl", "--b", "c.jsonl"}).code, kExitFailure);
}

}  // namespace
}  // namespace mvrseg::cli
