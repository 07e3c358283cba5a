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


#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "cli.h"
#include "internal.h"
#include "mvrseg/analysis.h"
#include "mvrseg/bpe_model.h"
#include "mvrseg/corpus.h"
#include "mvrseg/dataset.h"
#include "mvrseg/parallel.h"
#include "mvrseg/random.h"
#include "mvrseg/segmenter.h"
#include "mvrseg/text.h"
#include "mvrseg/trainer.h"
#include "mvrseg/unigram_model.h"

namespace mvrseg::cli {

namespace {

// ---- I/O helpers ----

std::string ReadInput(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  return ReadFile(path);
}

void WriteOutput(Context& ctx, const std::string& path, const std::string& content) {
  if (path == "-") {
    ctx.out << content;
    ctx.out.flush();
  } else {
    WriteFile(path, content);
  }
}

// Splits text into lines; a trailing newline does not start an extra line.
std::vector<std::string> Lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    pos = nl + 1;
  }
  return lines;
}

// Non-empty lines of a one-label-per-line file.
std::vector<std::string> ReadLabels(const std::string& path) {
  std::vector<std::string> out;
  for (std::string& line : Lines(ReadFile(path))) {
    const auto words = SplitWhitespace(line);
    if (words.empty()) continue;
    if (words.size() != 1) {
      throw ParseError("group label contains whitespace", out.size() + 1);
    }
    out.push_back(words.front());
  }
  return out;
}

nlohmann::json ReadJsonFile(const std::string& path) {
  try {
    return nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

double SampleStd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::string Fixed(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << v;
  return os.str();
}

// ---- train-vocab ----

struct TrainVocabFlags {
  std::string family = "bpe";
  std::string corpus;
  std::size_t vocab_size = 0;
  std::string out;
  std::size_t seed_max_len = 8;
  double prune_fraction = 0.25;
  std::size_t em_iters = 2;
  std::string manifest;
};

int RunTrainVocab(Context& ctx, const TrainVocabFlags& f, const CLI::App& app) {
  const CorpusStats stats = CountCorpus(Lines(ReadInput(f.corpus)));
  if (f.vocab_size < stats.chars.size()) {
    throw Error("vocab size " + std::to_string(f.vocab_size) +
                " is below the character inventory (" + std::to_string(stats.chars.size()) + ")");
  }
  WriteManifest(ManifestPath(f.manifest, f.out, "train-vocab"), "train-vocab", app, ctx,
                std::nullopt, {{"corpus", f.corpus}, {"output", f.out}});
  if (f.family == "bpe") {
    const BpeModel model = TrainBpe(stats, f.vocab_size - stats.chars.size());
    SaveBpe(model, f.out);
    ctx.out << "bpe: " << model.merges().size() << " merges, vocabulary "
            << model.vocabulary().size() << " -> " << f.out << "\n";
  } else {
    UnigramTrainerOptions opts;
    opts.target_vocab_size = f.vocab_size;
    opts.seed_max_len = f.seed_max_len;
    opts.prune_fraction = f.prune_fraction;
    opts.em_iters = f.em_iters;
    const UnigramModel model = TrainUnigram(stats, opts);
    SaveUnigram(model, f.out);
    ctx.out << "ulm: " << model.size() << " pieces, log-likelihood "
            << FormatDouble(CorpusLogLikelihood(model, stats)) << " -> " << f.out << "\n";
  }
  return kExitOk;
}

}  // namespace

void AddTrainVocab(CLI::App& root, std::vector<Command>& commands) {
  auto f = std::make_shared<TrainVocabFlags>();
  CLI::App* app = root.add_subcommand("train-vocab", "Train a BPE or unigram-LM vocabulary");
  app->add_option("--family", f->family, "Model family")
      ->check(CLI::IsMember({"bpe", "ulm"}));
  app->add_option("--corpus", f->corpus, "Corpus, one sentence per line ('-' = stdin)")
      ->required();
  app->add_option("--vocab-size", f->vocab_size,
                  "Vocabulary size (characters plus merges for BPE)")
      ->required();
  app->add_option("--out", f->out, "Output model file")->required();
  app->add_option("--seed-max-len", f->seed_max_len, "Longest seed piece (ulm)")
      ->check(CLI::PositiveNumber);
  app->add_option("--prune-fraction", f->prune_fraction, "Fraction pruned per round (ulm)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  app->add_option("--em-iters", f->em_iters, "EM iterations per round (ulm)")
      ->check(CLI::PositiveNumber);
  AddCommonOptions(*app, f->manifest);
  commands.push_back({app, [f, app](Context& ctx) { return RunTrainVocab(ctx, *f, *app); }});
}

// ---- encode ----

namespace {

struct EncodeFlags {
  std::string model;
  std::string mode = "det";
  double p = 0.1;
  double alpha = 0.6;
  std::uint64_t seed = 1;
  std::string in = "-";
  std::string out = "-";
  std::string manifest;
};

int RunEncode(Context& ctx, const EncodeFlags& f, const CLI::App& app) {
  const auto segmenter = LoadSegmenter(f.model);
  const std::vector<std::string> lines = Lines(ReadInput(f.in));
  const bool sample = f.mode == "sample";
  const double strength = segmenter->family() == SegmenterFamily::kBpe ? f.p : f.alpha;
  WriteManifest(ManifestPath(f.manifest, f.out, "encode"), "encode", app, ctx,
                sample ? std::optional<std::uint64_t>(f.seed) : std::nullopt,
                {{"model", f.model}, {"family", FamilyName(segmenter->family())}});

  std::vector<std::string> encoded(lines.size());
  ParallelFor(lines.size(), DefaultThreadCount(), [&](std::size_t i) {
    const std::vector<std::string> words = SplitWhitespace(lines[i]);
    if (sample) {
      Rng rng = Rng::Stream(f.seed, {3, i});
      encoded[i] = JoinPieces(segmenter->Sample(words, strength, rng));
    } else {
      encoded[i] = JoinPieces(segmenter->Deterministic(words));
    }
  });
  std::string text;
  for (const std::string& line : encoded) {
    text += line;
    text += '\n';
  }
  WriteOutput(ctx, f.out, text);
  return kExitOk;
}

}  // namespace

void AddEncode(CLI::App& root, std::vector<Command>& commands) {
  auto f = std::make_shared<EncodeFlags>();
  CLI::App* app = root.add_subcommand("encode", "Segment a corpus");
  app->add_option("--model", f->model, "BPE or unigram model file")->required();
  app->add_option("--mode", f->mode, "det (greedy BPE / Viterbi) or sample")
      ->check(CLI::IsMember({"det", "sample"}));
  app->add_option("--p", f->p, "BPE-dropout probability")->check(CLI::Range(0.0, 1.0));
  app->add_option("--alpha", f->alpha, "Unigram sampling temperature")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--seed", f->seed, "Random seed for sample mode");
  app->add_option("--in", f->in, "Input, one sentence per line ('-' = stdin)");
  app->add_option("--out", f->out, "Output ('-' = stdout)");
  AddCommonOptions(*app, f->manifest);
  commands.push_back({app, [f, app](Context& ctx) { return RunEncode(ctx, *f, *app); }});
}

// ---- stats ----

namespace {

struct StatsFlags {
  std::string model;
  std::string corpus;
  std::string groups;
  std::string known_groups;
  std::string out = "-";
  std::string manifest;
};

int RunStats(Context& ctx, const StatsFlags& f, const CLI::App& app) {
  const auto segmenter = LoadSegmenter(f.model);
  std::vector<std::string> lines = Lines(ReadInput(f.corpus));
  std::vector<LabeledSentence> corpus;
  if (!f.groups.empty()) {
    // Labels are matched to non-blank sentences.
    std::erase_if(lines, [](const std::string& l) { return SplitWhitespace(l).empty(); });
  }
  if (f.groups.empty()) {
    for (auto& line : lines) corpus.push_back({std::move(line), "all"});
  } else {
    const std::vector<std::string> labels = ReadLabels(f.groups);
    if (labels.size() != lines.size()) {
      throw Error("group file has " + std::to_string(labels.size()) + " lines but the corpus has " +
                  std::to_string(lines.size()));
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      corpus.push_back({std::move(lines[i]), labels[i]});
    }
  }
  std::string known_list = f.known_groups;
  std::replace(known_list.begin(), known_list.end(), ',', ' ');
  const std::vector<std::string> known_vec = SplitWhitespace(known_list);
  const std::set<std::string> known(known_vec.begin(), known_vec.end());
  WriteManifest(ManifestPath(f.manifest, f.out, "stats"), "stats", app, ctx, std::nullopt,
                {{"model", f.model}});
  const GranularityReport report = Granularity(
      corpus, [&](std::span<const std::string> words) { return segmenter->Deterministic(words); },
      known.empty() ? nullptr : &known);
  WriteOutput(ctx, f.out, report.ToJson().dump(2) + "\n");
  return kExitOk;
}

}  // namespace

void AddStats(CLI::App& root, std::vector<Command>& commands) {
  auto f = std::make_shared<StatsFlags>();
  CLI::App* app = root.add_subcommand("stats", "Pieces-per-word granularity report per group");
  app->add_option("--model", f->model, "BPE or unigram model file")->required();
  app->add_option("--corpus", f->corpus, "Corpus, one sentence per line")->required();
  app->add_option("--groups", f->groups, "Group label per corpus line (default: one group 'all')");
  app->add_option("--known-groups", f->known_groups,
                  "Comma-separated group labels; any other label is an error");
  app->add_option("--out", f->out, "Report path ('-' = stdout)");
  AddCommonOptions(*app, f->manifest);
  commands.push_back({app, [f, app](Context& ctx) { return RunStats(ctx, *f, *app); }});
}

// ---- shared training flags ----

namespace {

struct TrainFlags {
  std::string task = "clf";
  std::string mode = "baseline";
  std::optional<double> lambda;
  double tau = 1.0;
  std::optional<double> p;
  std::optional<double> alpha;
  std::string flatten = "det_only";
  bool kl_const_target = false;
  std::string ablate;
  double lr = 0.5;
  double momentum = 0.0;
  std::size_t epochs = 30;
  std::size_t batch = 16;
  std::uint64_t seed = 1;
  std::size_t max_pieces = 128;
  std::size_t dim = 16;
  double init_scale = 0.1;
  std::string data;
  std::string dev;
  std::string seg_model;

  TrainConfig ToConfig() const {
    TrainConfig c;
    c.mode = ParseLossMode(mode);
    c.lambda = lambda;
    c.tau = tau;
    c.dropout_p = p;
    c.alpha = alpha;
    c.flatten_target = flatten == "both" ? FlattenTarget::kBoth : FlattenTarget::kDetOnly;
    c.kl_target_grad = !kl_const_target;
    c.ablate = ParseAblation(ablate);
    c.learning_rate = lr;
    c.momentum = momentum;
    c.epochs = epochs;
    c.batch_size = batch;
    c.seed = seed;
    c.max_pieces = max_pieces;
    c.dim = dim;
    c.init_scale = init_scale;
    return c;
  }
};

void AddTrainOptions(CLI::App& app, TrainFlags& f) {
  app.add_option("--task", f.task, "clf (classification) or tag (sequence tagging)")
      ->check(CLI::IsMember({"clf", "tag"}));
  app.add_option("--mode", f.mode, "Training objective")
      ->check(CLI::IsMember({"baseline", "SR", "MVR", "sr", "mvr"}));
  app.add_option("--lambda", f.lambda, "Consistency weight (default by family: 0.2 bpe, 0.6 ulm)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tau", f.tau, "Flattening temperature")->check(CLI::PositiveNumber);
  app.add_option("--p", f.p, "BPE-dropout probability (default 0.1 SR, 0.2 MVR)")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--alpha", f.alpha, "Unigram sampling temperature (default 0.6 SR, 0.2 MVR)")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--flatten", f.flatten, "Which view the temperature applies to")
      ->check(CLI::IsMember({"det_only", "both"}));
  app.add_flag("--kl-const-target", f.kl_const_target,
               "Treat the flattened deterministic prediction as a constant KL target");
  app.add_option("--ablate", f.ablate, "Comma-separated subset of det_ce,prob_ce,consistency");
  app.add_option("--lr", f.lr, "Learning rate")->check(CLI::PositiveNumber);
  app.add_option("--momentum", f.momentum, "SGD momentum")->check(CLI::Range(0.0, 0.999999));
  app.add_option("--epochs", f.epochs, "Training epochs");
  app.add_option("--batch", f.batch, "Minibatch size")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "Random seed");
  app.add_option("--max-pieces", f.max_pieces, "Truncation length per view (0 = none)");
  app.add_option("--dim", f.dim, "Embedding dimension")->check(CLI::PositiveNumber);
  app.add_option("--init-scale", f.init_scale, "Standard deviation of initial parameters")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--data", f.data, "Training data")->required();
  app.add_option("--dev", f.dev, "Development data");
  app.add_option("--seg-model", f.seg_model, "Segmentation model (BPE or unigram)")->required();
}

struct LoadedData {
  std::shared_ptr<const Segmenter> segmenter;
  Dataset train;
  std::optional<Dataset> dev;
};

LoadedData LoadTrainingData(const TrainFlags& f) {
  LoadedData d;
  d.segmenter = LoadSegmenter(f.seg_model);
  const Task task = ParseTask(f.task);
  d.train = LoadDataset(task, f.data);
  if (!f.dev.empty()) d.dev = LoadDataset(task, f.dev, &d.train.label_names);
  return d;
}

// ---- train ----

struct TrainCmdFlags {
  TrainFlags train;
  std::string out;
  std::string metrics;
  std::string manifest;
};

int RunTrain(Context& ctx, const TrainCmdFlags& f, const CLI::App& app) {
  const TrainConfig config = f.train.ToConfig();
  const LoadedData data = LoadTrainingData(f.train);
  Resolve(config, data.segmenter->family());  // validate before writing anything
  WriteManifest(ManifestPath(f.manifest, f.out, "train"), "train", app, ctx, config.seed,
                {{"segmenter", f.train.seg_model}, {"output", f.out}});

  std::string metrics_text;
  const TrainResult result =
      Train(data.train, data.dev ? &*data.dev : nullptr, *data.segmenter, config,
            [&](const EpochMetrics& m) {
              const std::string line = m.ToJson().dump() + "\n";
              if (f.metrics.empty()) {
                ctx.out << line;
                ctx.out.flush();
              } else {
                metrics_text += line;
              }
            });
  nlohmann::json model = result.model.ToJson();
  model["segmenter"] = f.train.seg_model;
  WriteFile(f.out, model.dump() + "\n");
  if (!f.metrics.empty()) WriteOutput(ctx, f.metrics, metrics_text);
  return kExitOk;
}

}  // namespace

void AddTrain(CLI::App& root, std::vector<Command>& commands) {
  auto f = std::make_shared<TrainCmdFlags>();
  CLI::App* app = root.add_subcommand("train", "Train the toy classifier/tagger");
  AddTrainOptions(*app, f->train);
  app->add_option("--out", f->out, "Output model (JSON)")->required();
  app->add_option("--metrics", f->metrics, "Per-epoch metrics JSONL (default: stdout)");
  AddCommonOptions(*app, f->manifest);
  commands.push_back({app, [f, app](Context& ctx) { return RunTrain(ctx, *f, *app); }});
}

// ---- eval ----

namespace {

struct EvalFlags {
  std::string model;
  std::string data;
  std::string seg_model;
  std::string out_predictions;
  std::string group;
  std::string manifest;
};

int RunEval(Context& ctx, const EvalFlags& f, const CLI::App& app) {
  const nlohmann::json model_json = ReadJsonFile(f.model);
  const ToyModel model = ToyModel::FromJson(model_json);
  std::string seg_path = f.seg_model;
  if (seg_path.empty()) {
    if (!model_json.contains("segmenter")) {
      throw Error("model file names no segmenter; pass --seg-model");
    }
    seg_path = model_json.at("segmenter").get<std::string>();
  }
  const auto segmenter = LoadSegmenter(seg_path);
  const Dataset data = LoadDataset(model.task(), f.data, &model.labels());
  std::vector<std::string> groups;
  if (!f.group.empty()) {
    groups = ReadLabels(f.group);
    if (groups.size() != data.examples.size()) {
      throw Error("group file has " + std::to_string(groups.size()) + " labels but the data has " +
                  std::to_string(data.examples.size()) + " examples");
    }
  }
  WriteManifest(ManifestPath(f.manifest, f.out_predictions, "eval"), "eval", app, ctx,
                std::nullopt, {{"model", f.model}, {"segmenter", seg_path}});

  std::vector<PredictionRecord> records;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.examples.size(); ++i) {
    const Example& ex = data.examples[i];
    const Prediction pred = Predict(model, ex.words, *segmenter);
    for (std::size_t u = 0; u < pred.labels.size(); ++u) {
      PredictionRecord r;
      r.id = static_cast<std::int64_t>(records.size());
      r.group = groups.empty() ? "all" : groups[i];
      r.gold = ex.labels[u];
      r.probs = pred.probs[u];
      correct += pred.labels[u] == r.gold;
      records.push_back(std::move(r));
    }
  }
  if (!f.out_predictions.empty()) {
    WriteOutput(ctx, f.out_predictions, SerializePredictions(records));
  }
  const double acc = records.empty() ? 0.0
                                     : static_cast<double>(correct) /
                                           static_cast<double>(records.size());
  ctx.out << nlohmann::json{{"accuracy", acc},
                            {"correct", correct},
                            {"units", records.size()},
                            {"examples", data.examples.size()}}
                 .dump()
          << "\n";
  return kExitOk;
}

}  // namespace

void AddEval(CLI::App& root, std::vector<Command>& commands) {
  auto f = std::make_shared<EvalFlags>();
  CLI::App* app = root.add_subcommand("eval", "Evaluate a trained model on the deterministic view");
  app->add_option("--model", f->model, "Model written by 'train'")->required();
  app->add_option("--data", f->data, "Evaluation data (format of the model's task)")->required();
  app->add_option("--seg-model", f->seg_model, "Override the segmenter recorded in the model");
  app->add_option("--out-predictions", f->out_predictions, "Prediction JSONL path");
  app->add_option("--group", f->group, "Group label per example, one per line");
  AddCommonOptions(*app, f->manifest);
  commands.push_back({app, [f, app](Context& ctx) { return RunEval(ctx, *f, *app); }});
}

// ---- sweep ----

namespace {

struct SweepFlags {
  TrainFlags train;
  std::string grid;
  std::size_t repeats = 5;
  std::string out;
  std::string out_dir;
  std::string manifest;
};

void ApplyGridValue(TrainConfig& c, const std::string& name, double v) {
  if (name == "lambda") {
    c.lambda = v;
  } else if (name == "tau") {
    c.tau = v;
  } else if (name == "p") {
    c.dropout_p = v;
  } else if (name == "alpha") {
    c.alpha = v;
  } else if (name == "lr") {
    c.learning_rate = v;
  } else if (name == "momentum") {
    c.momentum = v;
  }
}

int RunSweep(Context& ctx, const SweepFlags& f, const CLI::App& app) {
  const std::vector<GridAxis> axes = ParseGrid(f.grid);
  const std::vector<std::vector<double>> points = ExpandGrid(axes);
  const LoadedData data = LoadTrainingData(f.train);
  const TrainConfig base = f.train.ToConfig();
  std::vector<TrainConfig> configs;
  for (const auto& point : points) {
    for (std::size_t r = 0; r < f.repeats; ++r) {
      TrainConfig c = base;
      for (std::size_t a = 0; a < axes.size(); ++a) ApplyGridValue(c, axes[a].name, point[a]);
      c.seed = base.seed + r;
      Resolve(c, data.segmenter->family());
      configs.push_back(c);
    }
  }
  WriteManifest(ManifestPath(f.manifest, f.out, "sweep"), "sweep", app, ctx, base.seed,
                {{"segmenter", f.train.seg_model}});
  if (!f.out_dir.empty()) std::filesystem::create_directories(f.out_dir);

  const bool use_dev = data.dev.has_value();
  std::vector<std::vector<EpochMetrics>> histories(configs.size());
  ParallelFor(configs.size(), DefaultThreadCount(), [&](std::size_t i) {
    histories[i] = Train(data.train, use_dev ? &*data.dev : nullptr, *data.segmenter,
                         configs[i])
                       .history;
    if (!f.out_dir.empty()) {
      std::string text;
      for (const EpochMetrics& m : histories[i]) text += m.ToJson().dump() + "\n";
      const std::filesystem::path dir =
          std::filesystem::path(f.out_dir) / ("point" + std::to_string(i / f.repeats));
      std::filesystem::create_directories(dir);
      WriteFile((dir / ("seed" + std::to_string(configs[i].seed) + ".jsonl")).string(), text);
    }
  });

  auto final_metric = [&](const std::vector<EpochMetrics>& h) {
    if (h.empty()) return 0.0;
    return use_dev ? h.back().dev_acc.value_or(0.0) : h.back().train_acc;
  };
  nlohmann::json rows = nlohmann::json::array();
  std::string table;
  for (const GridAxis& a : axes) table += a.name + "\t";
  table += std::string(use_dev ? "dev_acc" : "train_acc") + "_mean\tstd\tn\n";
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    std::vector<double> values;
    nlohmann::json runs = nlohmann::json::array();
    for (std::size_t r = 0; r < f.repeats; ++r) {
      const std::size_t i = pi * f.repeats + r;
      values.push_back(final_metric(histories[i]));
      runs.push_back({{"seed", configs[i].seed}, {"metric", values.back()}});
    }
    const double mean =
        values.empty() ? 0.0
                       : std::accumulate(values.begin(), values.end(), 0.0) /
                             static_cast<double>(values.size());
    const double sd = SampleStd(values);
    nlohmann::json params = nlohmann::json::object();
    for (std::size_t a = 0; a < axes.size(); ++a) {
      params[axes[a].name] = points[pi][a];
      table += FormatDouble(points[pi][a]) + "\t";
    }
    table += Fixed(mean) + "\t" + Fixed(sd) + "\t" + std::to_string(values.size()) + "\n";
    rows.push_back({{"params", params}, {"mean", mean}, {"std", sd}, {"runs", runs}});
  }
  if (!f.out.empty()) {
    WriteFile(f.out, nlohmann::json{{"metric", use_dev ? "dev_acc" : "train_acc"},
                                    {"points", rows}}
                             .dump(2) +
                         "\n");
  }
  ctx.out << table;
  return kExitOk;
}

}  // namespace

void AddSweep(CLI::App& root, std::vector<Command>& commands) {
  auto f = std::make_shared<SweepFlags>();
  CLI::App* app = root.add_subcommand("sweep", "Grid sweep with repeated seeds");
  AddTrainOptions(*app, f->train);
  app->add_option("--grid", f->grid, "Grid, e.g. \"lambda=0.2,0.6;tau=1,2\"")->required();
  app->add_option("--repeats", f->repeats, "Runs per grid point (seeds seed..seed+N-1)")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", f->out, "Per-run results and summary (JSON)");
  app->add_option("--out-dir", f->out_dir, "Directory for per-run metrics files");
  AddCommonOptions(*app, f->manifest);
  commands.push_back({app, [f, app](Context& ctx) { return RunSweep(ctx, *f, *app); }});
}

// ---- analyze ----

namespace {

struct AnalyzeFlags {
  std::string a, b;
  std::string base, sr, test;
  std::string granularity;
  std::size_t buckets = 5;
  std::string out = "-";
  std::string manifest;
};

GranularityReport GranularityFromJson(const nlohmann::json& j) {
  GranularityReport r;
  for (const auto& [group, g] : j.items()) {
    GroupGranularity& gg = r.groups[group];
    gg.words = g.at("words").get<std::uint64_t>();
    gg.pieces = g.at("pieces").get<std::uint64_t>();
  }
  return r;
}

}  // namespace

void AddAnalyze(CLI::App& root, std::vector<Command>& commands) {
  CLI::App* analyze = root.add_subcommand("analyze", "Compare prediction files");
  analyze->require_subcommand(1);

  {
    auto f = std::make_shared<AnalyzeFlags>();
    CLI::App* app = analyze->add_subcommand("entropy", "Accuracy delta (B - A) by entropy of A");
    app->add_option("--a", f->a, "Predictions of run A")->required();
    app->add_option("--b", f->b, "Predictions of run B")->required();
    app->add_option("--buckets", f->buckets, "Number of equal-width buckets")
        ->check(CLI::PositiveNumber);
    app->add_option("--out", f->out, "Report path ('-' = stdout)");
    AddCommonOptions(*app, f->manifest);
    commands.push_back({app, [f, app](Context& ctx) {
                          const auto a = LoadPredictions(f->a);
                          const auto b = LoadPredictions(f->b);
                          WriteManifest(ManifestPath(f->manifest, f->out, "analyze-entropy"),
                                        "analyze entropy", *app, ctx, std::nullopt, {});
                          WriteOutput(ctx, f->out,
                                      EntropyBuckets(a, b, f->buckets).ToJson().dump(2) + "\n");
                          return kExitOk;
                        }});
  }
  {
    auto f = std::make_shared<AnalyzeFlags>();
    CLI::App* app = analyze->add_subcommand(
        "ensemble-kl", "Mean KL(ensemble of base and SR || test) per group");
    app->add_option("--base", f->base, "Baseline predictions")->required();
    app->add_option("--sr", f->sr, "SR predictions")->required();
    app->add_option("--test", f->test, "Predictions compared with the ensemble")->required();
    app->add_option("--out", f->out, "Report path ('-' = stdout)");
    AddCommonOptions(*app, f->manifest);
    commands.push_back({app, [f, app](Context& ctx) {
                          const auto base = LoadPredictions(f->base);
                          const auto sr = LoadPredictions(f->sr);
                          const auto test = LoadPredictions(f->test);
                          WriteManifest(ManifestPath(f->manifest, f->out, "analyze-ensemble-kl"),
                                        "analyze ensemble-kl", *app, ctx, std::nullopt, {});
                          const nlohmann::json j = EnsembleKl(base, sr, test);
                          WriteOutput(ctx, f->out, j.dump(2) + "\n");
                          return kExitOk;
                        }});
  }
  {
    auto f = std::make_shared<AnalyzeFlags>();
    CLI::App* app = analyze->add_subcommand("delta", "Per-group accuracy delta (B - A)");
    app->add_option("--a", f->a, "Predictions of run A")->required();
    app->add_option("--b", f->b, "Predictions of run B")->required();
    app->add_option("--granularity", f->granularity,
                    "Report from 'stats'; adds (pieces per word, delta) pairs");
    app->add_option("--out", f->out, "Report path ('-' = stdout)");
    AddCommonOptions(*app, f->manifest);
    commands.push_back({app, [f, app](Context& ctx) {
                          const auto a = LoadPredictions(f->a);
                          const auto b = LoadPredictions(f->b);
                          WriteManifest(ManifestPath(f->manifest, f->out, "analyze-delta"),
                                        "analyze delta", *app, ctx, std::nullopt, {});
                          const auto deltas = GroupedDelta(a, b);
                          nlohmann::json j = {{"groups", GroupDeltasToJson(deltas)}};
                          if (!f->granularity.empty()) {
                            j["gain_vs_granularity"] = GainVsGranularity(
                                GranularityFromJson(ReadJsonFile(f->granularity)), deltas);
                          }
                          WriteOutput(ctx, f->out, j.dump(2) + "\n");
                          return kExitOk;
                        }});
  }
}

// ---- replay ----

void AddReplay(CLI::App& root, std::vector<Command>& commands) {
  auto path = std::make_shared<std::string>();
  CLI::App* app = root.add_subcommand("replay", "Re-run the command recorded in a manifest");
  app->add_option("manifest", *path, "Manifest written by an earlier run")->required();
  commands.push_back({app, [path](Context& ctx) {
                        const nlohmann::json m = ReadJsonFile(*path);
                        if (m.value("format", "") != "mvrseg-manifest-v1") {
                          throw Error(*path + ": not a run manifest");
                        }
                        std::vector<std::string> args =
                            SplitWhitespace(m.at("command").get<std::string>());
                        for (std::string& a : ArgsFromOptions(m.at("options"))) {
                          args.push_back(std::move(a));
                        }
                        return RunCli(args, ctx.out, ctx.err);
                      }});
}

}  // namespace mvrseg::cli
