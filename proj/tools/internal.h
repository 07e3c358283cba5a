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


#ifndef MVRSEG_TOOLS_INTERNAL_H_
#define MVRSEG_TOOLS_INTERNAL_H_

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace mvrseg::cli {

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> argv;  // as given, without the program name
};

// A subcommand and the action run after a successful parse.
struct Command {
  CLI::App* app = nullptr;
  std::function<int(Context&)> run;
};

void AddTrainVocab(CLI::App& root, std::vector<Command>& commands);
void AddEncode(CLI::App& root, std::vector<Command>& commands);
void AddStats(CLI::App& root, std::vector<Command>& commands);
void AddTrain(CLI::App& root, std::vector<Command>& commands);
void AddEval(CLI::App& root, std::vector<Command>& commands);
void AddSweep(CLI::App& root, std::vector<Command>& commands);
void AddAnalyze(CLI::App& root, std::vector<Command>& commands);
void AddReplay(CLI::App& root, std::vector<Command>& commands);

// ---- run manifests ----

// Adds --config (key=value file) and --manifest to a subcommand.
void AddCommonOptions(CLI::App& app, std::string& manifest_path);

// Resolved option values of a parsed subcommand, keyed by long name; unset
// options without a default are left out.
nlohmann::json ResolvedOptions(const CLI::App& app);

// Command-line arguments reproducing `options` (inverse of ResolvedOptions).
std::vector<std::string> ArgsFromOptions(const nlohmann::json& options);

// Manifest path: explicit value, else "<primary output>.manifest.json", else
// "<command>.manifest.json" in the working directory.
std::string ManifestPath(const std::string& explicit_path, const std::string& primary_output,
                         const std::string& command);

// Writes the run manifest. Called before a command produces any output.
void WriteManifest(const std::string& path, const std::string& command,
                   const CLI::App& app, const Context& ctx,
                   std::optional<std::uint64_t> seed, const nlohmann::json& models);

}  // namespace mvrseg::cli

#endif  // MVRSEG_TOOLS_INTERNAL_H_
