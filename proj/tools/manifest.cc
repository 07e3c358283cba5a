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


#include <chrono>
#include <ctime>

#include "internal.h"
#include "mvrseg/text.h"

namespace mvrseg::cli {

namespace {

constexpr const char* kManifestFormat = "mvrseg-manifest-v1";

bool Skipped(const std::string& name) {
  return name == "help" || name == "config";
}

std::string UtcTimestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void AddCommonOptions(CLI::App& app, std::string& manifest_path) {
  app.add_option("--config", "Read option defaults from a key=value file")->type_name("FILE");
  app.add_option("--manifest", manifest_path,
                 "Run manifest path (default: <output>.manifest.json)");
}

nlohmann::json ResolvedOptions(const CLI::App& app) {
  nlohmann::json out = nlohmann::json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (Skipped(name)) continue;
    if (opt->get_type_size() == 0) {
      if (opt->count() > 0) out[name] = true;
      continue;
    }
    if (opt->count() > 0) {
      out[name] = opt->as<std::string>();
    } else if (!opt->get_default_str().empty()) {
      out[name] = opt->get_default_str();
    }
  }
  return out;
}

std::vector<std::string> ArgsFromOptions(const nlohmann::json& options) {
  std::vector<std::string> args;
  for (const auto& [name, value] : options.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + name);
      continue;
    }
    args.push_back("--" + name);
    args.push_back(value.get<std::string>());
  }
  return args;
}

std::string ManifestPath(const std::string& explicit_path, const std::string& primary_output,
                         const std::string& command) {
  if (!explicit_path.empty()) return explicit_path;
  if (!primary_output.empty() && primary_output != "-") return primary_output + ".manifest.json";
  return command + ".manifest.json";
}

void WriteManifest(const std::string& path, const std::string& command,
                   const CLI::App& app, const Context& ctx,
                   std::optional<std::uint64_t> seed, const nlohmann::json& models) {
  nlohmann::json j = {
      {"format", kManifestFormat},
      {"command", command},
      {"argv", ctx.argv},
      {"options", ResolvedOptions(app)},
      {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
      {"models", models},
      {"created", UtcTimestamp()},
  };
  WriteFile(path, j.dump(2) + "\n");
}

}  // namespace mvrseg::cli
