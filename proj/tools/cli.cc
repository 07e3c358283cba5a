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

#include <algorithm>
#include <exception>
#include <ostream>
#include <set>

#include "internal.h"
#include "mvrseg/text.h"

namespace mvrseg::cli {

namespace {

const std::set<std::string>& GridParameters() {
  static const std::set<std::string> names = {"lambda", "tau", "p", "alpha", "lr", "momentum"};
  return names;
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

bool MentionsOption(const std::vector<std::string>& args, const std::string& name) {
  const std::string flag = "--" + name;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Replaces "--config FILE" with the file's key=value entries as options.
// Options given explicitly on the command line take precedence.
std::vector<std::string> ExpandConfig(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw CLI::ArgumentMismatch("--config requires a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(path)) {
      if (item.name.empty() || MentionsOption(args, item.name)) continue;
      std::string opt = "--" + item.name;
      if (!item.inputs.empty()) opt += "=" + item.inputs.front();
      out.push_back(std::move(opt));
    }
  }
  return out;
}

}  // namespace

std::vector<GridAxis> ParseGrid(std::string_view spec) {
  std::vector<GridAxis> axes;
  std::set<std::string> seen;
  for (std::string_view part : Split(spec, ';')) {
    part = Trim(part);
    if (part.empty()) continue;
    const std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw Error("grid entry '" + std::string(part) + "' is not name=v1,v2,...");
    }
    GridAxis axis;
    axis.name = std::string(Trim(part.substr(0, eq)));
    if (!GridParameters().contains(axis.name)) {
      throw Error("unknown grid parameter '" + axis.name +
                  "' (expected lambda, tau, p, alpha, lr or momentum)");
    }
    if (!seen.insert(axis.name).second) throw Error("grid parameter '" + axis.name + "' repeated");
    for (std::string_view v : Split(part.substr(eq + 1), ',')) {
      v = Trim(v);
      if (v.empty()) throw Error("empty value for grid parameter '" + axis.name + "'");
      axis.values.push_back(ParseDouble(v, 0));
    }
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw Error("empty grid");
  return axes;
}

std::vector<std::vector<double>> ExpandGrid(const std::vector<GridAxis>& axes) {
  std::vector<std::vector<double>> points = {{}};
  for (const GridAxis& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : points) {
      for (double v : axis.values) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    }
    points = std::move(next);
  }
  return points;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Subword segmentation and multi-view subword regularization toolkit", "mvrseg");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::vector<Command> commands;
  AddTrainVocab(app, commands);
  AddEncode(app, commands);
  AddStats(app, commands);
  AddTrain(app, commands);
  AddEval(app, commands);
  AddSweep(app, commands);
  AddAnalyze(app, commands);
  AddReplay(app, commands);

  try {
    const std::vector<std::string> expanded = ExpandConfig(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Help requested on a subcommand is reported through the same path.
    if (e.get_exit_code() == 0) {
      for (const Command& c : commands) {
        if (c.app->parsed()) {
          out << c.app->help();
          return kExitOk;
        }
      }
      out << app.help();
      return kExitOk;
    }
    std::string what = e.what();
    std::replace(what.begin(), what.end(), '\n', ' ');
    err << "mvrseg: error: " << what << "\n";
    return kExitUsage;
  }

  Context ctx{out, err, args};
  for (const Command& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.run(ctx);
    } catch (const ParseError& e) {
      err << "mvrseg: error: " << e.what() << "\n";
      return kExitFailure;
    } catch (const std::exception& e) {
      std::string what = e.what();
      std::replace(what.begin(), what.end(), '\n', ' ');
      err << "mvrseg: error: " << what << "\n";
      return kExitFailure;
    }
  }
  err << "mvrseg: error: no command given\n";
  return kExitUsage;
}

}  // namespace mvrseg::cli
