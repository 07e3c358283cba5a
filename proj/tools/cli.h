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


#ifndef MVRSEG_TOOLS_CLI_H_
#define MVRSEG_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mvrseg::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime error (I/O, malformed input, ...)
inline constexpr int kExitUsage = 2;    // bad command line

// Runs one command. `args` excludes the program name, e.g.
// {"encode", "--model", "m.bpe"}. Errors are reported on `err` as a single
// "mvrseg: error: ..." line.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One axis of a sweep grid.
struct GridAxis {
  std::string name;
  std::vector<double> values;
};

// Parses "lambda=0.2,0.6;tau=1,2". Throws mvrseg::Error on malformed input,
// unknown or repeated parameter names.
std::vector<GridAxis> ParseGrid(std::string_view spec);

// Cartesian product of the axes, first axis varying slowest.
std::vector<std::vector<double>> ExpandGrid(const std::vector<GridAxis>& axes);

}  // namespace mvrseg::cli

#endif  // MVRSEG_TOOLS_CLI_H_
