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

#ifndef MVRSEG_TEXT_H_
#define MVRSEG_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mvrseg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model, data, or prediction file. `line()` is 1-based, 0 when the
// error is not tied to a particular line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Word-initial marker used by unigram models ("▁", U+2581).
inline constexpr std::string_view kWordMarker = "\xE2\x96\x81";
// Prefix of non-word-initial BPE pieces.
inline constexpr std::string_view kContinuationMarker = "##";
// Reserved piece emitted for characters a model cannot represent.
inline constexpr std::string_view kUnkPiece = "<unk>";

// Splits on ASCII whitespace. Empty fields are dropped.
std::vector<std::string> SplitWhitespace(std::string_view text);

// Splits a UTF-8 string into code points, each returned as its own UTF-8
// substring. Invalid bytes become single-byte "characters" so that the split
// always reconstructs the input.
std::vector<std::string> SplitChars(std::string_view word);

// Number of code points in `word`, consistent with SplitChars().
std::size_t CharLength(std::string_view word);

// Byte length of the UTF-8 sequence starting with `lead`.
std::size_t Utf8SequenceLength(unsigned char lead);

bool StartsWith(std::string_view s, std::string_view prefix);

// Strips a leading `prefix` if present.
std::string_view StripPrefix(std::string_view s, std::string_view prefix);

// Reads a whole file, or throws Error.
std::string ReadFile(const std::string& path);

// Reads a file into lines (trailing '\r' removed). Throws Error.
std::vector<std::string> ReadLines(const std::string& path);

// Writes `content` to `path`, replacing it. Throws Error.
void WriteFile(const std::string& path, std::string_view content);

// Formats a double so that parsing it back yields the identical value.
std::string FormatDouble(double value);

// Parses a full-precision decimal; throws ParseError on trailing garbage.
double ParseDouble(std::string_view text, std::size_t line);

}  // namespace mvrseg

#endif  // MVRSEG_TEXT_H_
