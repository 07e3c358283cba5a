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

#include "mvrseg/dataset.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "mvrseg/text.h"

namespace mvrseg {

void Dataset::Validate() const {
  if (examples.empty()) throw Error("empty dataset");
  if (label_names.size() < 2) throw Error("need at least two classes");
  for (const Example& ex : examples) {
    if (ex.words.empty()) throw Error("example without words");
    if (task == Task::kClassification && ex.labels.size() != 1) {
      throw Error("classification example must have exactly one label");
    }
    if (task == Task::kTagging && ex.labels.size() != ex.words.size()) {
      throw Error("tagging example must have one tag per word");
    }
    for (std::size_t y : ex.labels) {
      if (y >= label_names.size()) throw Error("label out of range");
    }
  }
}

namespace {

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
  }
  return lines;
}

}  // namespace

Dataset ParseClassificationData(std::string_view text,
                                const std::vector<std::string>* label_names) {
  Dataset ds;
  ds.task = Task::kClassification;
  std::size_t max_label = 0;
  const auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected 'label<TAB>text'", lineno);
    std::string_view label = line.substr(0, tab);
    std::size_t y = 0;
    auto res = std::from_chars(label.data(), label.data() + label.size(), y);
    if (label.empty() || res.ec != std::errc() || res.ptr != label.data() + label.size()) {
      throw ParseError("invalid label '" + std::string(label) + "'", lineno);
    }
    if (label_names && y >= label_names->size()) {
      throw ParseError("label out of range", lineno);
    }
    Example ex;
    ex.words = SplitWhitespace(line.substr(tab + 1));
    if (ex.words.empty()) throw ParseError("example has no text", lineno);
    ex.labels = {y};
    max_label = std::max(max_label, y);
    ds.examples.push_back(std::move(ex));
  }
  if (label_names) {
    ds.label_names = *label_names;
  } else {
    const std::size_t classes = std::max<std::size_t>(max_label + 1, 2);
    for (std::size_t c = 0; c < classes; ++c) ds.label_names.push_back(std::to_string(c));
  }
  ds.Validate();
  return ds;
}

Dataset ParseTaggingData(std::string_view text,
                         const std::vector<std::string>* label_names) {
  struct Raw {
    std::vector<std::string> words;
    std::vector<std::string> tags;
    std::vector<std::size_t> linenos;
  };
  std::vector<Raw> sentences;
  Raw current;
  const auto lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty()) {
      if (!current.words.empty()) sentences.push_back(std::move(current));
      current = Raw{};
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError("expected 'word<TAB>tag'", i + 1);
    }
    std::string_view word = line.substr(0, tab);
    if (SplitWhitespace(word).size() != 1) throw ParseError("word contains whitespace", i + 1);
    current.words.emplace_back(word);
    current.tags.emplace_back(line.substr(tab + 1));
    current.linenos.push_back(i + 1);
  }
  if (!current.words.empty()) sentences.push_back(std::move(current));

  Dataset ds;
  ds.task = Task::kTagging;
  if (label_names) {
    ds.label_names = *label_names;
  } else {
    std::set<std::string> tags;
    for (const Raw& s : sentences) tags.insert(s.tags.begin(), s.tags.end());
    ds.label_names.assign(tags.begin(), tags.end());
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ds.label_names.size(); ++i) index[ds.label_names[i]] = i;
  for (Raw& s : sentences) {
    Example ex;
    for (std::size_t k = 0; k < s.tags.size(); ++k) {
      auto it = index.find(s.tags[k]);
      if (it == index.end()) throw ParseError("unknown tag '" + s.tags[k] + "'", s.linenos[k]);
      ex.labels.push_back(it->second);
    }
    ex.words = std::move(s.words);
    ds.examples.push_back(std::move(ex));
  }
  ds.Validate();
  return ds;
}

Dataset LoadClassificationData(const std::string& path,
                               const std::vector<std::string>* label_names) {
  return ParseClassificationData(ReadFile(path), label_names);
}

Dataset LoadTaggingData(const std::string& path,
                        const std::vector<std::string>* label_names) {
  return ParseTaggingData(ReadFile(path), label_names);
}

Dataset LoadDataset(Task task, const std::string& path,
                    const std::vector<std::string>* label_names) {
  return task == Task::kClassification ? LoadClassificationData(path, label_names)
                                       : LoadTaggingData(path, label_names);
}

}  // namespace mvrseg
