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

#ifndef MVRSEG_DATASET_H_
#define MVRSEG_DATASET_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mvrseg/toy_model.h"

namespace mvrseg {

// One labelled input. Classification examples carry one label; tagging
// examples carry one tag per word.
struct Example {
  std::vector<std::string> words;
  std::vector<std::size_t> labels;
};

struct Dataset {
  Task task = Task::kClassification;
  std::vector<std::string> label_names;
  std::vector<Example> examples;

  std::size_t num_classes() const { return label_names.size(); }

  // Throws Error on an empty dataset, a label outside the label space, or a
  // tagging example whose label count differs from its word count.
  void Validate() const;
};

// "label<TAB>text" lines. Labels are non-negative integers; without
// `label_names` the label space is 0..max(label) (at least two classes).
// With `label_names` (e.g. from a trained model), labels outside it are
// rejected with "label out of range".
Dataset ParseClassificationData(std::string_view text,
                                const std::vector<std::string>* label_names = nullptr);
Dataset LoadClassificationData(const std::string& path,
                               const std::vector<std::string>* label_names = nullptr);

// "word<TAB>tag" lines, sentences separated by blank lines. Without
// `label_names` the tag set is the sorted set of tags seen.
Dataset ParseTaggingData(std::string_view text,
                         const std::vector<std::string>* label_names = nullptr);
Dataset LoadTaggingData(const std::string& path,
                        const std::vector<std::string>* label_names = nullptr);

Dataset LoadDataset(Task task, const std::string& path,
                    const std::vector<std::string>* label_names = nullptr);

}  // namespace mvrseg

#endif  // MVRSEG_DATASET_H_
