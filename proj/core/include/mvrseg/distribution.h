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

#ifndef MVRSEG_DISTRIBUTION_H_
#define MVRSEG_DISTRIBUTION_H_

#include <span>
#include <vector>

namespace mvrseg {

// Lower clamp applied to q inside KlDivergence.
inline constexpr double kKlEpsilon = 1e-12;

std::vector<double> Softmax(std::span<const double> logits);
std::vector<double> LogSoftmax(std::span<const double> logits);

// softmax(logits / tau). Temperatures above one flatten the distribution;
// tau = 1 is exactly Softmax(). Throws Error when tau <= 0.
std::vector<double> Flatten(std::span<const double> logits, double tau);

// KL(p || q) = sum_i p_i ln(p_i / max(q_i, kKlEpsilon)), in nats. Terms with
// p_i = 0 contribute nothing. Throws Error on a size mismatch.
double KlDivergence(std::span<const double> p, std::span<const double> q);

// -sum_i p_i ln p_i.
double Entropy(std::span<const double> p);

// Throws Error unless p is non-empty, entries are in [0, 1] and sum to one
// within `tolerance`.
void CheckDistribution(std::span<const double> p, double tolerance = 1e-6);

}  // namespace mvrseg

#endif  // MVRSEG_DISTRIBUTION_H_
