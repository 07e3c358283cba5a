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

#include "mvrseg/distribution.h"

#include <algorithm>
#include <cmath>

#include "mvrseg/text.h"

namespace mvrseg {

std::vector<double> LogSoftmax(std::span<const double> logits) {
  if (logits.empty()) throw Error("softmax of an empty vector");
  const double hi = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - hi);
  const double log_norm = hi + std::log(sum);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - log_norm;
  return out;
}

std::vector<double> Softmax(std::span<const double> logits) {
  if (logits.empty()) throw Error("softmax of an empty vector");
  const double hi = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - hi);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return out;
}

std::vector<double> Flatten(std::span<const double> logits, double tau) {
  if (!(tau > 0.0)) throw Error("flatten temperature must be > 0");
  if (tau == 1.0) return Softmax(logits);
  std::vector<double> scaled(logits.begin(), logits.end());
  for (double& z : scaled) z /= tau;
  return Softmax(scaled);
}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error("KL divergence of distributions with different sizes");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) kl += p[i] * (std::log(p[i]) - std::log(std::max(q[i], kKlEpsilon)));
  }
  return kl;
}

double Entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

void CheckDistribution(std::span<const double> p, double tolerance) {
  if (p.empty()) throw Error("empty distribution");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0 + tolerance)) throw Error("probability out of range");
    sum += x;
  }
  if (std::abs(sum - 1.0) > tolerance) throw Error("probabilities do not sum to 1");
}

}  // namespace mvrseg
