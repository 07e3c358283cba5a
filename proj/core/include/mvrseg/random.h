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

#ifndef MVRSEG_RANDOM_H_
#define MVRSEG_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace mvrseg {

// Deterministic random stream. Distribution sampling is implemented here
// rather than through <random> distributions so that sequences are identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for (seed, key...), e.g. (seed, example_index).
  static Rng Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return p >= 1.0 || (p > 0.0 && Uniform() < p); }

  // Uniform integer in [0, n).
  std::uint64_t UniformInt(std::uint64_t n);

  // Standard normal via Box-Muller.
  double Normal();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t MixSeed(std::uint64_t x);

}  // namespace mvrseg

#endif  // MVRSEG_RANDOM_H_
