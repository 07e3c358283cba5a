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

#ifndef MVRSEG_PARALLEL_H_
#define MVRSEG_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace mvrseg {

// Worker count: hardware concurrency, capped by MVRSEG_THREADS when set.
std::size_t DefaultThreadCount();

// Runs fn(i) for i in [0, n) on up to `threads` threads. Each index is
// processed exactly once; callers write results into per-index slots so the
// outcome does not depend on scheduling. The first exception thrown by any
// fn(i) is rethrown after all workers finish.
void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace mvrseg

#endif  // MVRSEG_PARALLEL_H_
