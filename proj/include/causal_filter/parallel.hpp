// causal_filter/parallel.hpp
//
// Copyright 2026 The causal-filter Authors
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

#ifndef CAUSAL_FILTER_PARALLEL_HPP
#define CAUSAL_FILTER_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace causal_filter {

// Worker cap: CAUSAL_FILTER_THREADS when set, otherwise the hardware count.
inline unsigned max_threads() {
  if (const char* env = std::getenv("CAUSAL_FILTER_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace detail {
inline bool& inside_parallel_region() {
  thread_local bool inside = false;
  return inside;
}
}  // namespace detail

// Runs fn(i) for i in [0, count) on up to max_threads() workers.  Tasks are
// index-addressed so results land in caller-owned slots and the outcome is
// identical to the sequential order.  Nested calls run sequentially instead
// of multiplying worker pools.
template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(max_threads(), count));
  if (workers <= 1 || detail::inside_parallel_region()) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&next, count, &fn] {
      detail::inside_parallel_region() = true;
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1))
        fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace causal_filter

#endif  // CAUSAL_FILTER_PARALLEL_HPP
