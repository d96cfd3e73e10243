// Copyright 2026 The mmw-mobility Authors
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

#ifndef MMW_PARALLEL_HPP_
#define MMW_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace mmw {

// Runs fn(i) for every i in [0, n) on at most `threads` workers (0 = hardware
// concurrency). Work is claimed through an atomic counter; callers write
// results into slot i so the merge order never depends on scheduling. The
// exception of the lowest failing index is rethrown.
inline void ParallelFor(std::size_t n, int threads,
                        const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t workers =
      threads > 0 ? static_cast<std::size_t>(threads)
                  : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace mmw

#endif  // MMW_PARALLEL_HPP_
