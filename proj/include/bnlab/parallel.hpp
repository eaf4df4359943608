// Copyright 2026 The bnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BNLAB_PARALLEL_HPP_
#define BNLAB_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bnlab {

// Number of chunks ParallelChunks splits `count` items into. Callers size
// their per-chunk result buffers with this.
inline int NumChunks(std::int64_t count, int threads) {
  if (count <= 0) return 0;
  if (threads <= 1 || count < 64) return 1;
  const std::int64_t chunks = std::min<std::int64_t>(count, 4 * threads);
  return static_cast<int>(chunks);
}

// Runs body(begin, end, chunk) over a contiguous partition of [0, count).
// Chunk c always covers the same index range for a given (count, threads),
// and every chunk runs exactly once. Results must be merged by the caller in
// chunk order (or with an order-independent reduction) so that the output
// does not depend on scheduling.
template <class Body>
void ParallelChunks(std::int64_t count, int threads, Body&& body) {
  const int chunks = NumChunks(count, threads);
  if (chunks == 0) return;
  auto bounds = [&](int c) {
    const std::int64_t begin = count * c / chunks;
    const std::int64_t end = count * (c + 1) / chunks;
    return std::pair<std::int64_t, std::int64_t>(begin, end);
  };
  if (chunks == 1) {
    body(std::int64_t{0}, count, 0);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const int c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        auto [begin, end] = bounds(c);
        body(begin, end, c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int workers = std::min(threads, chunks);
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace bnlab

#endif  // BNLAB_PARALLEL_HPP_
