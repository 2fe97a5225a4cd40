/*
 * Copyright 2026 The clwe-lab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CLWE_PARALLEL_HPP_
#define CLWE_PARALLEL_HPP_

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace clwe {

// Runs fn(i) for i in [0, n) on `threads` workers. No ordering guarantees;
// results must go into caller-provided per-index slots.
template <class Fn>
void parallel_for_index(std::size_t n, int threads, Fn fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

// Produces chunks [0, n_chunks) in parallel and consumes them in strictly
// increasing index order. At most `window` produced-but-unconsumed chunks are
// held at a time, so memory stays bounded for streaming pipelines. The
// consumer runs serialized; outputs are identical for any worker count.
template <class T, class Produce, class Consume>
void parallel_chunks_ordered(std::size_t n_chunks, int threads,
                             std::size_t window, Produce produce,
                             Consume consume) {
  if (threads <= 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) consume(c, produce(c));
    return;
  }
  if (window == 0) window = 1;

  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::optional<T>> ring(window);
  std::size_t next_emit = 0;
  std::atomic<std::size_t> next_claim{0};

  auto work = [&] {
    for (;;) {
      const std::size_t c = next_claim.fetch_add(1);
      if (c >= n_chunks) return;
      {
        std::unique_lock lk(mu);
        cv.wait(lk, [&] { return c < next_emit + window; });
      }
      T item = produce(c);
      std::unique_lock lk(mu);
      ring[c % window] = std::move(item);
      while (next_emit < n_chunks && ring[next_emit % window].has_value()) {
        T current = std::move(*ring[next_emit % window]);
        ring[next_emit % window].reset();
        consume(next_emit, std::move(current));
        ++next_emit;
        cv.notify_all();
      }
    }
  };

  std::vector<std::thread> pool;
  const std::size_t count =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n_chunks);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

}  // namespace clwe

#endif  // CLWE_PARALLEL_HPP_
