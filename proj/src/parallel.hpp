// Copyright 2026 The projecho Authors
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

#ifndef PROJECHO_SRC_PARALLEL_HPP
#define PROJECHO_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace projecho::detail {

/// Calls body(chunk, begin, end) over [0, n) split into `chunks` contiguous
/// ranges, on up to `threads` workers. Chunk boundaries depend only on n and
/// the chunk count, so per-chunk reductions combined in chunk order are
/// independent of the thread count.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t chunks, int threads, Body &&body) {
    chunks = std::max<std::size_t>(1, std::min(chunks, n));
    auto range = [&](std::size_t c) {
        return std::pair{n * c / chunks, n * (c + 1) / chunks};
    };
    std::size_t workers = std::min<std::size_t>(std::max(threads, 1), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            auto [b, e] = range(c);
            body(c, b, e);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t c = w; c < chunks; c += workers) {
                    auto [b, e] = range(c);
                    body(c, b, e);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

/// Fixed chunk count used by the Monte Carlo loops.
inline constexpr std::size_t kReductionChunks = 64;

}  // namespace projecho::detail

#endif
