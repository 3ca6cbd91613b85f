#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace hyperperc {

// Splits [0, n) into `threads` contiguous blocks and runs fn(block, begin, end)
// on each, block 0 on the calling thread. The first exception is rethrown.
template <class Fn>
void parallel_blocks(std::int64_t n, int threads, Fn&& fn)
{
    threads = std::max(1, static_cast<int>(std::min<std::int64_t>(threads, std::max<std::int64_t>(n, 1))));
    std::vector<std::exception_ptr> errors(threads);
    auto run = [&](int b) {
        const std::int64_t begin = n * b / threads;
        const std::int64_t end = n * (b + 1) / threads;
        try {
            fn(b, begin, end);
        } catch (...) {
            errors[b] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (int b = 1; b < threads; ++b) pool.emplace_back(run, b);
    run(0);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace hyperperc
