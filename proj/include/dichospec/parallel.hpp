#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dichospec {

// Worker cap: min(hardware, DICHOSPEC_THREADS when set).
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DICHOSPEC_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

// Runs fn(begin, end) over disjoint index chunks. The chunk layout depends
// only on n, and callers merge per-chunk results in chunk order, so results
// are identical for any worker count.
template <typename Fn>
void parallel_chunks(std::size_t n, Fn&& fn) {
    unsigned workers = worker_count();
    if (n < 2048 || workers == 1) {
        fn(std::size_t{0}, n, std::size_t{0});
        return;
    }
    std::size_t chunks = workers;
    std::size_t per = (n + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t b = c * per;
        std::size_t e = std::min(n, b + per);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e, c] { fn(b, e, c); });
    }
    for (auto& th : pool) th.join();
}

} // namespace dichospec
