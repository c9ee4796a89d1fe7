#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tct {

/// Default worker count: the TCT_THREADS environment variable, else 1.
inline int default_thread_count() {
    if (const char* env = std::getenv("TCT_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v <= 1024) return static_cast<int>(v);
    }
    return 1;
}

/// Static-partition parallel loop. Each index is processed exactly once
/// and writes only its own output slot, so results are bitwise identical
/// for any thread count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        std::size_t lo = count * w / nw;
        std::size_t hi = count * (w + 1) / nw;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tct
