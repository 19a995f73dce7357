#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace noonabs {

// Explicit request wins, then the NOONABS_THREADS environment variable,
// then single-threaded.
inline int resolve_thread_count(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("NOONABS_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0 && n < 1024)
            return int(n);
    }
    return 1;
}

// Runs body(i) for i in [0, n), each index exactly once. body must not throw.
// Results keyed by index stay deterministic whatever the thread count.
template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (n == 0)
        return;
    const std::size_t workers =
        std::min<std::size_t>(std::size_t(std::max(threads, 1)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n)
                return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 0; t + 1 < workers; ++t)
        pool.emplace_back(run);
    run();
    for (auto& th : pool)
        th.join();
}

} // namespace noonabs
