#include "secsym/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

namespace secsym {

namespace {
std::atomic<int> g_max_threads{1};
}

void set_max_threads(int n) {
    if (n < 1) throw std::invalid_argument("set_max_threads: thread count must be >= 1");
    g_max_threads.store(n);
}

int max_threads() { return g_max_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int threads = std::min<std::size_t>(g_max_threads.load(), n);
    if (threads <= 1 || n < 128) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    // static contiguous partition; disjoint output slots keep results thread-count independent
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace secsym
