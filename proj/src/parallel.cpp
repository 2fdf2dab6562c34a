#include "hypctrl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace hypctrl {

namespace {

std::size_t env_threads() {
    const char* raw = std::getenv("HYPCTRL_THREADS");
    if (raw == nullptr) return 1;
    try {
        const long v = std::stol(raw);
        return v > 0 ? static_cast<std::size_t>(v) : 1;
    } catch (...) {
        return 1;
    }
}

std::atomic<std::size_t> g_override{0};

}  // namespace

std::size_t thread_count() {
    static const std::size_t from_env = env_threads();
    const std::size_t o = g_override.load();
    return o > 0 ? o : from_env;
}

void set_thread_count(std::size_t n) { g_override.store(n); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    // Below this size the spawn cost dominates.
    constexpr std::size_t min_per_worker = 64;
    const std::size_t workers = std::min(thread_count(), n / min_per_worker);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t block = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t lo = w * block;
        const std::size_t hi = std::min(n, lo + block);
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (std::size_t i = 0; i < std::min(n, block); ++i) body(i);
}

}  // namespace hypctrl
