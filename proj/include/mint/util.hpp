#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace mint {

inline double log_base(double x, double base) {
    return std::log(x) / std::log(base);
}

// 0 * log(0) := 0
inline double plogp(double p, double base) {
    return p > 0.0 ? p * log_base(p, base) : 0.0;
}

// splitmix64: cheap, well-mixed stream for deriving per-task seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

// Index-sharded parallel map; fn(i) must write only to slot i of its output.
// Deterministic regardless of thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         std::size_t min_grain = 64) {
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (n < min_grain || hw == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t n_threads = std::min(hw, (n + min_grain - 1) / min_grain);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += n_threads) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace mint
