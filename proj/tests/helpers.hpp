#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mint/core.hpp"

namespace testutil {

// Walks the full product support of `sizes`, invoking fn(state).
inline void for_each_state(const std::vector<std::uint32_t>& sizes,
                           const std::function<void(const mint::State&)>& fn) {
    mint::State s(sizes.size(), 0);
    while (true) {
        fn(s);
        std::size_t i = 0;
        for (; i < sizes.size(); ++i) {
            if (++s[i] < sizes[i]) break;
            s[i] = 0;
        }
        if (i == sizes.size()) break;
    }
}

// Dense random distribution over the product support, exponential weights.
inline mint::JointDistribution random_table(const std::vector<std::uint32_t>& sizes,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> draw(1.0);
    mint::ProbTable table;
    double total = 0.0;
    for_each_state(sizes, [&](const mint::State& s) {
        const double w = draw(rng);
        table[s] = w;
        total += w;
    });
    for (auto& [s, p] : table) p /= total;
    return mint::JointDistribution(mint::Alphabet(sizes), std::move(table));
}

// Sparse variant: roughly `fill` of the support kept (at least one state).
inline mint::JointDistribution random_sparse_table(const std::vector<std::uint32_t>& sizes,
                                                   std::uint64_t seed, double fill = 0.5) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> draw(1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    mint::ProbTable table;
    double total = 0.0;
    for_each_state(sizes, [&](const mint::State& s) {
        if (coin(rng) > fill) return;
        const double w = draw(rng);
        table[s] = w;
        total += w;
    });
    if (table.empty()) {
        table[mint::State(sizes.size(), 0)] = 1.0;
        total = 1.0;
    }
    for (auto& [s, p] : table) p /= total;
    return mint::JointDistribution(mint::Alphabet(sizes), std::move(table));
}

inline mint::JointDistribution uniform_table(const std::vector<std::uint32_t>& sizes) {
    mint::ProbTable table;
    std::size_t count = 0;
    for_each_state(sizes, [&](const mint::State&) { ++count; });
    for_each_state(sizes, [&](const mint::State& s) { table[s] = 1.0 / double(count); });
    return mint::JointDistribution(mint::Alphabet(sizes), std::move(table));
}

// (X1, X2, Y) with Y = X1 XOR X2, inputs uniform.
inline mint::JointDistribution xor_table() {
    mint::ProbTable t;
    for (std::uint32_t a = 0; a < 2; ++a) {
        for (std::uint32_t b = 0; b < 2; ++b) {
            t[{a, b, a ^ b}] = 0.25;
        }
    }
    return mint::JointDistribution(mint::Alphabet({2, 2, 2}), std::move(t));
}

}  // namespace testutil
