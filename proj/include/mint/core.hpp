#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mint {

using Symbol = std::uint32_t;
using State = std::vector<Symbol>;

struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Symbol v : s) {
            h ^= v + 0x9e3779b9u + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using ProbTable = std::unordered_map<State, double, StateHash>;

// Per-variable cardinalities of a discrete state space.
struct Alphabet {
    std::vector<std::uint32_t> sizes;

    Alphabet() = default;
    explicit Alphabet(std::vector<std::uint32_t> s);

    std::size_t n_variables() const noexcept { return sizes.size(); }
};

// Sparse probability table over a multivariate discrete state space.
// States absent from the table have probability zero.
class JointDistribution {
public:
    JointDistribution(Alphabet alphabet, ProbTable probabilities);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t n_variables() const noexcept { return alphabet_.sizes.size(); }
    double prob(const State& s) const;
    const ProbTable& table() const noexcept { return table_; }

private:
    Alphabet alphabet_;
    ProbTable table_;
};

// Time runs down the rows; each column is one variable.
struct DiscreteSeries {
    std::size_t length = 0;
    std::size_t width = 0;
    std::vector<Symbol> data;  // row-major, length x width
    Alphabet alphabet;

    DiscreteSeries() = default;
    DiscreteSeries(std::size_t t, std::size_t n, std::vector<Symbol> d, Alphabet a);

    Symbol at(std::size_t t, std::size_t v) const { return data[t * width + v]; }
};

struct ContinuousSeries {
    std::size_t length = 0;
    std::size_t width = 0;
    std::vector<double> data;  // row-major, length x width

    ContinuousSeries() = default;
    ContinuousSeries(std::size_t t, std::size_t n, std::vector<double> d);

    double at(std::size_t t, std::size_t v) const { return data[t * width + v]; }
};

// Lag convention: lag L for variable v pairs x_v(t - L) with reference time t.
// The first max(lags) rows are dropped so every column draws from the same rows.
std::vector<State> aligned_states(const DiscreteSeries& series,
                                  std::span<const std::size_t> variables,
                                  std::span<const std::size_t> lags);

JointDistribution from_states(const std::vector<State>& states,
                              Alphabet alphabet);

JointDistribution from_series(const DiscreteSeries& series,
                              std::span<const std::size_t> variables,
                              std::span<const std::size_t> lags = {});

JointDistribution marginalize(const JointDistribution& dist,
                              std::span<const std::size_t> keep);

JointDistribution condition(const JointDistribution& dist,
                            const std::vector<std::pair<std::size_t, Symbol>>& evidence);

JointDistribution product(const JointDistribution& a, const JointDistribution& b);

// Relabels each group of variables as one macro-variable whose alphabet
// enumerates the group's observed joint states. Entropy-preserving.
JointDistribution coarse_grain(const JointDistribution& dist,
                               const std::vector<std::vector<std::size_t>>& grouping);

double expected_value(const JointDistribution& dist,
                      const std::function<double(const State&)>& valuation);

State project_state(const State& state, std::span<const std::size_t> variables);

// P(X_vars = state_vars) marginalized on the fly; empty selection gives 1.
double marginal_probability(const JointDistribution& dist,
                            std::span<const std::size_t> variables, const State& state);

}  // namespace mint
