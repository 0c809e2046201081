#include "mint/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace mint {

namespace {

constexpr double kNormalizeTolerance = 1e-6;

void check_indices(std::span<const std::size_t> vars, std::size_t n, const char* what) {
    for (std::size_t v : vars) {
        if (v >= n) {
            throw std::invalid_argument(std::string(what) + ": variable index out of range");
        }
    }
}

}  // namespace

Alphabet::Alphabet(std::vector<std::uint32_t> s) : sizes(std::move(s)) {
    for (std::uint32_t c : sizes) {
        if (c < 1) throw std::invalid_argument("Alphabet: every cardinality must be >= 1");
    }
}

JointDistribution::JointDistribution(Alphabet alphabet, ProbTable probabilities)
    : alphabet_(std::move(alphabet)), table_(std::move(probabilities)) {
    double sum = 0.0;
    for (auto it = table_.begin(); it != table_.end();) {
        const auto& [state, p] = *it;
        if (state.size() != alphabet_.sizes.size()) {
            throw std::invalid_argument("JointDistribution: state width does not match alphabet");
        }
        for (std::size_t v = 0; v < state.size(); ++v) {
            if (state[v] >= alphabet_.sizes[v]) {
                throw std::invalid_argument("JointDistribution: symbol outside alphabet");
            }
        }
        if (p < 0.0) throw std::invalid_argument("JointDistribution: negative probability");
        if (p == 0.0) {
            it = table_.erase(it);
            continue;
        }
        sum += p;
        ++it;
    }
    if (std::abs(sum - 1.0) > kNormalizeTolerance) {
        throw std::invalid_argument("JointDistribution: probabilities sum to " +
                                    std::to_string(sum) + ", not 1");
    }
    if (sum != 1.0) {
        for (auto& [state, p] : table_) p /= sum;
    }
}

double JointDistribution::prob(const State& s) const {
    auto it = table_.find(s);
    return it == table_.end() ? 0.0 : it->second;
}

DiscreteSeries::DiscreteSeries(std::size_t t, std::size_t n, std::vector<Symbol> d, Alphabet a)
    : length(t), width(n), data(std::move(d)), alphabet(std::move(a)) {
    if (length < 1 || width < 1) throw std::invalid_argument("DiscreteSeries: empty series");
    if (data.size() != length * width) {
        throw std::invalid_argument("DiscreteSeries: data size does not match length x width");
    }
    if (alphabet.sizes.size() != width) {
        throw std::invalid_argument("DiscreteSeries: alphabet width does not match series");
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i] >= alphabet.sizes[i % width]) {
            throw std::invalid_argument("DiscreteSeries: symbol outside alphabet");
        }
    }
}

ContinuousSeries::ContinuousSeries(std::size_t t, std::size_t n, std::vector<double> d)
    : length(t), width(n), data(std::move(d)) {
    if (data.size() != length * width) {
        throw std::invalid_argument("ContinuousSeries: data size does not match length x width");
    }
    for (double x : data) {
        if (!std::isfinite(x)) throw std::invalid_argument("ContinuousSeries: non-finite entry");
    }
}

std::vector<State> aligned_states(const DiscreteSeries& series,
                                  std::span<const std::size_t> variables,
                                  std::span<const std::size_t> lags) {
    if (variables.empty()) throw std::invalid_argument("aligned_states: empty selection");
    if (!lags.empty() && lags.size() != variables.size()) {
        throw std::invalid_argument("aligned_states: lags must match variables");
    }
    check_indices(variables, series.width, "aligned_states");

    std::size_t max_lag = 0;
    for (std::size_t l : lags) max_lag = std::max(max_lag, l);
    if (max_lag >= series.length) {
        throw std::invalid_argument("aligned_states: lag leaves no aligned samples");
    }

    std::vector<State> rows;
    rows.reserve(series.length - max_lag);
    for (std::size_t t = max_lag; t < series.length; ++t) {
        State s(variables.size());
        for (std::size_t i = 0; i < variables.size(); ++i) {
            const std::size_t lag = lags.empty() ? 0 : lags[i];
            s[i] = series.at(t - lag, variables[i]);
        }
        rows.push_back(std::move(s));
    }
    return rows;
}

JointDistribution from_states(const std::vector<State>& states, Alphabet alphabet) {
    if (states.empty()) throw std::invalid_argument("from_states: no samples");
    ProbTable counts;
    const double w = 1.0 / static_cast<double>(states.size());
    for (const State& s : states) counts[s] += w;
    return JointDistribution(std::move(alphabet), std::move(counts));
}

JointDistribution from_series(const DiscreteSeries& series,
                              std::span<const std::size_t> variables,
                              std::span<const std::size_t> lags) {
    auto states = aligned_states(series, variables, lags);
    std::vector<std::uint32_t> sizes(variables.size());
    for (std::size_t i = 0; i < variables.size(); ++i) {
        sizes[i] = series.alphabet.sizes[variables[i]];
    }
    return from_states(states, Alphabet(std::move(sizes)));
}

JointDistribution marginalize(const JointDistribution& dist,
                              std::span<const std::size_t> keep) {
    if (keep.empty()) throw std::invalid_argument("marginalize: empty keep list");
    check_indices(keep, dist.n_variables(), "marginalize");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = i + 1; j < keep.size(); ++j) {
            if (keep[i] == keep[j]) throw std::invalid_argument("marginalize: duplicate index");
        }
    }

    ProbTable out;
    for (const auto& [state, p] : dist.table()) {
        State s(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) s[i] = state[keep[i]];
        out[std::move(s)] += p;
    }
    std::vector<std::uint32_t> sizes(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) sizes[i] = dist.alphabet().sizes[keep[i]];
    return JointDistribution(Alphabet(std::move(sizes)), std::move(out));
}

JointDistribution condition(const JointDistribution& dist,
                            const std::vector<std::pair<std::size_t, Symbol>>& evidence) {
    if (evidence.empty()) throw std::invalid_argument("condition: empty evidence");
    std::vector<bool> fixed(dist.n_variables(), false);
    for (const auto& [v, sym] : evidence) {
        if (v >= dist.n_variables()) throw std::invalid_argument("condition: index out of range");
        if (fixed[v]) throw std::invalid_argument("condition: duplicate evidence variable");
        if (sym >= dist.alphabet().sizes[v]) {
            throw std::invalid_argument("condition: symbol outside alphabet");
        }
        fixed[v] = true;
    }

    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < dist.n_variables(); ++v) {
        if (!fixed[v]) rest.push_back(v);
    }
    if (rest.empty()) throw std::invalid_argument("condition: no free variables left");

    double mass = 0.0;
    ProbTable out;
    for (const auto& [state, p] : dist.table()) {
        bool match = true;
        for (const auto& [v, sym] : evidence) {
            if (state[v] != sym) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        mass += p;
        State s(rest.size());
        for (std::size_t i = 0; i < rest.size(); ++i) s[i] = state[rest[i]];
        out[std::move(s)] += p;
    }
    if (mass <= 0.0) throw std::invalid_argument("condition: zero-probability evidence");
    for (auto& [state, p] : out) p /= mass;

    std::vector<std::uint32_t> sizes(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) sizes[i] = dist.alphabet().sizes[rest[i]];
    return JointDistribution(Alphabet(std::move(sizes)), std::move(out));
}

JointDistribution product(const JointDistribution& a, const JointDistribution& b) {
    ProbTable out;
    out.reserve(a.table().size() * b.table().size());
    for (const auto& [sa, pa] : a.table()) {
        for (const auto& [sb, pb] : b.table()) {
            State s = sa;
            s.insert(s.end(), sb.begin(), sb.end());
            out.emplace(std::move(s), pa * pb);
        }
    }
    std::vector<std::uint32_t> sizes = a.alphabet().sizes;
    sizes.insert(sizes.end(), b.alphabet().sizes.begin(), b.alphabet().sizes.end());
    return JointDistribution(Alphabet(std::move(sizes)), std::move(out));
}

JointDistribution coarse_grain(const JointDistribution& dist,
                               const std::vector<std::vector<std::size_t>>& grouping) {
    std::vector<bool> seen(dist.n_variables(), false);
    std::size_t covered = 0;
    for (const auto& group : grouping) {
        if (group.empty()) throw std::invalid_argument("coarse_grain: empty group");
        for (std::size_t v : group) {
            if (v >= dist.n_variables() || seen[v]) {
                throw std::invalid_argument("coarse_grain: grouping is not a partition");
            }
            seen[v] = true;
            ++covered;
        }
    }
    if (covered != dist.n_variables()) {
        throw std::invalid_argument("coarse_grain: grouping is not a partition");
    }

    // Enumerate each group's observed sub-states in lexicographic order.
    std::vector<std::map<State, Symbol>> labels(grouping.size());
    for (std::size_t g = 0; g < grouping.size(); ++g) {
        for (const auto& [state, p] : dist.table()) {
            State sub(grouping[g].size());
            for (std::size_t i = 0; i < grouping[g].size(); ++i) sub[i] = state[grouping[g][i]];
            labels[g].emplace(std::move(sub), 0);
        }
        Symbol next = 0;
        for (auto& [sub, idx] : labels[g]) idx = next++;
    }

    ProbTable out;
    for (const auto& [state, p] : dist.table()) {
        State macro(grouping.size());
        for (std::size_t g = 0; g < grouping.size(); ++g) {
            State sub(grouping[g].size());
            for (std::size_t i = 0; i < grouping[g].size(); ++i) sub[i] = state[grouping[g][i]];
            macro[g] = labels[g].at(sub);
        }
        out[std::move(macro)] += p;
    }
    std::vector<std::uint32_t> sizes(grouping.size());
    for (std::size_t g = 0; g < grouping.size(); ++g) {
        sizes[g] = static_cast<std::uint32_t>(labels[g].size());
    }
    return JointDistribution(Alphabet(std::move(sizes)), std::move(out));
}

double expected_value(const JointDistribution& dist,
                      const std::function<double(const State&)>& valuation) {
    double acc = 0.0;
    for (const auto& [state, p] : dist.table()) acc += p * valuation(state);
    return acc;
}

State project_state(const State& state, std::span<const std::size_t> variables) {
    State s(variables.size());
    for (std::size_t i = 0; i < variables.size(); ++i) s[i] = state[variables[i]];
    return s;
}

double marginal_probability(const JointDistribution& dist,
                            std::span<const std::size_t> variables, const State& state) {
    if (variables.empty()) return 1.0;
    check_indices(variables, dist.n_variables(), "marginal_probability");
    if (state.size() != dist.n_variables()) {
        throw std::invalid_argument("marginal_probability: state width mismatch");
    }
    double p = 0.0;
    for (const auto& [s, q] : dist.table()) {
        bool match = true;
        for (std::size_t v : variables) {
            if (s[v] != state[v]) {
                match = false;
                break;
            }
        }
        if (match) p += q;
    }
    return p;
}

}  // namespace mint
