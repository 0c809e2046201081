#include "mint/multivar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "mint/shannon.hpp"
#include "mint/util.hpp"

namespace mint {

namespace {

void check_selection(const JointDistribution& dist, std::span<const std::size_t> vars,
                     std::size_t min_n, const char* what) {
    if (vars.size() < min_n) {
        throw std::invalid_argument(std::string(what) + ": needs at least " +
                                    std::to_string(min_n) + " variables");
    }
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] >= dist.n_variables()) {
            throw std::invalid_argument(std::string(what) + ": index out of range");
        }
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            if (vars[i] == vars[j]) {
                throw std::invalid_argument(std::string(what) + ": duplicate index");
            }
        }
    }
}

std::vector<std::size_t> without(std::span<const std::size_t> vars, std::size_t drop) {
    std::vector<std::size_t> out;
    out.reserve(vars.size() - 1);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i != drop) out.push_back(vars[i]);
    }
    return out;
}

std::vector<std::size_t> mask_to_vars(std::span<const std::size_t> vars, std::uint32_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (mask & (1u << i)) out.push_back(vars[i]);
    }
    return out;
}

// h values needed by every local measure over the selection.
struct LocalParts {
    double h_joint;            // h(x) over the selection
    double sum_h_single;       // sum_i h(x_i)
    double sum_h_leave_one;    // sum_i h(x_{-i})
};

LocalParts local_parts(const JointDistribution& dist, std::span<const std::size_t> vars,
                       const State& state, double base) {
    LocalParts out{};
    const double pj = marginal_probability(dist, vars, state);
    if (pj <= 0.0) throw std::invalid_argument("local measure: zero-probability state");
    out.h_joint = -log_base(pj, base);
    out.sum_h_single = 0.0;
    out.sum_h_leave_one = 0.0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const std::size_t one[] = {vars[i]};
        out.sum_h_single -= log_base(marginal_probability(dist, one, state), base);
        out.sum_h_leave_one -= log_base(marginal_probability(dist, without(vars, i), state), base);
    }
    return out;
}

// Enumerates k-combinations of 0..n-1, invoking fn(indices).
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) break;
            if (i == 0) return;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

double total_correlation(const JointDistribution& dist,
                         std::span<const std::size_t> variables, double base) {
    check_selection(dist, variables, 2, "total_correlation");
    double sum = 0.0;
    for (std::size_t v : variables) {
        const std::size_t one[] = {v};
        sum += entropy(dist, one, base);
    }
    return sum - entropy(dist, variables, base);
}

double local_total_correlation(const JointDistribution& dist,
                               std::span<const std::size_t> variables, const State& state,
                               double base) {
    check_selection(dist, variables, 2, "local_total_correlation");
    const auto p = local_parts(dist, variables, state, base);
    return p.sum_h_single - p.h_joint;
}

double dual_total_correlation(const JointDistribution& dist,
                              std::span<const std::size_t> variables, double base) {
    check_selection(dist, variables, 2, "dual_total_correlation");
    const double h = entropy(dist, variables, base);
    const double n = static_cast<double>(variables.size());
    double sum_leave_one = 0.0;
    for (std::size_t i = 0; i < variables.size(); ++i) {
        sum_leave_one += entropy(dist, without(variables, i), base);
    }
    return (1.0 - n) * h + sum_leave_one;
}

double local_dual_total_correlation(const JointDistribution& dist,
                                    std::span<const std::size_t> variables, const State& state,
                                    double base) {
    check_selection(dist, variables, 2, "local_dual_total_correlation");
    const auto p = local_parts(dist, variables, state, base);
    const double n = static_cast<double>(variables.size());
    return (1.0 - n) * p.h_joint + p.sum_h_leave_one;
}

double co_information(const JointDistribution& dist,
                      std::span<const std::size_t> variables, double base) {
    check_selection(dist, variables, 2, "co_information");
    if (variables.size() > 20) {
        throw std::invalid_argument("co_information: refusing more than 20 variables");
    }
    const std::uint32_t full = (1u << variables.size()) - 1u;
    double c = 0.0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const double h = entropy(dist, mask_to_vars(variables, mask), base);
        c -= (std::popcount(mask) % 2 == 0) ? h : -h;
    }
    return c;
}

double local_co_information(const JointDistribution& dist,
                            std::span<const std::size_t> variables, const State& state,
                            double base) {
    check_selection(dist, variables, 2, "local_co_information");
    if (variables.size() > 20) {
        throw std::invalid_argument("local_co_information: refusing more than 20 variables");
    }
    const std::uint32_t full = (1u << variables.size()) - 1u;
    double c = 0.0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const auto sub = mask_to_vars(variables, mask);
        const double p = marginal_probability(dist, sub, state);
        if (p <= 0.0) throw std::invalid_argument("local_co_information: zero-probability state");
        const double h = -log_base(p, base);
        c -= (std::popcount(mask) % 2 == 0) ? h : -h;
    }
    return c;
}

double o_information(const JointDistribution& dist,
                     std::span<const std::size_t> variables, double base) {
    check_selection(dist, variables, 3, "o_information");
    return total_correlation(dist, variables, base) -
           dual_total_correlation(dist, variables, base);
}

double local_o_information(const JointDistribution& dist,
                           std::span<const std::size_t> variables, const State& state,
                           double base) {
    check_selection(dist, variables, 3, "local_o_information");
    const auto p = local_parts(dist, variables, state, base);
    const double n = static_cast<double>(variables.size());
    const double tc = p.sum_h_single - p.h_joint;
    const double dtc = (1.0 - n) * p.h_joint + p.sum_h_leave_one;
    return tc - dtc;
}

double s_information(const JointDistribution& dist,
                     std::span<const std::size_t> variables, double base) {
    check_selection(dist, variables, 2, "s_information");
    return total_correlation(dist, variables, base) +
           dual_total_correlation(dist, variables, base);
}

double local_s_information(const JointDistribution& dist,
                           std::span<const std::size_t> variables, const State& state,
                           double base) {
    check_selection(dist, variables, 2, "local_s_information");
    const auto p = local_parts(dist, variables, state, base);
    const double n = static_cast<double>(variables.size());
    const double tc = p.sum_h_single - p.h_joint;
    const double dtc = (1.0 - n) * p.h_joint + p.sum_h_leave_one;
    return tc + dtc;
}

double tse_complexity(const JointDistribution& dist,
                      std::span<const std::size_t> variables, double base) {
    check_selection(dist, variables, 2, "tse_complexity");
    const std::size_t n = variables.size();
    if (n > 16) throw std::invalid_argument("tse_complexity: exact mode capped at 16 variables");
    const double h_all = entropy(dist, variables, base);
    double total = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double weight = (n % 2 == 0 && k == n / 2) ? 0.5 : 1.0;
        double acc = 0.0;
        std::size_t count = 0;
        for_each_combination(n, k, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> part, rest;
            part.reserve(k);
            rest.reserve(n - k);
            std::size_t pos = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (pos < k && idx[pos] == i) {
                    part.push_back(variables[i]);
                    ++pos;
                } else {
                    rest.push_back(variables[i]);
                }
            }
            acc += entropy(dist, part, base) + entropy(dist, rest, base) - h_all;
            ++count;
        });
        total += weight * acc / static_cast<double>(count);
    }
    return total;
}

TseEstimate tse_complexity_sampled(const JointDistribution& dist,
                                   std::span<const std::size_t> variables,
                                   std::size_t samples_per_scale, std::uint64_t seed,
                                   double base) {
    check_selection(dist, variables, 2, "tse_complexity_sampled");
    if (samples_per_scale == 0) {
        throw std::invalid_argument("tse_complexity_sampled: needs at least one sample per scale");
    }
    const std::size_t n = variables.size();
    const double h_all = entropy(dist, variables, base);
    std::vector<std::size_t> pool(variables.begin(), variables.end());

    TseEstimate out;
    out.samples_per_scale = samples_per_scale;
    out.seed = seed;
    out.exact = false;
    double variance_acc = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double weight = (n % 2 == 0 && k == n / 2) ? 0.5 : 1.0;
        std::mt19937_64 rng(derive_seed(seed, k));
        double mean = 0.0, m2 = 0.0;
        for (std::size_t s = 0; s < samples_per_scale; ++s) {
            // Partial Fisher-Yates: first k entries become the sampled subset.
            for (std::size_t i = 0; i < k; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, n - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            std::vector<std::size_t> part(pool.begin(), pool.begin() + k);
            std::vector<std::size_t> rest(pool.begin() + k, pool.end());
            const double mi =
                entropy(dist, part, base) + entropy(dist, rest, base) - h_all;
            const double delta = mi - mean;
            mean += delta / static_cast<double>(s + 1);
            m2 += delta * (mi - mean);
        }
        out.value += weight * mean;
        if (samples_per_scale > 1) {
            const double var = m2 / static_cast<double>(samples_per_scale - 1);
            variance_acc += weight * weight * var / static_cast<double>(samples_per_scale);
        }
    }
    out.standard_error = std::sqrt(variance_acc);
    return out;
}

double tse_complexity_subset_tc_form(const JointDistribution& dist,
                                     std::span<const std::size_t> variables, double base) {
    check_selection(dist, variables, 2, "tse_complexity_subset_tc_form");
    const std::size_t n = variables.size();
    if (n > 16) {
        throw std::invalid_argument("tse_complexity_subset_tc_form: capped at 16 variables");
    }
    const double tc_all = total_correlation(dist, variables, base);
    double total = 0.0;
    for (std::size_t k = 2; k < n; ++k) {
        double acc = 0.0;
        std::size_t count = 0;
        for_each_combination(n, k, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> part(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) part[i] = variables[idx[i]];
            acc += total_correlation(dist, part, base);
            ++count;
        });
        total += (static_cast<double>(k) / static_cast<double>(n)) * tc_all -
                 acc / static_cast<double>(count);
    }
    // k = 1 subsets have zero TC; k = n contributes TC - TC = 0.
    total += (1.0 / static_cast<double>(n)) * tc_all;
    return total;
}

double description_complexity(const JointDistribution& dist,
                              std::span<const std::size_t> variables, double base) {
    check_selection(dist, variables, 2, "description_complexity");
    const double tc = total_correlation(dist, variables, base);
    const double n = static_cast<double>(variables.size());
    double mean_leave_one = 0.0;
    for (std::size_t i = 0; i < variables.size(); ++i) {
        const auto rest = without(variables, i);
        mean_leave_one += rest.size() >= 2 ? total_correlation(dist, rest, base) : 0.0;
    }
    mean_leave_one /= n;
    return tc - tc / n - mean_leave_one;
}

ComplexityReport complexity_report(const JointDistribution& dist,
                                   std::span<const std::size_t> variables, double base,
                                   std::optional<std::size_t> tse_samples,
                                   std::uint64_t seed) {
    check_selection(dist, variables, 2, "complexity_report");
    ComplexityReport out;
    out.tc = total_correlation(dist, variables, base);
    out.dtc = dual_total_correlation(dist, variables, base);
    out.o_info = out.tc - out.dtc;
    out.s_info = out.tc + out.dtc;
    if (tse_samples.has_value()) {
        out.tse = tse_complexity_sampled(dist, variables, *tse_samples, seed, base);
    } else if (variables.size() <= 16) {
        TseEstimate e;
        e.value = tse_complexity(dist, variables, base);
        e.exact = true;
        out.tse = e;
    }
    return out;
}

double whole_minus_sum_phi(const JointDistribution& dist,
                           const std::vector<std::vector<std::size_t>>& past_groups,
                           const std::vector<std::vector<std::size_t>>& future_groups,
                           const std::vector<std::vector<std::size_t>>& partition,
                           double base) {
    if (past_groups.size() != future_groups.size() || past_groups.empty()) {
        throw std::invalid_argument("whole_minus_sum_phi: past/future group mismatch");
    }
    if (partition.size() != 2) {
        throw std::invalid_argument("whole_minus_sum_phi: partition must have two parts");
    }
    const std::size_t n = past_groups.size();
    std::vector<bool> seen(n, false);
    for (const auto& part : partition) {
        if (part.empty()) throw std::invalid_argument("whole_minus_sum_phi: empty part");
        for (std::size_t e : part) {
            if (e >= n || seen[e]) {
                throw std::invalid_argument("whole_minus_sum_phi: partition must cover each element once");
            }
            seen[e] = true;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("whole_minus_sum_phi: partition must cover each element once");
    }

    auto collect = [&](const std::vector<std::size_t>& elements,
                       const std::vector<std::vector<std::size_t>>& groups) {
        std::vector<std::size_t> cols;
        for (std::size_t e : elements) {
            cols.insert(cols.end(), groups[e].begin(), groups[e].end());
        }
        return cols;
    };

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const double whole =
            mutual_information(dist, collect(all, past_groups), collect(all, future_groups), base);
    double parts = 0.0;
    for (const auto& part : partition) {
        parts += mutual_information(dist, collect(part, past_groups),
                                    collect(part, future_groups), base);
    }
    return whole - parts;
}

double whole_minus_sum_phi(const DiscreteSeries& series,
                           std::span<const std::size_t> variables,
                           const std::vector<std::vector<std::size_t>>& partition,
                           std::size_t k, double base) {
    if (k == 0) throw std::invalid_argument("whole_minus_sum_phi: history length must be positive");
    if (variables.size() < 2) {
        throw std::invalid_argument("whole_minus_sum_phi: needs at least 2 variables");
    }
    const std::size_t n = variables.size();
    std::vector<std::size_t> cols, lags;
    std::vector<std::vector<std::size_t>> past_groups(n), future_groups(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t lag = 1; lag <= k; ++lag) {
            past_groups[i].push_back(cols.size());
            cols.push_back(variables[i]);
            lags.push_back(lag);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        future_groups[i].push_back(cols.size());
        cols.push_back(variables[i]);
        lags.push_back(0);
    }
    const auto dist = from_series(series, cols, lags);
    return whole_minus_sum_phi(dist, past_groups, future_groups, partition, base);
}

namespace {

template <typename Fn>
std::vector<double> selection_locals(const DiscreteSeries& series,
                                     std::span<const std::size_t> variables, double base,
                                     Fn&& fn) {
    auto states = aligned_states(series, variables, {});
    std::vector<std::uint32_t> sizes(variables.size());
    for (std::size_t i = 0; i < variables.size(); ++i) {
        sizes[i] = series.alphabet.sizes[variables[i]];
    }
    JointDistribution dist = from_states(states, Alphabet(std::move(sizes)));
    const std::size_t n = variables.size();

    // Cache every marginal the local formulas touch, keyed by projected state.
    using Cache = std::unordered_map<State, double, StateHash>;
    std::vector<Cache> singles(n), leave_one(n);
    for (const auto& [s, p] : dist.table()) {
        for (std::size_t i = 0; i < n; ++i) {
            singles[i][State{s[i]}] += p;
            State rest;
            rest.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) rest.push_back(s[j]);
            }
            leave_one[i][std::move(rest)] += p;
        }
    }

    std::vector<double> out;
    out.reserve(states.size());
    for (const State& s : states) {
        LocalParts parts{};
        parts.h_joint = -log_base(dist.prob(s), base);
        for (std::size_t i = 0; i < n; ++i) {
            parts.sum_h_single -= log_base(singles[i].at(State{s[i]}), base);
            State rest;
            rest.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) rest.push_back(s[j]);
            }
            parts.sum_h_leave_one -= log_base(leave_one[i].at(rest), base);
        }
        out.push_back(fn(parts, static_cast<double>(n)));
    }
    return out;
}

}  // namespace

std::vector<double> local_tc_series(const DiscreteSeries& series,
                                    std::span<const std::size_t> variables, double base) {
    return selection_locals(series, variables, base, [](const LocalParts& p, double) {
        return p.sum_h_single - p.h_joint;
    });
}

std::vector<double> local_dtc_series(const DiscreteSeries& series,
                                     std::span<const std::size_t> variables, double base) {
    return selection_locals(series, variables, base, [](const LocalParts& p, double n) {
        return (1.0 - n) * p.h_joint + p.sum_h_leave_one;
    });
}

std::vector<double> local_o_series(const DiscreteSeries& series,
                                   std::span<const std::size_t> variables, double base) {
    return selection_locals(series, variables, base, [](const LocalParts& p, double n) {
        const double tc = p.sum_h_single - p.h_joint;
        const double dtc = (1.0 - n) * p.h_joint + p.sum_h_leave_one;
        return tc - dtc;
    });
}

std::vector<double> local_s_series(const DiscreteSeries& series,
                                   std::span<const std::size_t> variables, double base) {
    return selection_locals(series, variables, base, [](const LocalParts& p, double n) {
        const double tc = p.sum_h_single - p.h_joint;
        const double dtc = (1.0 - n) * p.h_joint + p.sum_h_leave_one;
        return tc + dtc;
    });
}

}  // namespace mint
