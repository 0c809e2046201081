#include "mint/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "mint/util.hpp"

namespace mint {

namespace {

void check_variable(const DiscreteSeries& series, std::size_t variable) {
    if (variable >= series.width) {
        throw std::invalid_argument("variable index out of range");
    }
}

void check_embedding(std::size_t k, std::size_t tau) {
    if (k == 0) throw std::invalid_argument("history length must be at least 1");
    if (tau == 0) throw std::invalid_argument("embedding delay must be at least 1");
}

// Lags tau, 2*tau, ..., k*tau for one variable, appended to cols/lags.
void push_past(std::vector<std::size_t>& cols, std::vector<std::size_t>& lags,
               std::size_t variable, std::size_t k, std::size_t tau) {
    for (std::size_t i = 1; i <= k; ++i) {
        cols.push_back(variable);
        lags.push_back(i * tau);
    }
}

using Freq = std::unordered_map<State, double, StateHash>;

Freq project_counts(const std::vector<State>& states, std::span<const std::size_t> idx) {
    Freq out;
    out.reserve(states.size());
    const double w = 1.0 / static_cast<double>(states.size());
    State key(idx.size());
    for (const State& s : states) {
        for (std::size_t i = 0; i < idx.size(); ++i) key[i] = s[idx[i]];
        out[key] += w;
    }
    return out;
}

double lookup(const Freq& freq, const State& full, std::span<const std::size_t> idx,
              State& scratch) {
    scratch.resize(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) scratch[i] = full[idx[i]];
    return freq.at(scratch);
}

std::vector<std::size_t> index_range(std::size_t begin, std::size_t count) {
    std::vector<std::size_t> out(count);
    std::iota(out.begin(), out.end(), begin);
    return out;
}

double mean(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

// I(A;B|G) over flattened sample rows; G may be empty, giving plain MI.
// Locals are log(p(a,b,g) p(g) / (p(a,g) p(b,g))); the expectation is their mean.
DynamicMeasure cmi_over_states(const std::vector<State>& states,
                               const std::vector<std::size_t>& a,
                               const std::vector<std::size_t>& b,
                               const std::vector<std::size_t>& g, double base) {
    std::vector<std::size_t> ag(a);
    ag.insert(ag.end(), g.begin(), g.end());
    std::vector<std::size_t> bg(b);
    bg.insert(bg.end(), g.begin(), g.end());
    std::vector<std::size_t> abg(a);
    abg.insert(abg.end(), bg.begin(), bg.end());

    const Freq f_abg = project_counts(states, abg);
    const Freq f_ag = project_counts(states, ag);
    const Freq f_bg = project_counts(states, bg);
    const Freq f_g = g.empty() ? Freq{} : project_counts(states, g);

    const double scale = std::log(base);
    DynamicMeasure out;
    out.locals.reserve(states.size());
    State scratch;
    for (const State& s : states) {
        const double p_abg = lookup(f_abg, s, abg, scratch);
        const double p_ag = lookup(f_ag, s, ag, scratch);
        const double p_bg = lookup(f_bg, s, bg, scratch);
        const double p_g = g.empty() ? 1.0 : lookup(f_g, s, g, scratch);
        out.locals.push_back(std::log(p_abg * p_g / (p_ag * p_bg)) / scale);
    }
    out.expected = mean(out.locals);
    return out;
}

// H(B|A) over flattened sample rows; locals are -log p(b|a).
DynamicMeasure conditional_entropy_over_states(const std::vector<State>& states,
                                               const std::vector<std::size_t>& given,
                                               const std::vector<std::size_t>& target,
                                               double base) {
    std::vector<std::size_t> joint(given);
    joint.insert(joint.end(), target.begin(), target.end());

    const Freq f_joint = project_counts(states, joint);
    const Freq f_given = given.empty() ? Freq{} : project_counts(states, given);

    const double scale = std::log(base);
    DynamicMeasure out;
    out.locals.reserve(states.size());
    State scratch;
    for (const State& s : states) {
        const double p_joint = lookup(f_joint, s, joint, scratch);
        const double p_given = given.empty() ? 1.0 : lookup(f_given, s, given, scratch);
        out.locals.push_back(std::log(p_given / p_joint) / scale);
    }
    out.expected = mean(out.locals);
    return out;
}

}  // namespace

DiscreteSeries embed(const DiscreteSeries& series, std::size_t variable,
                     const EmbeddingSpec& spec) {
    check_variable(series, variable);
    check_embedding(spec.k, spec.tau);
    if (spec.k * spec.tau >= series.length) {
        throw std::invalid_argument("embedding window does not fit the series");
    }

    std::vector<std::size_t> cols;
    std::vector<std::size_t> lags;
    push_past(cols, lags, variable, spec.k, spec.tau);
    const std::vector<State> rows = aligned_states(series, cols, lags);

    std::vector<std::uint32_t> data;
    data.reserve(rows.size() * spec.k);
    for (const State& row : rows) data.insert(data.end(), row.begin(), row.end());
    std::vector<std::uint32_t> sizes(spec.k, series.alphabet.sizes[variable]);
    return DiscreteSeries(rows.size(), spec.k, std::move(data), Alphabet(std::move(sizes)));
}

DynamicMeasure entropy_rate(const DiscreteSeries& series, std::size_t variable, std::size_t k,
                            std::size_t tau, double base) {
    check_variable(series, variable);
    check_embedding(k, tau);

    std::vector<std::size_t> cols{variable};
    std::vector<std::size_t> lags{0};
    push_past(cols, lags, variable, k, tau);
    const std::vector<State> states = aligned_states(series, cols, lags);

    DynamicMeasure out = conditional_entropy_over_states(states, index_range(1, k),
                                                         index_range(0, 1), base);
    out.first_time = k * tau;
    out.k = k;
    out.tau = tau;
    return out;
}

DynamicMeasure active_information_storage(const DiscreteSeries& series, std::size_t variable,
                                          std::size_t k, std::size_t tau, double base) {
    check_variable(series, variable);
    check_embedding(k, tau);

    std::vector<std::size_t> cols{variable};
    std::vector<std::size_t> lags{0};
    push_past(cols, lags, variable, k, tau);
    const std::vector<State> states = aligned_states(series, cols, lags);

    DynamicMeasure out =
        cmi_over_states(states, index_range(1, k), index_range(0, 1), {}, base);
    out.first_time = k * tau;
    out.k = k;
    out.tau = tau;
    return out;
}

DynamicMeasure transfer_entropy(const DiscreteSeries& series, std::size_t source,
                                std::size_t target, std::size_t k, std::size_t l,
                                std::size_t tau, double base) {
    const std::size_t sources[] = {source};
    return conditional_transfer_entropy(series, sources, target, {}, k, l, 1, tau, base);
}

DynamicMeasure conditional_transfer_entropy(const DiscreteSeries& series,
                                            std::span<const std::size_t> sources,
                                            std::size_t target,
                                            std::span<const std::size_t> conditioning,
                                            std::size_t k, std::size_t l, std::size_t r,
                                            std::size_t tau, double base) {
    if (sources.empty()) throw std::invalid_argument("at least one source is required");
    check_variable(series, target);
    check_embedding(k, tau);
    check_embedding(l, tau);
    if (!conditioning.empty()) check_embedding(r, tau);

    std::vector<std::size_t> seen;
    for (std::size_t s : sources) {
        check_variable(series, s);
        if (s == target) throw std::invalid_argument("source must differ from target");
        seen.push_back(s);
    }
    for (std::size_t c : conditioning) {
        check_variable(series, c);
        if (c == target) throw std::invalid_argument("conditioning must differ from target");
        seen.push_back(c);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw std::invalid_argument("source and conditioning selections overlap");
    }

    // Flattened layout: target present, then source pasts, target past, conditioning pasts.
    std::vector<std::size_t> cols{target};
    std::vector<std::size_t> lags{0};
    for (std::size_t s : sources) push_past(cols, lags, s, k, tau);
    push_past(cols, lags, target, l, tau);
    for (std::size_t c : conditioning) push_past(cols, lags, c, r, tau);
    const std::vector<State> states = aligned_states(series, cols, lags);

    const std::size_t n_src = sources.size() * k;
    std::vector<std::size_t> g = index_range(1 + n_src, l);
    const std::vector<std::size_t> cond_idx =
        index_range(1 + n_src + l, conditioning.size() * r);
    g.insert(g.end(), cond_idx.begin(), cond_idx.end());

    DynamicMeasure out = cmi_over_states(states, index_range(1, n_src),
                                         index_range(0, 1), g, base);
    out.first_time = *std::max_element(lags.begin(), lags.end());
    out.k = k;
    out.l = l;
    out.r = conditioning.empty() ? 0 : r;
    out.tau = tau;
    return out;
}

DynamicMeasure global_transfer_entropy(const DiscreteSeries& series, std::size_t source,
                                       std::size_t target,
                                       std::span<const std::size_t> system, std::size_t k,
                                       std::size_t l, std::size_t q, double base) {
    if (system.size() < 3) {
        throw std::invalid_argument("global conditioning needs a system of at least 3 variables");
    }
    std::vector<std::size_t> sorted(system.begin(), system.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("system selection contains duplicates");
    }
    if (!std::binary_search(sorted.begin(), sorted.end(), source) ||
        !std::binary_search(sorted.begin(), sorted.end(), target)) {
        throw std::invalid_argument("system must contain both source and target");
    }

    std::vector<std::size_t> conditioning;
    for (std::size_t v : system) {
        if (v != source && v != target) conditioning.push_back(v);
    }
    const std::size_t sources[] = {source};
    DynamicMeasure out =
        conditional_transfer_entropy(series, sources, target, conditioning, k, l, q, 1, base);
    out.r = q;
    return out;
}

DynamicMeasure excess_entropy(const DiscreteSeries& series,
                              std::span<const std::size_t> past_variables,
                              std::span<const std::size_t> future_variables, std::size_t k,
                              std::size_t j, double base) {
    if (past_variables.empty() || future_variables.empty()) {
        throw std::invalid_argument("past and future selections must be non-empty");
    }
    for (std::size_t v : past_variables) check_variable(series, v);
    for (std::size_t v : future_variables) check_variable(series, v);
    if (k == 0 || j == 0) throw std::invalid_argument("window lengths must be at least 1");

    // Reference time is the last future step, so every offset becomes a lag.
    std::vector<std::size_t> cols;
    std::vector<std::size_t> lags;
    for (std::size_t v : past_variables) {
        for (std::size_t i = 0; i < k; ++i) {
            cols.push_back(v);
            lags.push_back(j + i);
        }
    }
    const std::size_t n_past = past_variables.size() * k;
    for (std::size_t v : future_variables) {
        for (std::size_t i = 0; i < j; ++i) {
            cols.push_back(v);
            lags.push_back(j - 1 - i);
        }
    }
    const std::vector<State> states = aligned_states(series, cols, lags);

    DynamicMeasure out =
        cmi_over_states(states, index_range(0, n_past),
                        index_range(n_past, future_variables.size() * j), {}, base);
    out.first_time = k;  // time index of the first present step in locals[0]
    out.k = k;
    out.l = j;
    return out;
}

}  // namespace mint
