#include "mint/shannon.hpp"

#include <algorithm>
#include <stdexcept>

#include "mint/util.hpp"

namespace mint {

namespace {

bool is_identity_selection(const JointDistribution& dist, std::span<const std::size_t> vars) {
    if (vars.size() != dist.n_variables()) return false;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] != i) return false;
    }
    return true;
}

void check_disjoint(std::span<const std::size_t> a, std::span<const std::size_t> b,
                    const char* what) {
    for (std::size_t x : a) {
        for (std::size_t y : b) {
            if (x == y) throw std::invalid_argument(std::string(what) + ": overlapping index sets");
        }
    }
}

std::vector<std::size_t> concat(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    std::vector<std::size_t> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

double entropy(const JointDistribution& dist, double base) {
    double h = 0.0;
    for (const auto& [state, p] : dist.table()) h -= plogp(p, base);
    return h;
}

double entropy(const JointDistribution& dist, std::span<const std::size_t> variables,
               double base) {
    if (is_identity_selection(dist, variables)) return entropy(dist, base);
    return entropy(marginalize(dist, variables), base);
}

double local_entropy(const JointDistribution& dist, const State& state, double base) {
    const double p = dist.prob(state);
    if (p <= 0.0) throw std::invalid_argument("local_entropy: zero-probability state");
    return -log_base(p, base);
}

double conditional_entropy(const JointDistribution& dist,
                           std::span<const std::size_t> target,
                           std::span<const std::size_t> given, double base) {
    if (target.empty()) throw std::invalid_argument("conditional_entropy: empty target");
    check_disjoint(target, given, "conditional_entropy");
    if (given.empty()) return entropy(dist, target, base);
    return entropy(dist, concat(target, given), base) - entropy(dist, given, base);
}

double kl_divergence(const JointDistribution& p, const JointDistribution& q, double base) {
    if (p.alphabet().sizes != q.alphabet().sizes) {
        throw std::invalid_argument("kl_divergence: alphabets differ");
    }
    double d = 0.0;
    for (const auto& [state, pp] : p.table()) {
        const double qq = q.prob(state);
        if (qq <= 0.0) {
            throw std::invalid_argument("kl_divergence: q has zero mass on p's support");
        }
        d += pp * log_base(pp / qq, base);
    }
    return d;
}

double local_kl(const JointDistribution& p, const JointDistribution& q, const State& state,
                double base) {
    return local_entropy(q, state, base) - local_entropy(p, state, base);
}

double mutual_information(const JointDistribution& dist,
                          std::span<const std::size_t> a,
                          std::span<const std::size_t> b, double base) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mutual_information: empty side");
    check_disjoint(a, b, "mutual_information");
    return entropy(dist, a, base) + entropy(dist, b, base) -
           entropy(dist, concat(a, b), base);
}

double local_mutual_information(const JointDistribution& dist,
                                std::span<const std::size_t> a,
                                std::span<const std::size_t> b, const State& state,
                                double base) {
    check_disjoint(a, b, "local_mutual_information");
    const double p_ab = marginal_probability(dist, concat(a, b), state);
    if (p_ab <= 0.0) {
        throw std::invalid_argument("local_mutual_information: zero-probability state");
    }
    const double p_a = marginal_probability(dist, a, state);
    const double p_b = marginal_probability(dist, b, state);
    return log_base(p_ab / (p_a * p_b), base);
}

double conditional_mutual_information(const JointDistribution& dist,
                                      std::span<const std::size_t> a,
                                      std::span<const std::size_t> b,
                                      std::span<const std::size_t> given, double base) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("conditional_mutual_information: empty side");
    }
    check_disjoint(a, b, "conditional_mutual_information");
    check_disjoint(a, given, "conditional_mutual_information");
    check_disjoint(b, given, "conditional_mutual_information");
    if (given.empty()) return mutual_information(dist, a, b, base);
    return entropy(dist, concat(a, given), base) + entropy(dist, concat(b, given), base) -
           entropy(dist, concat(concat(a, b), given), base) - entropy(dist, given, base);
}

double local_conditional_mutual_information(const JointDistribution& dist,
                                            std::span<const std::size_t> a,
                                            std::span<const std::size_t> b,
                                            std::span<const std::size_t> given,
                                            const State& state, double base) {
    if (given.empty()) return local_mutual_information(dist, a, b, state, base);
    const double p_abg = marginal_probability(dist, concat(concat(a, b), given), state);
    if (p_abg <= 0.0) {
        throw std::invalid_argument("local_conditional_mutual_information: zero-probability state");
    }
    const double p_ag = marginal_probability(dist, concat(a, given), state);
    const double p_bg = marginal_probability(dist, concat(b, given), state);
    const double p_g = marginal_probability(dist, given, state);
    return log_base(p_abg * p_g / (p_ag * p_bg), base);
}

namespace {

// Shared engine for the per-sample local helpers: builds the plugin joint over
// the selected columns once, then evaluates a local functional at every sample.
template <typename Fn>
std::vector<double> locals_over_series(const DiscreteSeries& series,
                                       std::span<const std::size_t> columns, Fn&& local_fn) {
    auto states = aligned_states(series, columns, {});
    std::vector<std::uint32_t> sizes(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) {
        sizes[i] = series.alphabet.sizes[columns[i]];
    }
    JointDistribution dist = from_states(states, Alphabet(std::move(sizes)));
    std::vector<double> out;
    out.reserve(states.size());
    for (const State& s : states) out.push_back(local_fn(dist, s));
    return out;
}

}  // namespace

std::vector<double> local_entropy_series(const DiscreteSeries& series,
                                         std::span<const std::size_t> variables, double base) {
    return locals_over_series(series, variables,
                              [base](const JointDistribution& d, const State& s) {
                                  return local_entropy(d, s, base);
                              });
}

std::vector<double> local_mi_series(const DiscreteSeries& series,
                                    std::span<const std::size_t> a,
                                    std::span<const std::size_t> b, double base) {
    check_disjoint(a, b, "local_mi_series");
    const auto cols = concat(a, b);
    std::vector<std::size_t> ia(a.size()), ib(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ia[i] = i;
    for (std::size_t i = 0; i < b.size(); ++i) ib[i] = a.size() + i;
    return locals_over_series(series, cols,
                              [&, base](const JointDistribution& d, const State& s) {
                                  return local_mutual_information(d, ia, ib, s, base);
                              });
}

std::vector<double> local_cmi_series(const DiscreteSeries& series,
                                     std::span<const std::size_t> a,
                                     std::span<const std::size_t> b,
                                     std::span<const std::size_t> given, double base) {
    check_disjoint(a, b, "local_cmi_series");
    check_disjoint(a, given, "local_cmi_series");
    check_disjoint(b, given, "local_cmi_series");
    auto cols = concat(a, b);
    cols.insert(cols.end(), given.begin(), given.end());
    std::vector<std::size_t> ia(a.size()), ib(b.size()), ig(given.size());
    for (std::size_t i = 0; i < a.size(); ++i) ia[i] = i;
    for (std::size_t i = 0; i < b.size(); ++i) ib[i] = a.size() + i;
    for (std::size_t i = 0; i < given.size(); ++i) ig[i] = a.size() + b.size() + i;
    return locals_over_series(series, cols,
                              [&, base](const JointDistribution& d, const State& s) {
                                  return local_conditional_mutual_information(d, ia, ib, ig, s,
                                                                              base);
                              });
}

}  // namespace mint
