#include "mint/pid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "mint/multivar.hpp"
#include "mint/shannon.hpp"

namespace mint {

namespace {

bool is_subset(const SourceSet& a, const SourceSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool source_less(const SourceSet& a, const SourceSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

void check_antichain_scope(const Antichain& antichain, std::size_t n_vars,
                           std::span<const std::size_t> target) {
    for (const auto& source : antichain.sources) {
        for (std::size_t v : source) {
            if (v >= n_vars) throw std::invalid_argument("source index out of range");
        }
        for (std::size_t t : target) {
            if (std::binary_search(source.begin(), source.end(), t)) {
                throw std::invalid_argument("target overlaps a source");
            }
        }
    }
    if (target.empty()) throw std::invalid_argument("target selection is empty");
    for (std::size_t t : target) {
        if (t >= n_vars) throw std::invalid_argument("target index out of range");
    }
}

using Freq = std::unordered_map<State, double, StateHash>;

Freq project_table(const ProbTable& table, const SourceSet& cols) {
    Freq out;
    for (const auto& [state, p] : table) {
        out[project_state(state, cols)] += p;
    }
    return out;
}

bool matches_on(const State& candidate, const State& ref, const SourceSet& cols) {
    for (std::size_t c : cols) {
        if (candidate[c] != ref[c]) return false;
    }
    return true;
}

SourceSet concat_sorted(const SourceSet& a, std::span<const std::size_t> b) {
    SourceSet out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// Antichain families over non-empty subsets of {0..n-1}, DFS order with subsets
// ranked by size then value. The in-family order is already canonical.
std::vector<std::vector<std::uint32_t>> enumerate_antichain_masks(std::size_t n) {
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t m = 1; m < (1u << n); ++m) subsets.push_back(m);
    std::sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = std::popcount(a);
        int pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });

    std::vector<std::vector<std::uint32_t>> families;
    std::vector<std::uint32_t> current;
    auto comparable = [](std::uint32_t a, std::uint32_t b) {
        return (a & ~b) == 0 || (b & ~a) == 0;
    };
    std::function<void(std::size_t)> dfs = [&](std::size_t start) {
        for (std::size_t i = start; i < subsets.size(); ++i) {
            const std::uint32_t m = subsets[i];
            bool ok = true;
            for (std::uint32_t c : current) {
                if (comparable(c, m)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            current.push_back(m);
            families.push_back(current);
            dfs(i + 1);
            current.pop_back();
        }
    };
    dfs(0);
    return families;
}

SourceSet mask_to_set(std::uint32_t mask) {
    SourceSet out;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1u) out.push_back(i);
    }
    return out;
}

RedundancyLattice build_lattice(std::size_t n) {
    RedundancyLattice lattice;
    lattice.n = n;
    for (const auto& family : enumerate_antichain_masks(n)) {
        Antichain atom;
        for (std::uint32_t mask : family) atom.sources.push_back(mask_to_set(mask));
        lattice.atoms.push_back(std::move(atom));
    }

    const std::size_t count = lattice.atoms.size();
    lattice.strictly_below.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            if (i != j && antichain_leq(lattice.atoms[j], lattice.atoms[i])) {
                lattice.strictly_below[i].push_back(j);
            }
        }
    }

    Antichain bottom;
    for (std::size_t i = 0; i < n; ++i) bottom.sources.push_back({i});
    Antichain top;
    SourceSet full(n);
    std::iota(full.begin(), full.end(), std::size_t{0});
    top.sources.push_back(std::move(full));
    lattice.bottom = lattice.index_of(bottom);
    lattice.top = lattice.index_of(top);
    return lattice;
}

// Expected specific-information redundancy: sum over target states of the
// smallest P(y)-weighted D(P(A|y) || P(A)) across sources.
double wb_value(const JointDistribution& dist, const Antichain& antichain,
                std::span<const std::size_t> target, double base) {
    const Freq p_y = project_table(dist.table(), SourceSet(target.begin(), target.end()));

    Freq best;
    bool first = true;
    for (const auto& source : antichain.sources) {
        const Freq p_a = project_table(dist.table(), source);
        const SourceSet ay = concat_sorted(source, target);
        const Freq p_ay = project_table(dist.table(), ay);

        Freq score;
        for (const auto& [state, p] : p_ay) {
            State a(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(source.size()));
            State y(state.begin() + static_cast<std::ptrdiff_t>(source.size()), state.end());
            score[y] += p * (std::log(p) - std::log(p_a.at(a)) - std::log(p_y.at(y)));
        }
        if (first) {
            best = std::move(score);
            first = false;
        } else {
            for (auto& [y, v] : best) v = std::min(v, score.at(y));
        }
    }

    double total = 0.0;
    for (const auto& [y, v] : best) total += v;
    return total / std::log(base);
}

double mmi_value(const JointDistribution& dist, const Antichain& antichain,
                 std::span<const std::size_t> target, double base) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& source : antichain.sources) {
        best = std::min(best, mutual_information(dist, source, target, base));
    }
    return best;
}

PmComponents pm_local(const JointDistribution& dist, const Antichain& antichain,
                      std::span<const std::size_t> target, const State& state, double base) {
    const double p_y = marginal_probability(dist, target, state);
    if (p_y <= 0.0) throw std::invalid_argument("zero-probability target state");

    double informative = std::numeric_limits<double>::infinity();
    double misinformative = std::numeric_limits<double>::infinity();
    for (const auto& source : antichain.sources) {
        const double p_a = marginal_probability(dist, source, state);
        if (p_a <= 0.0) throw std::invalid_argument("zero-probability source state");
        const SourceSet ay = concat_sorted(source, target);
        const double p_ay = marginal_probability(dist, ay, state);
        if (p_ay <= 0.0) throw std::invalid_argument("state outside the joint support");
        informative = std::min(informative, -std::log(p_a));
        misinformative = std::min(misinformative, std::log(p_y) - std::log(p_ay));
    }
    const double scale = std::log(base);
    return PmComponents{informative / scale, misinformative / scale};
}

double sx_local(const JointDistribution& dist, const Antichain& antichain,
                std::span<const std::size_t> target, const State& state, double base) {
    double p_y = 0.0;
    double p_u = 0.0;
    double p_uy = 0.0;
    const SourceSet target_cols(target.begin(), target.end());
    for (const auto& [candidate, p] : dist.table()) {
        bool in_union = false;
        for (const auto& source : antichain.sources) {
            if (matches_on(candidate, state, source)) {
                in_union = true;
                break;
            }
        }
        const bool in_target = matches_on(candidate, state, target_cols);
        if (in_union) p_u += p;
        if (in_target) p_y += p;
        if (in_union && in_target) p_uy += p;
    }
    if (p_y <= 0.0) throw std::invalid_argument("zero-probability target state");
    if (p_u <= 0.0) throw std::invalid_argument("zero-probability source union");
    if (p_uy <= 0.0) throw std::invalid_argument("state outside the joint support");
    return (std::log(p_uy) - std::log(p_u) - std::log(p_y)) / std::log(base);
}

}  // namespace

bool operator==(const Antichain& a, const Antichain& b) { return a.sources == b.sources; }

Antichain canonical_antichain(std::vector<SourceSet> sources) {
    if (sources.empty()) throw std::invalid_argument("antichain must have at least one source");
    for (auto& source : sources) {
        if (source.empty()) throw std::invalid_argument("source set is empty");
        std::sort(source.begin(), source.end());
        if (std::adjacent_find(source.begin(), source.end()) != source.end()) {
            throw std::invalid_argument("source set has repeated indices");
        }
    }
    for (std::size_t i = 0; i < sources.size(); ++i) {
        for (std::size_t j = 0; j < sources.size(); ++j) {
            if (i != j && is_subset(sources[i], sources[j])) {
                throw std::invalid_argument("antichain sources must be incomparable");
            }
        }
    }
    std::sort(sources.begin(), sources.end(), source_less);
    return Antichain{std::move(sources)};
}

bool antichain_leq(const Antichain& alpha, const Antichain& beta) {
    for (const auto& b : beta.sources) {
        bool covered = false;
        for (const auto& a : alpha.sources) {
            if (is_subset(a, b)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

std::size_t RedundancyLattice::index_of(const Antichain& atom) const {
    const Antichain canon = canonical_antichain(atom.sources);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i] == canon) return i;
    }
    throw std::invalid_argument("antichain is not an atom of this lattice");
}

const RedundancyLattice& redundancy_lattice(std::size_t n) {
    if (n < 1 || n > 4) {
        throw std::invalid_argument("redundancy lattice supports 1 to 4 predictors");
    }
    static const std::vector<RedundancyLattice> cache = [] {
        std::vector<RedundancyLattice> all;
        for (std::size_t i = 1; i <= 4; ++i) all.push_back(build_lattice(i));
        return all;
    }();
    return cache[n - 1];
}

std::vector<double> moebius_inversion(const RedundancyLattice& lattice,
                                      std::span<const double> values) {
    if (values.size() != lattice.atoms.size()) {
        throw std::invalid_argument("one value per lattice atom is required");
    }
    std::vector<std::size_t> order(lattice.atoms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lattice.strictly_below[a].size() < lattice.strictly_below[b].size();
    });

    std::vector<double> partial(values.size(), 0.0);
    for (std::size_t i : order) {
        double below = 0.0;
        for (std::size_t j : lattice.strictly_below[i]) below += partial[j];
        partial[i] = values[i] - below;
    }
    return partial;
}

double redundancy_wb(const JointDistribution& dist, const Antichain& antichain,
                     std::span<const std::size_t> target, double base) {
    const Antichain canon = canonical_antichain(antichain.sources);
    check_antichain_scope(canon, dist.n_variables(), target);
    return wb_value(dist, canon, target, base);
}

double redundancy_mmi(const JointDistribution& dist, const Antichain& antichain,
                      std::span<const std::size_t> target, double base) {
    const Antichain canon = canonical_antichain(antichain.sources);
    check_antichain_scope(canon, dist.n_variables(), target);
    return mmi_value(dist, canon, target, base);
}

PmComponents redundancy_pm(const JointDistribution& dist, const Antichain& antichain,
                           std::span<const std::size_t> target, const State& state,
                           double base) {
    const Antichain canon = canonical_antichain(antichain.sources);
    check_antichain_scope(canon, dist.n_variables(), target);
    if (state.size() != dist.n_variables()) {
        throw std::invalid_argument("state width must match the distribution");
    }
    return pm_local(dist, canon, target, state, base);
}

double redundancy_sx(const JointDistribution& dist, const Antichain& antichain,
                     std::span<const std::size_t> target, const State& state, double base) {
    const Antichain canon = canonical_antichain(antichain.sources);
    check_antichain_scope(canon, dist.n_variables(), target);
    if (state.size() != dist.n_variables()) {
        throw std::invalid_argument("state width must match the distribution");
    }
    return sx_local(dist, canon, target, state, base);
}

double expected_redundancy(const JointDistribution& dist, const Antichain& antichain,
                           std::span<const std::size_t> target, RedundancyFunction function,
                           double base) {
    const Antichain canon = canonical_antichain(antichain.sources);
    check_antichain_scope(canon, dist.n_variables(), target);
    switch (function) {
        case RedundancyFunction::WilliamsBeer:
            return wb_value(dist, canon, target, base);
        case RedundancyFunction::Mmi:
            return mmi_value(dist, canon, target, base);
        case RedundancyFunction::PointwiseMinimum: {
            double total = 0.0;
            for (const auto& [state, p] : dist.table()) {
                const PmComponents parts = pm_local(dist, canon, target, state, base);
                total += p * (parts.informative - parts.misinformative);
            }
            return total;
        }
        case RedundancyFunction::SharedExclusion: {
            double total = 0.0;
            for (const auto& [state, p] : dist.table()) {
                total += p * sx_local(dist, canon, target, state, base);
            }
            return total;
        }
    }
    throw std::invalid_argument("unknown redundancy function");
}

PidResult pid_decompose(const JointDistribution& dist,
                        std::span<const SourceSet> predictors,
                        std::span<const std::size_t> target, RedundancyFunction function,
                        double base) {
    if (predictors.empty() || predictors.size() > 4) {
        throw std::invalid_argument("between 1 and 4 predictor groups are supported");
    }
    std::vector<SourceSet> groups;
    std::vector<std::size_t> seen(target.begin(), target.end());
    for (const auto& group : predictors) {
        if (group.empty()) throw std::invalid_argument("predictor group is empty");
        SourceSet sorted(group);
        std::sort(sorted.begin(), sorted.end());
        seen.insert(seen.end(), sorted.begin(), sorted.end());
        groups.push_back(std::move(sorted));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw std::invalid_argument("predictor groups and target must be disjoint");
    }

    const RedundancyLattice& lattice = redundancy_lattice(groups.size());
    PidResult result;
    result.function = function;
    result.target.assign(target.begin(), target.end());
    result.redundancy.reserve(lattice.atoms.size());
    for (const Antichain& atom : lattice.atoms) {
        std::vector<SourceSet> concrete;
        for (const SourceSet& labels : atom.sources) {
            SourceSet merged;
            for (std::size_t label : labels) {
                merged.insert(merged.end(), groups[label].begin(), groups[label].end());
            }
            std::sort(merged.begin(), merged.end());
            concrete.push_back(std::move(merged));
        }
        Antichain mapped{std::move(concrete)};
        result.redundancy.push_back(expected_redundancy(dist, mapped, target, function, base));
        result.atoms.push_back(std::move(mapped));
    }
    result.partial = moebius_inversion(lattice, result.redundancy);
    return result;
}

namespace {

// Joint distribution over the macro variables of one antichain: each source
// set is read as a single composite symbol.
struct MacroSpace {
    std::vector<std::unordered_map<State, std::uint32_t, StateHash>> index;
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> strides;
    std::vector<double> joint;

    std::size_t cell(const std::vector<std::uint32_t>& symbols) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < symbols.size(); ++i) c += symbols[i] * strides[i];
        return c;
    }
};

MacroSpace build_macro_space(const JointDistribution& dist,
                             const std::vector<SourceSet>& sources) {
    MacroSpace space;
    space.index.resize(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        std::vector<State> observed;
        for (const auto& [state, p] : dist.table()) {
            observed.push_back(project_state(state, sources[i]));
        }
        std::sort(observed.begin(), observed.end());
        observed.erase(std::unique(observed.begin(), observed.end()), observed.end());
        for (std::uint32_t s = 0; s < observed.size(); ++s) space.index[i][observed[s]] = s;
        space.sizes.push_back(observed.size());
    }

    std::size_t total = 1;
    space.strides.resize(sources.size());
    for (std::size_t i = sources.size(); i-- > 0;) {
        space.strides[i] = total;
        total *= space.sizes[i];
        if (total > (std::size_t{1} << 22)) {
            throw std::invalid_argument("macro state space too large for this method");
        }
    }

    space.joint.assign(total, 0.0);
    std::vector<std::uint32_t> symbols(sources.size());
    for (const auto& [state, p] : dist.table()) {
        for (std::size_t i = 0; i < sources.size(); ++i) {
            symbols[i] = space.index[i].at(project_state(state, sources[i]));
        }
        space.joint[space.cell(symbols)] += p;
    }
    return space;
}

// Iterative proportional fitting towards the maximum-entropy distribution
// with the same pairwise macro marginals.
std::vector<double> maxent_pairwise(const MacroSpace& space) {
    const std::size_t k = space.sizes.size();
    const std::size_t total = space.joint.size();
    if (k == 1) return space.joint;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    }

    auto pair_marginal = [&](const std::vector<double>& q, std::size_t a, std::size_t b) {
        std::vector<double> m(space.sizes[a] * space.sizes[b], 0.0);
        for (std::size_t cell = 0; cell < total; ++cell) {
            const std::size_t sa = (cell / space.strides[a]) % space.sizes[a];
            const std::size_t sb = (cell / space.strides[b]) % space.sizes[b];
            m[sa * space.sizes[b] + sb] += q[cell];
        }
        return m;
    };

    std::vector<std::vector<double>> targets;
    for (const auto& [a, b] : pairs) targets.push_back(pair_marginal(space.joint, a, b));

    std::vector<double> q(total, 1.0 / static_cast<double>(total));
    const double tol = 1e-10;
    for (std::size_t sweep = 0; sweep < 10000; ++sweep) {
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const auto [a, b] = pairs[pi];
            const std::vector<double> current = pair_marginal(q, a, b);
            for (std::size_t cell = 0; cell < total; ++cell) {
                const std::size_t sa = (cell / space.strides[a]) % space.sizes[a];
                const std::size_t sb = (cell / space.strides[b]) % space.sizes[b];
                const double want = targets[pi][sa * space.sizes[b] + sb];
                const double have = current[sa * space.sizes[b] + sb];
                if (want <= 0.0) {
                    q[cell] = 0.0;
                } else if (have <= 0.0) {
                    throw std::runtime_error("pairwise fitting lost a required marginal");
                } else {
                    q[cell] *= want / have;
                }
            }
        }

        double err = 0.0;
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const auto [a, b] = pairs[pi];
            const std::vector<double> current = pair_marginal(q, a, b);
            for (std::size_t c = 0; c < current.size(); ++c) {
                err = std::max(err, std::abs(current[c] - targets[pi][c]));
            }
        }
        if (err <= tol) return q;
    }
    throw std::runtime_error("pairwise fitting did not converge");
}

// Local co-information of the antichain's macro symbols under the pairwise
// maximum-entropy surrogate, clipped at zero.
double cs_value(const JointDistribution& dist, const std::vector<SourceSet>& sources,
                double base) {
    const MacroSpace space = build_macro_space(dist, sources);
    const std::vector<double> q = maxent_pairwise(space);
    const std::size_t k = sources.size();

    // Marginal of q over every non-empty subset of macro variables.
    std::vector<std::vector<double>> marginals(std::size_t{1} << k);
    std::vector<std::vector<std::size_t>> substrides(std::size_t{1} << k);
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::size_t size = 1;
        std::vector<std::size_t> strides;
        for (std::size_t i = k; i-- > 0;) {
            if (mask & (1u << i)) {
                strides.push_back(size);
                size *= space.sizes[i];
            }
        }
        std::reverse(strides.begin(), strides.end());
        std::vector<double> m(size, 0.0);
        for (std::size_t cell = 0; cell < q.size(); ++cell) {
            std::size_t sub = 0;
            std::size_t si = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (1u << i)) {
                    sub += ((cell / space.strides[i]) % space.sizes[i]) * strides[si++];
                }
            }
            m[sub] += q[cell];
        }
        marginals[mask] = std::move(m);
        substrides[mask] = std::move(strides);
    }

    double total = 0.0;
    std::vector<std::uint32_t> symbols(k);
    for (const auto& [state, p] : dist.table()) {
        for (std::size_t i = 0; i < k; ++i) {
            symbols[i] = space.index[i].at(project_state(state, sources[i]));
        }
        double co = 0.0;
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::size_t sub = 0;
            std::size_t si = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (1u << i)) sub += symbols[i] * substrides[mask][si++];
            }
            const double qm = marginals[mask][sub];
            if (qm <= 0.0) throw std::runtime_error("surrogate marginal vanished on the support");
            const double sign = (std::popcount(mask) % 2 == 0) ? -1.0 : 1.0;
            co -= sign * std::log(qm);
        }
        total += p * std::max(co, 0.0);
    }
    return total / std::log(base);
}

double min_surprisal_value(const JointDistribution& dist,
                           const std::vector<SourceSet>& sources, double base) {
    std::vector<Freq> marginals;
    for (const auto& source : sources) marginals.push_back(project_table(dist.table(), source));

    double total = 0.0;
    for (const auto& [state, p] : dist.table()) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < sources.size(); ++i) {
            best = std::min(best, -std::log(marginals[i].at(project_state(state, sources[i]))));
        }
        total += p * best;
    }
    return total / std::log(base);
}

double union_surprisal_value(const JointDistribution& dist,
                             const std::vector<SourceSet>& sources, double base) {
    double total = 0.0;
    for (const auto& [state, p] : dist.table()) {
        double p_u = 0.0;
        for (const auto& [candidate, pc] : dist.table()) {
            for (const auto& source : sources) {
                if (matches_on(candidate, state, source)) {
                    p_u += pc;
                    break;
                }
            }
        }
        total += p * -std::log(p_u);
    }
    return total / std::log(base);
}

}  // namespace

PedResult ped_decompose(const JointDistribution& dist, std::span<const std::size_t> variables,
                        EntropyFunction function, double base) {
    if (variables.size() < 2 || variables.size() > 4) {
        throw std::invalid_argument("between 2 and 4 variables are supported");
    }
    std::vector<std::size_t> vars(variables.begin(), variables.end());
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
        throw std::invalid_argument("variables must be distinct");
    }
    for (std::size_t v : vars) {
        if (v >= dist.n_variables()) throw std::invalid_argument("variable index out of range");
    }
    vars.assign(variables.begin(), variables.end());

    const RedundancyLattice& lattice = redundancy_lattice(vars.size());
    PedResult result;
    result.function = function;
    result.redundancy.reserve(lattice.atoms.size());
    for (const Antichain& atom : lattice.atoms) {
        std::vector<SourceSet> concrete;
        for (const SourceSet& labels : atom.sources) {
            SourceSet mapped;
            for (std::size_t label : labels) mapped.push_back(vars[label]);
            std::sort(mapped.begin(), mapped.end());
            concrete.push_back(std::move(mapped));
        }

        double value = 0.0;
        switch (function) {
            case EntropyFunction::MinSurprisal:
                value = min_surprisal_value(dist, concrete, base);
                break;
            case EntropyFunction::SharedExclusion:
                value = union_surprisal_value(dist, concrete, base);
                break;
            case EntropyFunction::CoInformation:
                value = cs_value(dist, concrete, base);
                break;
        }
        result.redundancy.push_back(value);
        result.atoms.push_back(Antichain{std::move(concrete)});
    }
    result.partial = moebius_inversion(lattice, result.redundancy);
    return result;
}

namespace {

std::vector<SourceSet> concrete_groups(const Antichain& labels,
                                       const std::vector<SourceSet>& groups) {
    std::vector<SourceSet> out;
    for (const SourceSet& labelset : labels.sources) {
        SourceSet merged;
        for (std::size_t label : labelset) {
            merged.insert(merged.end(), groups[label].begin(), groups[label].end());
        }
        std::sort(merged.begin(), merged.end());
        out.push_back(std::move(merged));
    }
    return out;
}

}  // namespace

PhiidResult phiid_decompose(const JointDistribution& dist, const SourceSet& past_a,
                            const SourceSet& past_b, const SourceSet& future_a,
                            const SourceSet& future_b, PhiFunction function, double base) {
    std::vector<SourceSet> pasts{past_a, past_b};
    std::vector<SourceSet> futures{future_a, future_b};
    std::vector<std::size_t> seen;
    for (auto* side : {&pasts, &futures}) {
        for (auto& group : *side) {
            if (group.empty()) throw std::invalid_argument("variable group is empty");
            std::sort(group.begin(), group.end());
            for (std::size_t v : group) {
                if (v >= dist.n_variables()) {
                    throw std::invalid_argument("variable index out of range");
                }
            }
            seen.insert(seen.end(), group.begin(), group.end());
        }
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw std::invalid_argument("variable groups must be disjoint");
    }

    const RedundancyLattice& lattice = redundancy_lattice(2);
    const std::size_t n_atoms = lattice.atoms.size();

    PhiidResult result;
    result.function = function;
    result.redundancy.assign(n_atoms * n_atoms, 0.0);
    for (std::size_t i = 0; i < n_atoms; ++i) {
        for (std::size_t j = 0; j < n_atoms; ++j) {
            result.atoms.push_back(PhiAtom{lattice.atoms[i], lattice.atoms[j]});
        }
    }

    if (function == PhiFunction::Mmi) {
        for (std::size_t i = 0; i < n_atoms; ++i) {
            const auto alpha = concrete_groups(lattice.atoms[i], pasts);
            for (std::size_t j = 0; j < n_atoms; ++j) {
                const auto beta = concrete_groups(lattice.atoms[j], futures);
                double best = std::numeric_limits<double>::infinity();
                for (const auto& a : alpha) {
                    for (const auto& b : beta) {
                        best = std::min(best, mutual_information(dist, a, b, base));
                    }
                }
                result.redundancy[i * n_atoms + j] = best;
            }
        }
    } else {
        // Union events per atom: bottom covers either group, top needs both.
        const double scale = std::log(base);
        auto in_event = [&](std::size_t atom, bool ma, bool mb) {
            const Antichain& ac = lattice.atoms[atom];
            if (ac.sources.size() == 2) return ma || mb;
            if (ac.sources[0].size() == 2) return ma && mb;
            return ac.sources[0][0] == 0 ? ma : mb;
        };
        for (const auto& [state, p] : dist.table()) {
            std::array<double, 4> p_alpha{};
            std::array<double, 4> p_beta{};
            std::array<double, 16> p_both{};
            for (const auto& [candidate, pc] : dist.table()) {
                const bool past_ma = matches_on(candidate, state, pasts[0]);
                const bool past_mb = matches_on(candidate, state, pasts[1]);
                const bool fut_ma = matches_on(candidate, state, futures[0]);
                const bool fut_mb = matches_on(candidate, state, futures[1]);
                for (std::size_t i = 0; i < n_atoms; ++i) {
                    const bool in_alpha = in_event(i, past_ma, past_mb);
                    if (!in_alpha) continue;
                    p_alpha[i] += pc;
                    for (std::size_t j = 0; j < n_atoms; ++j) {
                        if (in_event(j, fut_ma, fut_mb)) p_both[i * n_atoms + j] += pc;
                    }
                }
                for (std::size_t j = 0; j < n_atoms; ++j) {
                    if (in_event(j, fut_ma, fut_mb)) p_beta[j] += pc;
                }
            }
            for (std::size_t i = 0; i < n_atoms; ++i) {
                for (std::size_t j = 0; j < n_atoms; ++j) {
                    const double joint = p_both[i * n_atoms + j];
                    if (p_alpha[i] <= 0.0 || p_beta[j] <= 0.0 || joint <= 0.0) {
                        throw std::runtime_error("event probability vanished on the support");
                    }
                    result.redundancy[i * n_atoms + j] +=
                        p * (std::log(joint) - std::log(p_alpha[i]) - std::log(p_beta[j])) /
                        scale;
                }
            }
        }
    }

    // Moebius over the product order: (i,j) <= (i',j') componentwise.
    std::vector<std::vector<std::size_t>> below(n_atoms * n_atoms);
    for (std::size_t i = 0; i < n_atoms; ++i) {
        for (std::size_t j = 0; j < n_atoms; ++j) {
            for (std::size_t a = 0; a < n_atoms; ++a) {
                for (std::size_t b = 0; b < n_atoms; ++b) {
                    if (a == i && b == j) continue;
                    if (antichain_leq(lattice.atoms[a], lattice.atoms[i]) &&
                        antichain_leq(lattice.atoms[b], lattice.atoms[j])) {
                        below[i * n_atoms + j].push_back(a * n_atoms + b);
                    }
                }
            }
        }
    }
    std::vector<std::size_t> order(n_atoms * n_atoms);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return below[a].size() < below[b].size();
    });
    result.partial.assign(n_atoms * n_atoms, 0.0);
    for (std::size_t v : order) {
        double sum = 0.0;
        for (std::size_t u : below[v]) sum += result.partial[u];
        result.partial[v] = result.redundancy[v] - sum;
    }
    return result;
}

PhiidResult phiid_decompose(const DiscreteSeries& series,
                            std::span<const std::size_t> past_variables,
                            std::span<const std::size_t> future_variables, std::size_t k,
                            PhiFunction function, double base) {
    if (past_variables.size() != 2 || future_variables.size() != 2) {
        throw std::invalid_argument("exactly two past and two future variables are required");
    }
    if (past_variables[0] == past_variables[1] ||
        future_variables[0] == future_variables[1]) {
        throw std::invalid_argument("variables must be distinct");
    }
    if (k < 1) throw std::invalid_argument("history length must be at least 1");

    std::vector<std::size_t> cols;
    std::vector<std::size_t> lags;
    for (std::size_t side = 0; side < 2; ++side) {
        for (std::size_t lag = 1; lag <= k; ++lag) {
            cols.push_back(past_variables[side]);
            lags.push_back(lag);
        }
    }
    cols.push_back(future_variables[0]);
    lags.push_back(0);
    cols.push_back(future_variables[1]);
    lags.push_back(0);

    const JointDistribution dist = from_series(series, cols, lags);
    SourceSet past_a(k), past_b(k);
    std::iota(past_a.begin(), past_a.end(), std::size_t{0});
    std::iota(past_b.begin(), past_b.end(), k);
    return phiid_decompose(dist, past_a, past_b, SourceSet{2 * k}, SourceSet{2 * k + 1},
                           function, base);
}

DynamicClass classify_dynamics(const PhiAtom& atom) {
    const RedundancyLattice& lattice = redundancy_lattice(2);
    const std::size_t past = lattice.index_of(atom.past);
    const std::size_t future = lattice.index_of(atom.future);

    auto kind = [&](std::size_t idx) -> int {
        if (idx == lattice.bottom) return 0;
        if (idx == lattice.top) return 3;
        const Antichain& a = lattice.atoms[idx];
        return a.sources[0][0] == 0 ? 1 : 2;
    };
    const int p = kind(past);
    const int f = kind(future);

    if (p == 1 || p == 2) {
        if (f == p) return DynamicClass::Storage;
        if (f == 1 || f == 2) return DynamicClass::Transfer;
        if (f == 0) return DynamicClass::Copy;
        return DynamicClass::UpwardCausation;
    }
    if (p == 0) {
        if (f == 0) return DynamicClass::Storage;
        if (f == 3) return DynamicClass::UpwardCausation;
        return DynamicClass::Erasure;
    }
    if (f == 3) return DynamicClass::CausalDecoupling;
    return DynamicClass::DownwardCausation;
}

std::string dynamic_class_name(DynamicClass klass) {
    switch (klass) {
        case DynamicClass::Storage: return "storage";
        case DynamicClass::Transfer: return "transfer";
        case DynamicClass::Copy: return "copy";
        case DynamicClass::Erasure: return "erasure";
        case DynamicClass::UpwardCausation: return "upward-causation";
        case DynamicClass::DownwardCausation: return "downward-causation";
        case DynamicClass::CausalDecoupling: return "causal-decoupling";
        case DynamicClass::Other: return "other";
    }
    throw std::invalid_argument("unknown dynamic class");
}

TeDecomposition te_decompose(const DiscreteSeries& series, std::size_t source,
                             std::size_t target, std::size_t k, std::size_t l,
                             RedundancyFunction function, double base) {
    if (source == target) throw std::invalid_argument("source and target must differ");
    if (k < 1 || l < 1) throw std::invalid_argument("history lengths must be at least 1");

    std::vector<std::size_t> cols;
    std::vector<std::size_t> lags;
    for (std::size_t lag = 1; lag <= k; ++lag) {
        cols.push_back(source);
        lags.push_back(lag);
    }
    for (std::size_t lag = 1; lag <= l; ++lag) {
        cols.push_back(target);
        lags.push_back(lag);
    }
    cols.push_back(target);
    lags.push_back(0);

    const JointDistribution dist = from_series(series, cols, lags);
    SourceSet source_past(k), target_past(l);
    std::iota(source_past.begin(), source_past.end(), std::size_t{0});
    std::iota(target_past.begin(), target_past.end(), k);
    const std::vector<SourceSet> groups{source_past, target_past};
    const std::vector<std::size_t> target_col{k + l};

    const PidResult pid = pid_decompose(dist, groups, target_col, function, base);
    const RedundancyLattice& lattice = redundancy_lattice(2);
    const std::size_t unique_idx = lattice.index_of(canonical_antichain({{0}}));
    return TeDecomposition{pid.partial[unique_idx], pid.partial[lattice.top]};
}

double information_modification(const DiscreteSeries& series,
                                std::span<const std::size_t> sources, std::size_t target,
                                std::size_t k, RedundancyFunction function, double base) {
    if (sources.size() != 2) throw std::invalid_argument("exactly two sources are required");
    if (sources[0] == sources[1]) throw std::invalid_argument("sources must be distinct");
    if (k < 1) throw std::invalid_argument("history length must be at least 1");

    std::vector<std::size_t> cols;
    std::vector<std::size_t> lags;
    for (std::size_t s : sources) {
        for (std::size_t lag = 1; lag <= k; ++lag) {
            cols.push_back(s);
            lags.push_back(lag);
        }
    }
    cols.push_back(target);
    lags.push_back(0);

    const JointDistribution dist = from_series(series, cols, lags);
    SourceSet first(k), second(k);
    std::iota(first.begin(), first.end(), std::size_t{0});
    std::iota(second.begin(), second.end(), k);
    const std::vector<SourceSet> groups{first, second};
    const std::vector<std::size_t> target_col{2 * k};

    const PidResult pid = pid_decompose(dist, groups, target_col, function, base);
    return pid.partial[redundancy_lattice(2).top];
}

double phi_r(const DiscreteSeries& series, std::size_t first, std::size_t second,
             std::size_t k, PhiFunction function, double base) {
    if (first == second) throw std::invalid_argument("variables must be distinct");
    const std::vector<std::size_t> vars{first, second};
    const std::vector<std::vector<std::size_t>> partition{{0}, {1}};
    const double phi = whole_minus_sum_phi(series, vars, partition, k, base);

    const PhiidResult dec = phiid_decompose(series, vars, vars, k, function, base);
    const RedundancyLattice& lattice = redundancy_lattice(2);
    const std::size_t n_atoms = lattice.atoms.size();
    return phi + dec.partial[lattice.bottom * n_atoms + lattice.bottom];
}

}  // namespace mint
