#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mint/core.hpp"

namespace mint {

// Sorted variable indices naming one source; antichains hold incomparable sources
// in canonical order (by size, then lexicographically).
using SourceSet = std::vector<std::size_t>;

struct Antichain {
    std::vector<SourceSet> sources;
};

bool operator==(const Antichain& a, const Antichain& b);

// Sorts and validates; throws if any source is empty, has repeats, or is a
// subset of another.
Antichain canonical_antichain(std::vector<SourceSet> sources);

// alpha <= beta iff every source of beta contains some source of alpha.
bool antichain_leq(const Antichain& alpha, const Antichain& beta);

struct RedundancyLattice {
    std::size_t n = 0;
    std::vector<Antichain> atoms;  // over predictor labels 0..n-1, deterministic order
    std::vector<std::vector<std::size_t>> strictly_below;  // indices of atoms < atoms[i]
    std::size_t bottom = 0;  // all singletons
    std::size_t top = 0;     // the single full set

    std::size_t index_of(const Antichain& atom) const;  // throws if absent
};

// Cached; n in [1, 4]. Atom counts: 1, 4, 18, 166.
const RedundancyLattice& redundancy_lattice(std::size_t n);

// partial[i] = values[i] - sum of partial over atoms strictly below atom i.
std::vector<double> moebius_inversion(const RedundancyLattice& lattice,
                                      std::span<const double> values);

enum class RedundancyFunction { WilliamsBeer, Mmi, PointwiseMinimum, SharedExclusion };

// Sum over target states of P(y) * min over sources of D(P(A|y) || P(A)).
double redundancy_wb(const JointDistribution& dist, const Antichain& antichain,
                     std::span<const std::size_t> target, double base = 2.0);

// Minimum over sources of I(A; target).
double redundancy_mmi(const JointDistribution& dist, const Antichain& antichain,
                      std::span<const std::size_t> target, double base = 2.0);

// Informative and misinformative surprisal components at one realization;
// the local redundancy is their difference. Each component is non-negative.
struct PmComponents {
    double informative = 0.0;
    double misinformative = 0.0;
};
PmComponents redundancy_pm(const JointDistribution& dist, const Antichain& antichain,
                           std::span<const std::size_t> target, const State& state,
                           double base = 2.0);

// log P(y | union of source events) - log P(y) at one realization; can be negative.
double redundancy_sx(const JointDistribution& dist, const Antichain& antichain,
                     std::span<const std::size_t> target, const State& state,
                     double base = 2.0);

// Local functions are averaged over the joint support; expected ones pass through.
double expected_redundancy(const JointDistribution& dist, const Antichain& antichain,
                           std::span<const std::size_t> target, RedundancyFunction function,
                           double base = 2.0);

struct PidResult {
    std::vector<Antichain> atoms;   // sources as distribution variable indices
    std::vector<double> redundancy;
    std::vector<double> partial;
    RedundancyFunction function;
    std::vector<std::size_t> target;
};

// Predictors are disjoint groups of distribution variables; 1 to 4 groups.
PidResult pid_decompose(const JointDistribution& dist,
                        std::span<const SourceSet> predictors,
                        std::span<const std::size_t> target, RedundancyFunction function,
                        double base = 2.0);

enum class EntropyFunction { MinSurprisal, SharedExclusion, CoInformation };

struct PedResult {
    std::vector<Antichain> atoms;
    std::vector<double> redundancy;
    std::vector<double> partial;
    EntropyFunction function;
};

// Partial entropy atoms over 2 to 4 variables; atoms sum to H of the selection.
// MinSurprisal and SharedExclusion redundancies are non-negative; CoInformation
// clips its local value at zero yet can still yield negative atoms.
PedResult ped_decompose(const JointDistribution& dist,
                        std::span<const std::size_t> variables, EntropyFunction function,
                        double base = 2.0);

enum class PhiFunction { Mmi, TauSx };

// Vertex of the two-variable product lattice; antichains use labels 0 and 1.
struct PhiAtom {
    Antichain past;
    Antichain future;
};

struct PhiidResult {
    std::vector<PhiAtom> atoms;  // 16 vertices, deterministic order
    std::vector<double> redundancy;
    std::vector<double> partial;
    PhiFunction function;
};

// Decomposes I(past_a, past_b ; future_a, future_b) over the product lattice.
PhiidResult phiid_decompose(const JointDistribution& dist, const SourceSet& past_a,
                            const SourceSet& past_b, const SourceSet& future_a,
                            const SourceSet& future_b, PhiFunction function,
                            double base = 2.0);

// Lag-k joint decomposition for exactly two series variables.
PhiidResult phiid_decompose(const DiscreteSeries& series,
                            std::span<const std::size_t> past_variables,
                            std::span<const std::size_t> future_variables, std::size_t k,
                            PhiFunction function, double base = 2.0);

enum class DynamicClass {
    Storage,
    Transfer,
    Copy,
    Erasure,
    UpwardCausation,
    DownwardCausation,
    CausalDecoupling,
    Other
};

DynamicClass classify_dynamics(const PhiAtom& atom);
std::string dynamic_class_name(DynamicClass label);

// Unique(source past) and Synergy(source past, target past) about the target's
// present; the two sum to the transfer entropy.
struct TeDecomposition {
    double state_independent = 0.0;
    double state_dependent = 0.0;
};
TeDecomposition te_decompose(const DiscreteSeries& series, std::size_t source,
                             std::size_t target, std::size_t k, std::size_t l,
                             RedundancyFunction function, double base = 2.0);

// Synergy of the two source pasts about the target's present state.
double information_modification(const DiscreteSeries& series,
                                std::span<const std::size_t> sources, std::size_t target,
                                std::size_t k, RedundancyFunction function,
                                double base = 2.0);

// Whole-minus-sum integration plus the persistent-redundancy atom, which makes
// the result non-negative.
double phi_r(const DiscreteSeries& series, std::size_t first, std::size_t second,
             std::size_t k, PhiFunction function, double base = 2.0);

}  // namespace mint
