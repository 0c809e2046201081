#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mint/core.hpp"

namespace mint {

// All selections require N >= 2 distinct variable indices into dist.
// Local variants take a full state of dist (every variable, selected or not).

double total_correlation(const JointDistribution& dist,
                         std::span<const std::size_t> variables, double base = 2.0);
double local_total_correlation(const JointDistribution& dist,
                               std::span<const std::size_t> variables, const State& state,
                               double base = 2.0);

double dual_total_correlation(const JointDistribution& dist,
                              std::span<const std::size_t> variables, double base = 2.0);
double local_dual_total_correlation(const JointDistribution& dist,
                                    std::span<const std::size_t> variables, const State& state,
                                    double base = 2.0);

// Alternating entropy sum over all non-empty subsets. Exponential cost; N > 20 refused.
double co_information(const JointDistribution& dist,
                      std::span<const std::size_t> variables, double base = 2.0);
double local_co_information(const JointDistribution& dist,
                            std::span<const std::size_t> variables, const State& state,
                            double base = 2.0);

// TC - DTC. Requires N >= 3; sign separates redundancy- from synergy-dominance.
double o_information(const JointDistribution& dist,
                     std::span<const std::size_t> variables, double base = 2.0);
double local_o_information(const JointDistribution& dist,
                           std::span<const std::size_t> variables, const State& state,
                           double base = 2.0);

// TC + DTC = sum_i I(X_i; rest).
double s_information(const JointDistribution& dist,
                     std::span<const std::size_t> variables, double base = 2.0);
double local_s_information(const JointDistribution& dist,
                           std::span<const std::size_t> variables, const State& state,
                           double base = 2.0);

// Sum over scales of the average subset/complement mutual information, with the
// even-N middle scale weighted 1/2 so each bipartition counts exactly once.
// Exact mode enumerates every subset; refused for N > 16.
double tse_complexity(const JointDistribution& dist,
                      std::span<const std::size_t> variables, double base = 2.0);

struct TseEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    std::size_t samples_per_scale = 0;
    std::uint64_t seed = 0;
    bool exact = true;
};

TseEstimate tse_complexity_sampled(const JointDistribution& dist,
                                   std::span<const std::size_t> variables,
                                   std::size_t samples_per_scale, std::uint64_t seed,
                                   double base = 2.0);

// Equivalent formulation through subset total correlations:
// sum_k [(k/N) TC(X) - <TC over k-subsets>]. Used to cross-check tse_complexity.
double tse_complexity_subset_tc_form(const JointDistribution& dist,
                                     std::span<const std::size_t> variables,
                                     double base = 2.0);

// TC - TC/N - mean_i TC(X without i). Satisfies DTC = N * C.
double description_complexity(const JointDistribution& dist,
                              std::span<const std::size_t> variables, double base = 2.0);

struct ComplexityReport {
    double tc = 0.0;
    double dtc = 0.0;
    double o_info = 0.0;
    double s_info = 0.0;
    std::optional<TseEstimate> tse;
};

// tse_samples empty: exact TSE when N <= 16, omitted otherwise.
ComplexityReport complexity_report(const JointDistribution& dist,
                                   std::span<const std::size_t> variables, double base = 2.0,
                                   std::optional<std::size_t> tse_samples = {},
                                   std::uint64_t seed = 0);

// Whole-minus-sum integration: I(joint past; joint future) minus the same
// quantity summed over the two parts. past_groups[i]/future_groups[i] hold the
// dist columns of element i; partition splits element indices into two parts.
double whole_minus_sum_phi(const JointDistribution& dist,
                           const std::vector<std::vector<std::size_t>>& past_groups,
                           const std::vector<std::vector<std::size_t>>& future_groups,
                           const std::vector<std::vector<std::size_t>>& partition,
                           double base = 2.0);

// Series convenience: element i's past block is x_i(t-k..t-1), future is x_i(t).
double whole_minus_sum_phi(const DiscreteSeries& series,
                           std::span<const std::size_t> variables,
                           const std::vector<std::vector<std::size_t>>& partition,
                           std::size_t k = 1, double base = 2.0);

// Per-sample locals under the plugin distribution of the same series.
std::vector<double> local_tc_series(const DiscreteSeries& series,
                                    std::span<const std::size_t> variables, double base = 2.0);
std::vector<double> local_dtc_series(const DiscreteSeries& series,
                                     std::span<const std::size_t> variables, double base = 2.0);
std::vector<double> local_o_series(const DiscreteSeries& series,
                                   std::span<const std::size_t> variables, double base = 2.0);
std::vector<double> local_s_series(const DiscreteSeries& series,
                                   std::span<const std::size_t> variables, double base = 2.0);

}  // namespace mint
