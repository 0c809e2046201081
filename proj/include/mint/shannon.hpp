#pragma once

#include <span>
#include <vector>

#include "mint/core.hpp"

namespace mint {

// Expected measures are reported in the given logarithm base (2 = bits).

double entropy(const JointDistribution& dist, double base = 2.0);
double entropy(const JointDistribution& dist, std::span<const std::size_t> variables,
               double base = 2.0);

// log(1/P(state)); state covers all variables of the distribution.
double local_entropy(const JointDistribution& dist, const State& state, double base = 2.0);

// H(target | given) = H(target, given) - H(given). `given` may be empty.
double conditional_entropy(const JointDistribution& dist,
                           std::span<const std::size_t> target,
                           std::span<const std::size_t> given, double base = 2.0);

// D_KL(p || q). Requires identical alphabets and q > 0 wherever p > 0.
double kl_divergence(const JointDistribution& p, const JointDistribution& q,
                     double base = 2.0);

// d(x) = h_q(x) - h_p(x)
double local_kl(const JointDistribution& p, const JointDistribution& q, const State& state,
                double base = 2.0);

double mutual_information(const JointDistribution& dist,
                          std::span<const std::size_t> a,
                          std::span<const std::size_t> b, double base = 2.0);

// May be negative (misinformation). State covers all variables of the distribution.
double local_mutual_information(const JointDistribution& dist,
                                std::span<const std::size_t> a,
                                std::span<const std::size_t> b, const State& state,
                                double base = 2.0);

// I(a; b | given) = H(a,given) + H(b,given) - H(a,b,given) - H(given).
// Empty `given` reduces to plain mutual information.
double conditional_mutual_information(const JointDistribution& dist,
                                      std::span<const std::size_t> a,
                                      std::span<const std::size_t> b,
                                      std::span<const std::size_t> given,
                                      double base = 2.0);

double local_conditional_mutual_information(const JointDistribution& dist,
                                            std::span<const std::size_t> a,
                                            std::span<const std::size_t> b,
                                            std::span<const std::size_t> given,
                                            const State& state, double base = 2.0);

// Per-sample local values under the plugin distribution of the same series.
// The arithmetic mean of each result equals the corresponding expected measure.
std::vector<double> local_entropy_series(const DiscreteSeries& series,
                                         std::span<const std::size_t> variables,
                                         double base = 2.0);
std::vector<double> local_mi_series(const DiscreteSeries& series,
                                    std::span<const std::size_t> a,
                                    std::span<const std::size_t> b, double base = 2.0);
std::vector<double> local_cmi_series(const DiscreteSeries& series,
                                     std::span<const std::size_t> a,
                                     std::span<const std::size_t> b,
                                     std::span<const std::size_t> given, double base = 2.0);

}  // namespace mint
