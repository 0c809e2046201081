#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mint/core.hpp"

namespace mint {

// Plugin entropy of the empirical table; biased low on short data.
double plugin_entropy(const DiscreteSeries& series, std::span<const std::size_t> variables,
                      double base = 2.0);

// Adds (occupied - 1) / (2 * samples) nats to an estimate, converted to base.
double miller_madow(double estimate, std::size_t occupied, std::size_t samples,
                    double base = 2.0);

// Plugin entropy with the correction applied; occupied count from the data.
double miller_madow_entropy(const DiscreteSeries& series,
                            std::span<const std::size_t> variables, double base = 2.0);

struct GaussianModel {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;  // symmetric, PSD up to -1e-10 eigenvalue slack
};

// Unbiased sample covariance; throws on fewer than two rows or a constant column.
GaussianModel fit_gaussian(const ContinuousSeries& series);

// All Gaussian closed forms return nats and may be negative.
double gaussian_entropy(const GaussianModel& model, std::span<const std::size_t> variables);

double gaussian_mi(const GaussianModel& model, std::span<const std::size_t> a,
                   std::span<const std::size_t> b);
double gaussian_mi(const ContinuousSeries& series, std::span<const std::size_t> a,
                   std::span<const std::size_t> b);

// Empty `given` falls back to gaussian_mi.
double gaussian_conditional_mi(const GaussianModel& model, std::span<const std::size_t> a,
                               std::span<const std::size_t> b,
                               std::span<const std::size_t> given);

// log of the fitted density ratio p(a,b) / (p(a) p(b)) at one full-width point.
double local_gaussian_mi(const GaussianModel& model, std::span<const std::size_t> a,
                         std::span<const std::size_t> b, std::span<const double> point);

struct KnnConfig {
    std::size_t k = 4;           // must stay below the sample count
    std::uint64_t jitter_seed = 0;  // sub-resolution dedupe noise, 1e-10 x column range
};

// True when two selected rows coincide exactly; such data gets jittered.
bool has_duplicate_points(const ContinuousSeries& series,
                          std::span<const std::size_t> variables);

// Nearest-neighbour differential entropy (max-coordinate metric), nats.
double kl_entropy(const ContinuousSeries& series, std::span<const std::size_t> variables,
                  const KnnConfig& cfg = {});
std::vector<double> local_kl_entropy(const ContinuousSeries& series,
                                     std::span<const std::size_t> variables,
                                     const KnnConfig& cfg = {});

// variant 1 counts strictly inside the joint neighbourhood radius; variant 2
// counts inclusively within per-block projected radii. Nats.
double ksg_mi(const ContinuousSeries& series, std::span<const std::size_t> a,
              std::span<const std::size_t> b, const KnnConfig& cfg = {}, int variant = 1);
std::vector<double> local_ksg_mi(const ContinuousSeries& series,
                                 std::span<const std::size_t> a,
                                 std::span<const std::size_t> b, const KnnConfig& cfg = {},
                                 int variant = 1);

// Empty `given` falls back to ksg_mi.
double ksg_conditional_mi(const ContinuousSeries& series, std::span<const std::size_t> a,
                          std::span<const std::size_t> b,
                          std::span<const std::size_t> given, const KnnConfig& cfg = {},
                          int variant = 1);
std::vector<double> local_ksg_conditional_mi(const ContinuousSeries& series,
                                             std::span<const std::size_t> a,
                                             std::span<const std::size_t> b,
                                             std::span<const std::size_t> given,
                                             const KnnConfig& cfg = {}, int variant = 1);

}  // namespace mint
