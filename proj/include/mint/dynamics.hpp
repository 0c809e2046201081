#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mint/core.hpp"

namespace mint {

struct EmbeddingSpec {
    std::size_t k = 1;    // history length
    std::size_t tau = 1;  // delay between history samples
};

// Expected value plus per-sample locals; mean(locals) equals expected exactly.
// first_time is the time index of the sample behind locals[0].
struct DynamicMeasure {
    double expected = 0.0;
    std::vector<double> locals;
    std::size_t first_time = 0;
    std::size_t k = 0;
    std::size_t l = 0;
    std::size_t r = 0;
    std::size_t tau = 1;
};

// Row t holds (x_{t-tau}, ..., x_{t-k*tau}); rows run t = k*tau .. T-1.
DiscreteSeries embed(const DiscreteSeries& series, std::size_t variable,
                     const EmbeddingSpec& spec);

// H(X_t | X_{t-tau}, ..., X_{t-k*tau}).
DynamicMeasure entropy_rate(const DiscreteSeries& series, std::size_t variable, std::size_t k,
                            std::size_t tau = 1, double base = 2.0);

// I(past_k ; X_t). Locals can dip negative on misinformative pasts.
DynamicMeasure active_information_storage(const DiscreteSeries& series, std::size_t variable,
                                          std::size_t k, std::size_t tau = 1,
                                          double base = 2.0);

// I(X_past_k ; Y_t | Y_past_l), source history k, target history l.
DynamicMeasure transfer_entropy(const DiscreteSeries& series, std::size_t source,
                                std::size_t target, std::size_t k = 1, std::size_t l = 1,
                                std::size_t tau = 1, double base = 2.0);

// Joint-source form; conditioning variables contribute their own pasts (history r).
DynamicMeasure conditional_transfer_entropy(const DiscreteSeries& series,
                                            std::span<const std::size_t> sources,
                                            std::size_t target,
                                            std::span<const std::size_t> conditioning,
                                            std::size_t k = 1, std::size_t l = 1,
                                            std::size_t r = 1, std::size_t tau = 1,
                                            double base = 2.0);

// TE conditioned on the pasts (history q) of every system variable that is
// neither source nor target. Data hunger grows exponentially with system size.
DynamicMeasure global_transfer_entropy(const DiscreteSeries& series, std::size_t source,
                                       std::size_t target,
                                       std::span<const std::size_t> system, std::size_t k = 1,
                                       std::size_t l = 1, std::size_t q = 1,
                                       double base = 2.0);

// I(past_k of past_variables ; next j steps of future_variables), truncated windows.
DynamicMeasure excess_entropy(const DiscreteSeries& series,
                              std::span<const std::size_t> past_variables,
                              std::span<const std::size_t> future_variables, std::size_t k,
                              std::size_t j, double base = 2.0);

}  // namespace mint
