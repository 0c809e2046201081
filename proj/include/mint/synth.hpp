#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mint/core.hpp"

namespace mint::synth {

enum class Gate { And, Or, Xor };

// Analytic ground truth carried with every generated series so downstream
// tests read constants instead of restating them.
struct GroundTruth {
    std::map<std::string, double> analytic;  // named values; bits unless the key says nats
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // directed (source, target)
    std::optional<JointDistribution> exact_joint;        // static-mode distribution
    std::optional<JointDistribution> exact_lagged_joint; // dynamic mode: (inputs(t-1), out(t-1), out(t))
};

struct GeneratedDiscrete {
    DiscreteSeries series;
    GroundTruth truth;
};

struct GeneratedContinuous {
    ContinuousSeries series;
    GroundTruth truth;
};

// Exact (X1, X2, Y) table: inputs uniform, Y gated, every input pair 1/4.
JointDistribution gate_table(Gate gate);
// Exact lag-1 table (X1(t-1), X2(t-1), Z(t-1), Z(t)) of the dynamic gate system.
JointDistribution gate_dynamic_table(Gate gate);

// Static mode: i.i.d. rows of the truth table, columns (X1, X2, Y).
GeneratedDiscrete gate_static(Gate gate, std::size_t length, std::uint64_t seed);
// Dynamic mode: fresh uniform inputs each step, Z(t) = gate(X1(t-1), X2(t-1)).
GeneratedDiscrete gate_dynamic(Gate gate, std::size_t length, std::uint64_t seed);

// (X1, X2, W): both children copy the driver exactly; I(X1;X2|W) = 0.
JointDistribution common_driver_table();

// Driver at column 0 follows a sticky two-state Markov chain; each of the n
// children copies W(t-1) with independent symbol-flip noise. Bivariate
// child-child coupling is spurious by construction.
GeneratedDiscrete common_driver(std::size_t n_children, std::size_t length, std::uint64_t seed,
                                double stay_prob = 0.9, double flip_prob = 0.1);

// n elements locked to one uniformly-phased cycle over `states` values.
JointDistribution sync_table(std::size_t n, std::uint32_t states);
GeneratedDiscrete sync_system(std::size_t n, std::uint32_t states, std::size_t length,
                              std::uint64_t seed);

// Single categorical column drawn i.i.d. with the given weights.
GeneratedDiscrete dice(const std::vector<double>& weights, std::size_t length,
                       std::uint64_t seed);

// n uncoupled uniform binary columns; calibration baseline.
GeneratedDiscrete independent_bits(std::size_t n, std::size_t length, std::uint64_t seed);

// Single sticky binary chain: stays with stay_prob, flips otherwise.
GeneratedDiscrete markov_chain(std::size_t length, std::uint64_t seed, double stay_prob = 0.9);

// Lag-1 noisy copy cascade: col 0 i.i.d. uniform, col i copies col i-1 one
// step back with flip noise. True edges are exactly (i-1 -> i).
GeneratedDiscrete copy_chain(std::size_t n, std::size_t length, std::uint64_t seed,
                             double flip_prob = 0.05);

// Order-1 vector autoregression x(t) = A x(t-1) + sigma * eps. Requires
// spectral radius of A below 1; burn-in discarded before recording.
GeneratedContinuous var_gaussian(const std::vector<std::vector<double>>& coupling,
                                 double noise_sigma, std::size_t length, std::uint64_t seed);

// I.i.d. rows of a bivariate standard Gaussian with correlation rho.
// Ground truth carries mi_nats = -0.5 ln(1 - rho^2).
GeneratedContinuous correlated_gaussian_pair(double rho, std::size_t length,
                                             std::uint64_t seed);

// I.i.d. standard normal columns; entropy_nats_per_dim = 0.5 ln(2 pi e).
GeneratedContinuous iid_gaussian(std::size_t n, std::size_t length, std::uint64_t seed);

}  // namespace mint::synth
