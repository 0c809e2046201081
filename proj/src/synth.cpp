#include "mint/synth.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mint/util.hpp"

namespace mint::synth {

namespace {

// Hand-rolled draws keep generated data identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

Symbol uniform_symbol(std::mt19937_64& rng, std::uint32_t n) {
    return Symbol(double(n) * uniform01(rng)) % n;
}

double normal01(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double binary_entropy(double p) {
    return -(plogp(p, 2.0) + plogp(1.0 - p, 2.0));
}

Symbol apply_gate(Gate g, Symbol a, Symbol b) {
    switch (g) {
        case Gate::And: return a & b;
        case Gate::Or: return a | b;
        case Gate::Xor: return a ^ b;
    }
    throw std::invalid_argument("apply_gate: unknown gate");
}

void gate_mi_truth(Gate g, std::map<std::string, double>& out, const char* out_name,
                   bool dynamic) {
    const double h_out = g == Gate::Xor ? 1.0 : binary_entropy(0.25);
    // Each single input halves into a deterministic branch and a copying branch
    // for AND/OR; XOR inputs are individually uninformative.
    const double mi_single = g == Gate::Xor ? 0.0 : h_out - 0.5;
    const double cmi_single = g == Gate::Xor ? 1.0 : 0.5;
    const std::string prefix = dynamic ? "te_" : "mi_";
    const std::string suffix = std::string("_") + out_name;
    out[prefix + "x1" + suffix] = mi_single;
    out[prefix + "x2" + suffix] = mi_single;
    out[prefix + "inputs" + suffix] = h_out;
    out[(dynamic ? std::string("cte_x1") : std::string("cmi_x1")) + suffix +
        "_given_x2"] = cmi_single;
}

}  // namespace

JointDistribution gate_table(Gate gate) {
    ProbTable t;
    for (Symbol a = 0; a < 2; ++a) {
        for (Symbol b = 0; b < 2; ++b) {
            t[{a, b, apply_gate(gate, a, b)}] += 0.25;
        }
    }
    return JointDistribution(Alphabet({2, 2, 2}), std::move(t));
}

JointDistribution gate_dynamic_table(Gate gate) {
    ProbTable t;
    for (Symbol a = 0; a < 2; ++a) {
        for (Symbol b = 0; b < 2; ++b) {
            for (Symbol zp = 0; zp < 2; ++zp) {
                t[{a, b, zp, apply_gate(gate, a, b)}] += 0.125;
            }
        }
    }
    return JointDistribution(Alphabet({2, 2, 2, 2}), std::move(t));
}

GeneratedDiscrete gate_static(Gate gate, std::size_t length, std::uint64_t seed) {
    if (length == 0) throw std::invalid_argument("gate_static: empty series");
    std::mt19937_64 rng(seed);
    std::vector<Symbol> data;
    data.reserve(length * 3);
    for (std::size_t t = 0; t < length; ++t) {
        const Symbol a = uniform_symbol(rng, 2);
        const Symbol b = uniform_symbol(rng, 2);
        data.push_back(a);
        data.push_back(b);
        data.push_back(apply_gate(gate, a, b));
    }
    GeneratedDiscrete out{DiscreteSeries(length, 3, std::move(data), Alphabet({2, 2, 2})), {}};
    out.truth.exact_joint = gate_table(gate);
    out.truth.edges = {{0, 2}, {1, 2}};
    gate_mi_truth(gate, out.truth.analytic, "y", false);
    return out;
}

GeneratedDiscrete gate_dynamic(Gate gate, std::size_t length, std::uint64_t seed) {
    if (length < 2) throw std::invalid_argument("gate_dynamic: series too short");
    std::mt19937_64 rng(seed);
    std::vector<Symbol> data(length * 3);
    data[0] = uniform_symbol(rng, 2);
    data[1] = uniform_symbol(rng, 2);
    data[2] = uniform_symbol(rng, 2);  // seed value for Z(0)
    for (std::size_t t = 1; t < length; ++t) {
        data[t * 3 + 0] = uniform_symbol(rng, 2);
        data[t * 3 + 1] = uniform_symbol(rng, 2);
        data[t * 3 + 2] = apply_gate(gate, data[(t - 1) * 3 + 0], data[(t - 1) * 3 + 1]);
    }
    GeneratedDiscrete out{DiscreteSeries(length, 3, std::move(data), Alphabet({2, 2, 2})), {}};
    out.truth.exact_lagged_joint = gate_dynamic_table(gate);
    out.truth.edges = {{0, 2}, {1, 2}};
    gate_mi_truth(gate, out.truth.analytic, "z", true);
    return out;
}

JointDistribution common_driver_table() {
    ProbTable t;
    t[{0, 0, 0}] = 0.5;
    t[{1, 1, 1}] = 0.5;
    return JointDistribution(Alphabet({2, 2, 2}), std::move(t));
}

GeneratedDiscrete common_driver(std::size_t n_children, std::size_t length, std::uint64_t seed,
                                double stay_prob, double flip_prob) {
    if (n_children == 0) throw std::invalid_argument("common_driver: needs children");
    if (length < 2) throw std::invalid_argument("common_driver: series too short");
    if (stay_prob <= 0.0 || stay_prob >= 1.0 || flip_prob < 0.0 || flip_prob >= 0.5) {
        throw std::invalid_argument("common_driver: probabilities out of range");
    }
    std::mt19937_64 rng(seed);
    const std::size_t width = n_children + 1;
    std::vector<Symbol> data(length * width);
    data[0] = uniform_symbol(rng, 2);  // W(0)
    for (std::size_t c = 1; c < width; ++c) data[c] = uniform_symbol(rng, 2);
    for (std::size_t t = 1; t < length; ++t) {
        const Symbol w_prev = data[(t - 1) * width];
        data[t * width] = uniform01(rng) < stay_prob ? w_prev : Symbol(1u - w_prev);
        for (std::size_t c = 1; c < width; ++c) {
            const Symbol noise = uniform01(rng) < flip_prob ? 1u : 0u;
            data[t * width + c] = w_prev ^ noise;
        }
    }
    GeneratedDiscrete out{
        DiscreteSeries(length, width, std::move(data),
                       Alphabet(std::vector<std::uint32_t>(width, 2))),
        {}};
    for (std::size_t c = 1; c < width; ++c) out.truth.edges.emplace_back(0, c);
    out.truth.analytic["stay_prob"] = stay_prob;
    out.truth.analytic["flip_prob"] = flip_prob;
    return out;
}

JointDistribution sync_table(std::size_t n, std::uint32_t states) {
    if (n < 2 || states < 2) throw std::invalid_argument("sync_table: degenerate system");
    ProbTable t;
    for (Symbol s = 0; s < states; ++s) t[State(n, s)] = 1.0 / double(states);
    return JointDistribution(Alphabet(std::vector<std::uint32_t>(n, states)), std::move(t));
}

GeneratedDiscrete sync_system(std::size_t n, std::uint32_t states, std::size_t length,
                              std::uint64_t seed) {
    if (length == 0) throw std::invalid_argument("sync_system: empty series");
    std::mt19937_64 rng(seed);
    const Symbol phase = uniform_symbol(rng, states);
    std::vector<Symbol> data(length * n);
    for (std::size_t t = 0; t < length; ++t) {
        const Symbol v = Symbol((phase + t) % states);
        for (std::size_t c = 0; c < n; ++c) data[t * n + c] = v;
    }
    GeneratedDiscrete out{
        DiscreteSeries(length, n, std::move(data),
                       Alphabet(std::vector<std::uint32_t>(n, states))),
        {}};
    const double h = std::log2(double(states));
    out.truth.exact_joint = sync_table(n, states);
    out.truth.analytic["tc"] = double(n - 1) * h;
    out.truth.analytic["dtc"] = h;
    out.truth.analytic["description_complexity"] = h / double(n);
    return out;
}

GeneratedDiscrete dice(const std::vector<double>& weights, std::size_t length,
                       std::uint64_t seed) {
    if (weights.size() < 2) throw std::invalid_argument("dice: needs at least two faces");
    if (length == 0) throw std::invalid_argument("dice: empty series");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("dice: bad weight");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("dice: zero total weight");

    std::vector<double> cdf(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i] / total;
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::vector<Symbol> data(length);
    for (auto& v : data) {
        const double u = uniform01(rng);
        v = Symbol(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    }
    GeneratedDiscrete out{
        DiscreteSeries(length, 1, std::move(data),
                       Alphabet({std::uint32_t(weights.size())})),
        {}};
    ProbTable t;
    double h = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double p = weights[i] / total;
        if (p > 0.0) t[{Symbol(i)}] = p;
        h -= plogp(p, 2.0);
    }
    out.truth.exact_joint = JointDistribution(Alphabet({std::uint32_t(weights.size())}),
                                              std::move(t));
    out.truth.analytic["entropy_bits"] = h;
    return out;
}

GeneratedDiscrete independent_bits(std::size_t n, std::size_t length, std::uint64_t seed) {
    if (n == 0 || length == 0) throw std::invalid_argument("independent_bits: empty shape");
    std::mt19937_64 rng(seed);
    std::vector<Symbol> data(length * n);
    for (auto& v : data) v = uniform_symbol(rng, 2);
    GeneratedDiscrete out{
        DiscreteSeries(length, n, std::move(data), Alphabet(std::vector<std::uint32_t>(n, 2))),
        {}};
    return out;
}

GeneratedDiscrete markov_chain(std::size_t length, std::uint64_t seed, double stay_prob) {
    if (length < 2) throw std::invalid_argument("markov_chain: series too short");
    if (stay_prob <= 0.0 || stay_prob >= 1.0) {
        throw std::invalid_argument("markov_chain: stay probability out of range");
    }
    std::mt19937_64 rng(seed);
    std::vector<Symbol> data(length);
    data[0] = uniform_symbol(rng, 2);
    for (std::size_t t = 1; t < length; ++t) {
        data[t] = uniform01(rng) < stay_prob ? data[t - 1] : Symbol(1u - data[t - 1]);
    }
    GeneratedDiscrete out{DiscreteSeries(length, 1, std::move(data), Alphabet({2})), {}};
    out.truth.analytic["entropy_rate_bits"] = binary_entropy(stay_prob);
    out.truth.analytic["active_storage_bits"] = 1.0 - binary_entropy(stay_prob);
    out.truth.analytic["optimal_k"] = 1.0;
    return out;
}

GeneratedDiscrete copy_chain(std::size_t n, std::size_t length, std::uint64_t seed,
                             double flip_prob) {
    if (n < 2) throw std::invalid_argument("copy_chain: needs at least two columns");
    if (length < 2) throw std::invalid_argument("copy_chain: series too short");
    if (flip_prob < 0.0 || flip_prob >= 0.5) {
        throw std::invalid_argument("copy_chain: flip probability out of range");
    }
    std::mt19937_64 rng(seed);
    std::vector<Symbol> data(length * n);
    for (std::size_t c = 0; c < n; ++c) data[c] = uniform_symbol(rng, 2);
    for (std::size_t t = 1; t < length; ++t) {
        data[t * n] = uniform_symbol(rng, 2);
        for (std::size_t c = 1; c < n; ++c) {
            const Symbol noise = uniform01(rng) < flip_prob ? 1u : 0u;
            data[t * n + c] = data[(t - 1) * n + (c - 1)] ^ noise;
        }
    }
    GeneratedDiscrete out{
        DiscreteSeries(length, n, std::move(data), Alphabet(std::vector<std::uint32_t>(n, 2))),
        {}};
    for (std::size_t c = 1; c < n; ++c) out.truth.edges.emplace_back(c - 1, c);
    out.truth.analytic["te_edge_bits"] = 1.0 - binary_entropy(flip_prob);
    return out;
}

GeneratedContinuous var_gaussian(const std::vector<std::vector<double>>& coupling,
                                 double noise_sigma, std::size_t length, std::uint64_t seed) {
    const std::size_t n = coupling.size();
    if (n == 0) throw std::invalid_argument("var_gaussian: empty coupling matrix");
    for (const auto& row : coupling) {
        if (row.size() != n) throw std::invalid_argument("var_gaussian: coupling not square");
    }
    if (!(noise_sigma > 0.0) || !std::isfinite(noise_sigma)) {
        throw std::invalid_argument("var_gaussian: noise sigma must be positive");
    }
    if (length == 0) throw std::invalid_argument("var_gaussian: empty series");

    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = coupling[i][j];
    }
    const double radius = a.eigenvalues().cwiseAbs().maxCoeff();
    if (radius >= 1.0) {
        throw std::invalid_argument("var_gaussian: spectral radius " + std::to_string(radius) +
                                    " is not below 1");
    }

    std::mt19937_64 rng(seed);
    const std::size_t burn_in = 1000;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<double> data;
    data.reserve(length * n);
    for (std::size_t t = 0; t < burn_in + length; ++t) {
        Eigen::VectorXd eps(n);
        for (std::size_t i = 0; i < n; ++i) eps(i) = normal01(rng);
        x = a * x + noise_sigma * eps;
        if (t >= burn_in) {
            for (std::size_t i = 0; i < n; ++i) data.push_back(x(i));
        }
    }

    GeneratedContinuous out{ContinuousSeries(length, n, std::move(data)), {}};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && coupling[i][j] != 0.0) out.truth.edges.emplace_back(j, i);
        }
    }

    // Stationary covariance from the fixed point of S = A S A^T + sigma^2 I.
    Eigen::MatrixXd s = noise_sigma * noise_sigma * Eigen::MatrixXd::Identity(n, n);
    for (int iter = 0; iter < 100000; ++iter) {
        Eigen::MatrixXd next = a * s * a.transpose() +
                               noise_sigma * noise_sigma * Eigen::MatrixXd::Identity(n, n);
        const double delta = (next - s).cwiseAbs().maxCoeff();
        s = next;
        if (delta < 1e-14) break;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.truth.analytic["cov_" + std::to_string(i) + "_" + std::to_string(j)] = s(i, j);
        }
    }
    if (n == 2) {
        const double rho = s(0, 1) / std::sqrt(s(0, 0) * s(1, 1));
        out.truth.analytic["rho_01"] = rho;
        out.truth.analytic["mi_01_nats"] = -0.5 * std::log(1.0 - rho * rho);
    }
    return out;
}

GeneratedContinuous correlated_gaussian_pair(double rho, std::size_t length,
                                             std::uint64_t seed) {
    if (!(std::abs(rho) < 1.0)) {
        throw std::invalid_argument("correlated_gaussian_pair: |rho| must be below 1");
    }
    if (length == 0) throw std::invalid_argument("correlated_gaussian_pair: empty series");
    std::mt19937_64 rng(seed);
    std::vector<double> data;
    data.reserve(length * 2);
    const double mix = std::sqrt(1.0 - rho * rho);
    for (std::size_t t = 0; t < length; ++t) {
        const double z1 = normal01(rng);
        const double z2 = normal01(rng);
        data.push_back(z1);
        data.push_back(rho * z1 + mix * z2);
    }
    GeneratedContinuous out{ContinuousSeries(length, 2, std::move(data)), {}};
    out.truth.analytic["rho"] = rho;
    out.truth.analytic["mi_nats"] = -0.5 * std::log(1.0 - rho * rho);
    return out;
}

GeneratedContinuous iid_gaussian(std::size_t n, std::size_t length, std::uint64_t seed) {
    if (n == 0 || length == 0) throw std::invalid_argument("iid_gaussian: empty shape");
    std::mt19937_64 rng(seed);
    std::vector<double> data(length * n);
    for (auto& v : data) v = normal01(rng);
    GeneratedContinuous out{ContinuousSeries(length, n, std::move(data)), {}};
    out.truth.analytic["entropy_nats_per_dim"] =
        0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
    return out;
}

}  // namespace mint::synth
