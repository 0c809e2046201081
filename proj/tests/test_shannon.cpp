#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mint/core.hpp"
#include "mint/shannon.hpp"

using namespace mint;

namespace {

JointDistribution fair_die() {
    ProbTable t;
    for (std::uint32_t f = 0; f < 6; ++f) t[{f}] = 1.0 / 6.0;
    return JointDistribution(Alphabet({6}), std::move(t));
}

JointDistribution loaded_die() {
    ProbTable t;
    for (std::uint32_t f = 0; f < 6; ++f) t[{f}] = f == 1 ? 2.0 / 3.0 : 1.0 / 15.0;
    return JointDistribution(Alphabet({6}), std::move(t));
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

}  // namespace

TEST_CASE("entropy of dice") {
    CHECK(entropy(fair_die()) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
    CHECK(entropy(fair_die()) == doctest::Approx(2.585).epsilon(1e-3));
    CHECK(entropy(loaded_die()) == doctest::Approx(1.692).epsilon(1e-3));
    ProbTable sure{{{0}, 1.0}};
    CHECK(entropy(JointDistribution(Alphabet({2}), sure)) == 0.0);
}

TEST_CASE("entropy respects the base parameter") {
    auto d = testutil::random_table({3, 2}, 11);
    CHECK(entropy(d, std::exp(1.0)) == doctest::Approx(entropy(d) * std::log(2.0)).epsilon(1e-12));
    CHECK(entropy(d, 10.0) == doctest::Approx(entropy(d) * std::log10(2.0)).epsilon(1e-12));
}

TEST_CASE("local entropy is surprise and averages to entropy") {
    auto d = fair_die();
    CHECK(local_entropy(d, {3}) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
    ProbTable sure{{{0}, 1.0}};
    JointDistribution point(Alphabet({2}), sure);
    CHECK(local_entropy(point, {0}) == 0.0);
    CHECK_THROWS_AS(local_entropy(point, {1}), std::invalid_argument);

    auto r = testutil::random_table({2, 3}, 5);
    double acc = 0.0;
    for (const auto& [s, p] : r.table()) acc += p * local_entropy(r, s);
    CHECK(acc == doctest::Approx(entropy(r)).epsilon(1e-12));
}

TEST_CASE("conditional entropy is joint minus marginal") {
    auto d = testutil::random_table({2, 3, 2}, 3);
    std::vector<std::size_t> tgt{0}, giv{1, 2};
    double direct = entropy(d, std::vector<std::size_t>{0, 1, 2}) - entropy(d, giv);
    CHECK(conditional_entropy(d, tgt, giv) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(conditional_entropy(d, tgt, {}) == doctest::Approx(entropy(d, tgt)).epsilon(1e-12));
    CHECK_THROWS_AS(conditional_entropy(d, tgt, std::vector<std::size_t>{0, 1}),
                    std::invalid_argument);
    // Determinism: Y = X1 xor X2 has zero entropy given both inputs.
    auto x = testutil::xor_table();
    CHECK(conditional_entropy(x, std::vector<std::size_t>{2}, std::vector<std::size_t>{0, 1}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kl divergence") {
    auto p = loaded_die();
    auto q = fair_die();
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-12));
    // Oracle: direct sum over the six faces.
    double direct = 0.0;
    for (std::uint32_t f = 0; f < 6; ++f) {
        const double pp = p.prob({f});
        direct += pp * std::log2(pp / q.prob({f}));
    }
    CHECK(kl_divergence(p, q) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(kl_divergence(p, q) > 0.0);

    // Support violation is an error, not infinity.
    ProbTable narrow{{{0}, 1.0}};
    JointDistribution qn(Alphabet({2}), narrow);
    ProbTable wide{{{0}, 0.5}, {{1}, 0.5}};
    JointDistribution pw(Alphabet({2}), wide);
    CHECK_THROWS_AS(kl_divergence(pw, qn), std::invalid_argument);
    CHECK_NOTHROW(kl_divergence(qn, pw));

    // Locals: d(x) = h_Q(x) - h_P(x), and they average to the divergence under P.
    double acc = 0.0;
    for (const auto& [s, pp] : p.table()) {
        const double l = local_kl(p, q, s);
        CHECK(l == doctest::Approx(local_entropy(q, s) - local_entropy(p, s)).epsilon(1e-12));
        acc += pp * l;
    }
    CHECK(acc == doctest::Approx(kl_divergence(p, q)).epsilon(1e-12));
}

TEST_CASE("four mutual information formulations agree") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto d = testutil::random_sparse_table({2, 3, 2, 2}, seed, 0.7);
        std::vector<std::size_t> a{0, 2}, b{1, 3};
        const double mi = mutual_information(d, a, b);
        const double f1 = entropy(d, a) - conditional_entropy(d, a, b);
        const double f2 = entropy(d, b) - conditional_entropy(d, b, a);
        const double f3 = entropy(d, a) + entropy(d, b) -
                          entropy(d, std::vector<std::size_t>{0, 2, 1, 3});
        const double f4 =
            entropy(d, std::vector<std::size_t>{0, 1, 2, 3}) -
            conditional_entropy(d, a, b) - conditional_entropy(d, b, a);
        CHECK(mi == doctest::Approx(f1).epsilon(1e-9));
        CHECK(mi == doctest::Approx(f2).epsilon(1e-9));
        CHECK(mi == doctest::Approx(f3).epsilon(1e-9));
        CHECK(mi == doctest::Approx(f4).epsilon(1e-9));
        CHECK(mi >= -1e-12);
    }
}

TEST_CASE("mutual information as kl against the independent product") {
    auto d = testutil::random_table({2, 3}, 9);
    auto px = marginalize(d, std::vector<std::size_t>{0});
    auto py = marginalize(d, std::vector<std::size_t>{1});
    auto indep = product(px, py);
    CHECK(mutual_information(d, std::vector<std::size_t>{0}, std::vector<std::size_t>{1}) ==
          doctest::Approx(kl_divergence(d, indep)).epsilon(1e-12));
}

TEST_CASE("xor inputs are pairwise independent but jointly determining") {
    auto x = testutil::xor_table();
    std::vector<std::size_t> x1{0}, x2{1}, y{2};
    CHECK(mutual_information(x, x1, y) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mutual_information(x, x2, y) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(conditional_mutual_information(x, x1, y, x2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mutual_information(x, std::vector<std::size_t>{0, 1}, y) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditioning can destroy information") {
    // Copy chain: X uniform, Y = X, conditioning on Y removes all of I(X;Z=Y).
    ProbTable t;
    t[{0, 0, 0}] = 0.5;
    t[{1, 1, 1}] = 0.5;
    JointDistribution d(Alphabet({2, 2, 2}), t);
    std::vector<std::size_t> a{0}, c{2}, g{1};
    CHECK(mutual_information(d, a, c) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(conditional_mutual_information(d, a, c, g) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conditional mi matches entropy composition on random tables") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto d = testutil::random_sparse_table({2, 2, 3}, seed, 0.8);
        std::vector<std::size_t> a{0}, b{1}, g{2};
        double direct = entropy(d, std::vector<std::size_t>{0, 2}) +
                        entropy(d, std::vector<std::size_t>{1, 2}) -
                        entropy(d, std::vector<std::size_t>{0, 1, 2}) - entropy(d, g);
        CHECK(conditional_mutual_information(d, a, b, g) ==
              doctest::Approx(direct).epsilon(1e-9));
        CHECK(conditional_mutual_information(d, a, b, {}) ==
              doctest::Approx(mutual_information(d, a, b)).epsilon(1e-12));
    }
}

TEST_CASE("local mutual information can be negative but averages to mi") {
    // Misinformative realization: states where the joint is rarer than the
    // product of marginals carry negative local values.
    ProbTable t;
    t[{0, 0}] = 0.4;
    t[{0, 1}] = 0.1;
    t[{1, 0}] = 0.1;
    t[{1, 1}] = 0.4;
    JointDistribution d(Alphabet({2, 2}), t);
    std::vector<std::size_t> a{0}, b{1};
    CHECK(local_mutual_information(d, a, b, {0, 1}) < 0.0);
    double acc = 0.0;
    for (const auto& [s, p] : d.table()) acc += p * local_mutual_information(d, a, b, s);
    CHECK(acc == doctest::Approx(mutual_information(d, a, b)).epsilon(1e-12));

    auto r = testutil::random_table({2, 2, 2}, 21);
    std::vector<std::size_t> g{2};
    double acc2 = 0.0;
    for (const auto& [s, p] : r.table()) {
        acc2 += p * local_conditional_mutual_information(r, a, b, g, s);
    }
    CHECK(acc2 == doctest::Approx(conditional_mutual_information(r, a, b, g)).epsilon(1e-12));
}

TEST_CASE("series locals average to the plugin measure") {
    std::mt19937_64 rng(77);
    std::vector<Symbol> data(300 * 3);
    for (auto& v : data) v = Symbol(rng() % 2);
    DiscreteSeries s(300, 3, std::move(data), Alphabet({2, 2, 2}));

    auto hl = local_entropy_series(s, std::vector<std::size_t>{0, 1});
    auto d = from_series(s, std::vector<std::size_t>{0, 1});
    CHECK(mean(hl) == doctest::Approx(entropy(d)).epsilon(1e-9));

    auto ml = local_mi_series(s, std::vector<std::size_t>{0}, std::vector<std::size_t>{1});
    CHECK(mean(ml) ==
          doctest::Approx(mutual_information(d, std::vector<std::size_t>{0},
                                             std::vector<std::size_t>{1})).epsilon(1e-9));

    auto cl = local_cmi_series(s, std::vector<std::size_t>{0}, std::vector<std::size_t>{1},
                               std::vector<std::size_t>{2});
    auto d3 = from_series(s, std::vector<std::size_t>{0, 1, 2});
    CHECK(mean(cl) ==
          doctest::Approx(conditional_mutual_information(
                              d3, std::vector<std::size_t>{0}, std::vector<std::size_t>{1},
                              std::vector<std::size_t>{2})).epsilon(1e-9));
}
