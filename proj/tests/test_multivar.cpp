#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mint/core.hpp"
#include "mint/multivar.hpp"
#include "mint/shannon.hpp"

using namespace mint;

namespace {

// n elements locked together, uniform over `states` shared values.
JointDistribution sync_system(std::size_t n, std::uint32_t states) {
    ProbTable t;
    for (std::uint32_t s = 0; s < states; ++s) {
        t[State(n, s)] = 1.0 / double(states);
    }
    return JointDistribution(Alphabet(std::vector<std::uint32_t>(n, states)), std::move(t));
}

JointDistribution copies(std::size_t n) {
    ProbTable t;
    t[State(n, 0)] = 0.5;
    t[State(n, 1)] = 0.5;
    return JointDistribution(Alphabet(std::vector<std::uint32_t>(n, 2)), std::move(t));
}

std::vector<std::size_t> iota_vars(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

// Independent oracle: subset-entropy form, sum_k <H_k> - (N-1)/2 * H(X).
double tse_entropy_form(const JointDistribution& d, const std::vector<std::size_t>& vars) {
    const std::size_t n = vars.size();
    double acc = 0.0;
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<std::size_t> sub;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) sub.push_back(vars[i]);
        }
        double norm = 1.0;
        std::size_t k = sub.size();
        for (std::size_t i = 0; i < k; ++i) norm = norm * double(n - i) / double(i + 1);
        acc += entropy(d, sub) / norm;
    }
    return acc - double(n - 1) / 2.0 * entropy(d, vars);
}

}  // namespace

TEST_CASE("synchronized system correlations") {
    auto d = sync_system(10, 8);
    auto vars = iota_vars(10);
    CHECK(total_correlation(d, vars) == doctest::Approx(27.0).epsilon(1e-9));
    CHECK(dual_total_correlation(d, vars) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(description_complexity(d, vars) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(10.0 * description_complexity(d, vars) ==
          doctest::Approx(dual_total_correlation(d, vars)).epsilon(1e-9));
}

TEST_CASE("xor triple") {
    auto d = testutil::xor_table();
    auto vars = iota_vars(3);
    CHECK(total_correlation(d, vars) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dual_total_correlation(d, vars) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(co_information(d, vars) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(o_information(d, vars) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s_information(d, vars) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("triple copy") {
    auto d = copies(3);
    auto vars = iota_vars(3);
    CHECK(total_correlation(d, vars) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(dual_total_correlation(d, vars) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(co_information(d, vars) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(o_information(d, vars) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("independent variables score zero everywhere") {
    auto d = product(product(testutil::random_table({2}, 1), testutil::random_table({3}, 2)),
                     testutil::random_table({2}, 3));
    auto vars = iota_vars(3);
    CHECK(total_correlation(d, vars) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dual_total_correlation(d, vars) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(co_information(d, vars) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(o_information(d, vars) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s_information(d, vars) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tse_complexity(d, vars) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(description_complexity(d, vars) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("co-information reduces to mi for two variables") {
    auto d = testutil::random_table({3, 4}, 17);
    std::vector<std::size_t> vars{0, 1};
    CHECK(co_information(d, vars) ==
          doctest::Approx(mutual_information(d, std::vector<std::size_t>{0},
                                             std::vector<std::size_t>{1})).epsilon(1e-12));
}

TEST_CASE("identities on random tables") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        auto d = testutil::random_sparse_table({2, 3, 2, 2}, seed, 0.8);
        auto vars = iota_vars(4);
        const double tc = total_correlation(d, vars);
        const double dtc = dual_total_correlation(d, vars);
        CHECK(o_information(d, vars) == doctest::Approx(tc - dtc).epsilon(1e-9));
        CHECK(s_information(d, vars) == doctest::Approx(tc + dtc).epsilon(1e-9));

        // Sigma equals the summed whole-vs-rest mutual informations.
        double sum_mi = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            std::vector<std::size_t> one{i}, rest;
            for (std::size_t j = 0; j < 4; ++j) {
                if (j != i) rest.push_back(j);
            }
            sum_mi += mutual_information(d, one, rest);
        }
        CHECK(s_information(d, vars) == doctest::Approx(sum_mi).epsilon(1e-9));

        // Omega rewritten through leave-one-out total correlations.
        double sum_tc_rest = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            std::vector<std::size_t> rest;
            for (std::size_t j = 0; j < 4; ++j) {
                if (j != i) rest.push_back(j);
            }
            sum_tc_rest += total_correlation(d, rest);
        }
        CHECK(o_information(d, vars) ==
              doctest::Approx((2.0 - 4.0) * tc + sum_tc_rest).epsilon(1e-9));

        // Description complexity identity.
        CHECK(4.0 * description_complexity(d, vars) == doctest::Approx(dtc).epsilon(1e-9));

        // DTC bounds.
        CHECK(dtc >= -1e-12);
        CHECK(dtc <= entropy(d, vars) + 1e-12);
        CHECK(tc >= -1e-12);
    }
}

TEST_CASE("adding an independent variable changes nothing over the original set") {
    auto d = testutil::random_table({2, 2, 2}, 4);
    auto grown = product(d, testutil::random_table({3}, 5));
    auto vars = iota_vars(3);
    CHECK(total_correlation(grown, vars) ==
          doctest::Approx(total_correlation(d, vars)).epsilon(1e-12));
    CHECK(dual_total_correlation(grown, vars) ==
          doctest::Approx(dual_total_correlation(d, vars)).epsilon(1e-12));
    CHECK(o_information(grown, vars) == doctest::Approx(o_information(d, vars)).epsilon(1e-12));
}

TEST_CASE("tse complexity") {
    SUBCASE("three redundant copies plus an independent bit") {
        auto d = product(copies(3), testutil::uniform_table({2}));
        auto vars = iota_vars(4);
        const double expected = tse_entropy_form(d, vars);
        CHECK(tse_complexity(d, vars) == doctest::Approx(expected).epsilon(1e-9));
        CHECK(tse_complexity(d, vars) == doctest::Approx(1.25).epsilon(1e-9));
    }
    SUBCASE("both formulations agree on random tables") {
        for (std::size_t n = 2; n <= 6; ++n) {
            std::vector<std::uint32_t> sizes(n, 2);
            auto d = testutil::random_sparse_table(sizes, 1000 + n, 0.8);
            auto vars = iota_vars(n);
            CHECK(tse_complexity(d, vars) ==
                  doctest::Approx(tse_complexity_subset_tc_form(d, vars)).epsilon(1e-9));
            CHECK(tse_complexity(d, vars) ==
                  doctest::Approx(tse_entropy_form(d, vars)).epsilon(1e-9));
            CHECK(tse_complexity(d, vars) >= -1e-9);
        }
    }
    SUBCASE("sampled mode is deterministic and near exact") {
        auto d = testutil::random_table({2, 2, 2, 2, 2}, 9);
        auto vars = iota_vars(5);
        auto a = tse_complexity_sampled(d, vars, 400, 123);
        auto b = tse_complexity_sampled(d, vars, 400, 123);
        CHECK(a.value == b.value);
        CHECK(a.samples_per_scale == 400);
        CHECK(a.seed == 123);
        CHECK_FALSE(a.exact);
        const double exact = tse_complexity(d, vars);
        CHECK(std::abs(a.value - exact) < std::max(5.0 * a.standard_error, 1e-6));
    }
    SUBCASE("exact mode cap") {
        ProbTable t;
        t[State(17, 0)] = 0.5;
        t[State(17, 1)] = 0.5;
        JointDistribution wide(Alphabet(std::vector<std::uint32_t>(17, 2)), std::move(t));
        CHECK_THROWS_AS(tse_complexity(wide, iota_vars(17)), std::invalid_argument);
    }
}

TEST_CASE("complexity report bundles consistent values") {
    auto d = testutil::random_table({2, 2, 3}, 31);
    auto vars = iota_vars(3);
    auto r = complexity_report(d, vars);
    CHECK(r.s_info == doctest::Approx(r.tc + r.dtc).epsilon(1e-9));
    CHECK(r.o_info == doctest::Approx(r.tc - r.dtc).epsilon(1e-9));
    REQUIRE(r.tse.has_value());
    CHECK(r.tse->exact);
    CHECK(r.tse->value == doctest::Approx(tse_complexity(d, vars)).epsilon(1e-12));

    auto rs = complexity_report(d, vars, 2.0, std::size_t{200}, 7);
    REQUIRE(rs.tse.has_value());
    CHECK_FALSE(rs.tse->exact);
    CHECK(rs.tse->samples_per_scale == 200);
}

TEST_CASE("whole minus sum integration") {
    SUBCASE("independent memoryless bits give zero") {
        auto d = testutil::uniform_table({2, 2, 2, 2});  // (p1, p2, f1, f2) all independent
        CHECK(whole_minus_sum_phi(d, {{0}, {1}}, {{2}, {3}}, {{0}, {1}}) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("two copies of one persistent bit are redundancy dominated") {
        ProbTable t;
        t[{0, 0, 0, 0}] = 0.5;
        t[{1, 1, 1, 1}] = 0.5;
        JointDistribution d(Alphabet({2, 2, 2, 2}), std::move(t));
        CHECK(whole_minus_sum_phi(d, {{0}, {1}}, {{2}, {3}}, {{0}, {1}}) ==
              doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("xor-driven pair is synergy dominated") {
        // Both next states equal the xor of the two past states.
        ProbTable t;
        for (std::uint32_t a = 0; a < 2; ++a) {
            for (std::uint32_t b = 0; b < 2; ++b) {
                t[{a, b, a ^ b, a ^ b}] = 0.25;
            }
        }
        JointDistribution d(Alphabet({2, 2, 2, 2}), std::move(t));
        CHECK(whole_minus_sum_phi(d, {{0}, {1}}, {{2}, {3}}, {{0}, {1}}) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("series overload matches manual lagged construction") {
        std::mt19937_64 rng(5);
        std::vector<Symbol> data(200 * 2);
        for (auto& v : data) v = Symbol(rng() % 2);
        DiscreteSeries s(200, 2, std::move(data), Alphabet({2, 2}));
        auto manual = from_series(s, std::vector<std::size_t>{0, 1, 0, 1},
                                  std::vector<std::size_t>{1, 1, 0, 0});
        const double direct = whole_minus_sum_phi(manual, {{0}, {1}}, {{2}, {3}}, {{0}, {1}});
        CHECK(whole_minus_sum_phi(s, std::vector<std::size_t>{0, 1}, {{0}, {1}}, 1) ==
              doctest::Approx(direct).epsilon(1e-12));
    }
    SUBCASE("partition must cover every element exactly once") {
        auto d = testutil::uniform_table({2, 2, 2, 2});
        CHECK_THROWS_AS(whole_minus_sum_phi(d, {{0}, {1}}, {{2}, {3}}, {{0}, {0}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(whole_minus_sum_phi(d, {{0}, {1}}, {{2}, {3}}, {{0}}),
                        std::invalid_argument);
    }
}

TEST_CASE("local multivariate measures average to expected values") {
    auto d = testutil::random_sparse_table({2, 2, 3}, 77, 0.9);
    auto vars = iota_vars(3);
    double tc = 0.0, dtc = 0.0, o = 0.0, s = 0.0;
    for (const auto& [st, p] : d.table()) {
        tc += p * local_total_correlation(d, vars, st);
        dtc += p * local_dual_total_correlation(d, vars, st);
        o += p * local_o_information(d, vars, st);
        s += p * local_s_information(d, vars, st);
    }
    CHECK(tc == doctest::Approx(total_correlation(d, vars)).epsilon(1e-9));
    CHECK(dtc == doctest::Approx(dual_total_correlation(d, vars)).epsilon(1e-9));
    CHECK(o == doctest::Approx(o_information(d, vars)).epsilon(1e-9));
    CHECK(s == doctest::Approx(s_information(d, vars)).epsilon(1e-9));

    double co = 0.0;
    for (const auto& [st, p] : d.table()) co += p * local_co_information(d, vars, st);
    CHECK(co == doctest::Approx(co_information(d, vars)).epsilon(1e-9));
}

TEST_CASE("series locals average to plugin measures") {
    std::mt19937_64 rng(13);
    std::vector<Symbol> data(400 * 3);
    for (auto& v : data) v = Symbol(rng() % 2);
    DiscreteSeries series(400, 3, std::move(data), Alphabet({2, 2, 2}));
    auto vars = iota_vars(3);
    auto d = from_series(series, vars);

    CHECK(mean(local_tc_series(series, vars)) ==
          doctest::Approx(total_correlation(d, vars)).epsilon(1e-9));
    CHECK(mean(local_dtc_series(series, vars)) ==
          doctest::Approx(dual_total_correlation(d, vars)).epsilon(1e-9));
    CHECK(mean(local_o_series(series, vars)) ==
          doctest::Approx(o_information(d, vars)).epsilon(1e-9));
    CHECK(mean(local_s_series(series, vars)) ==
          doctest::Approx(s_information(d, vars)).epsilon(1e-9));
}

TEST_CASE("selection validation") {
    auto d = testutil::random_table({2, 2}, 8);
    CHECK_THROWS_AS(total_correlation(d, std::vector<std::size_t>{0}), std::invalid_argument);
    CHECK_THROWS_AS(total_correlation(d, std::vector<std::size_t>{0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(total_correlation(d, std::vector<std::size_t>{0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(o_information(d, std::vector<std::size_t>{0, 1}), std::invalid_argument);
    ProbTable t;
    t[State(21, 0)] = 1.0;
    JointDistribution wide(Alphabet(std::vector<std::uint32_t>(21, 2)), std::move(t));
    std::vector<std::size_t> wide_vars(21);
    std::iota(wide_vars.begin(), wide_vars.end(), std::size_t{0});
    CHECK_THROWS_AS(co_information(wide, wide_vars), std::invalid_argument);
}
