#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcm/analytics.hpp"

using namespace tcm;

TEST(MertensProduct, Examples) {
    EXPECT_DOUBLE_EQ(mertens_product(2).value, 0.5);
    EXPECT_NEAR(mertens_product(10).value, 8.0 / 35.0, 1e-15);
    EXPECT_EQ(mertens_product(10).terms, 4u);
    EXPECT_THROW(mertens_product(1), std::invalid_argument);
}

TEST(MertensProduct, AsymptoticAtOneMillion) {
    const auto p = mertens_product(1000000);
    const double normalized = p.value * std::exp(std::numbers::egamma) * std::log(1e6);
    EXPECT_NEAR(normalized, 1.0, 0.02);
    EXPECT_EQ(p.terms, 78498u);
}

TEST(MertensProduct, CompensatedPathAgreesWithPlainProduct) {
    // just above the switch, compare against a direct long double product
    const u64 x = 200000;
    long double direct = 1.0L;
    for (u64 p = 2; p <= x; ++p)
        if (oracle::is_prime(p)) direct *= 1.0L - 1.0L / p;
    EXPECT_NEAR(mertens_product(x).value / static_cast<double>(direct), 1.0, 1e-12);
}

TEST(CharEulerProduct, Examples) {
    EXPECT_DOUBLE_EQ(char_euler_product(Discriminant(-4), 2).value, 1.0);
    EXPECT_NEAR(char_euler_product(Discriminant(-4), 5).value, 16.0 / 15.0, 1e-15);
    const double inv = 1.0 / char_euler_product(Discriminant(-163), 10000).value;
    EXPECT_NEAR(inv / l1_from_class_number(Discriminant(-163)), 1.0, 0.10);
    EXPECT_THROW(char_euler_product(Discriminant(-12), 100), not_fundamental);
}

TEST(L1FromClassNumber, Examples) {
    EXPECT_NEAR(l1_from_class_number(Discriminant(-4)), std::numbers::pi / 4, 1e-15);
    EXPECT_NEAR(l1_from_class_number(Discriminant(-3)), 2 * std::numbers::pi / (6 * std::sqrt(3.0)), 1e-15);
    EXPECT_NEAR(l1_from_class_number(Discriminant(-3)), 0.6046, 1e-4);
    EXPECT_NEAR(l1_from_class_number(Discriminant(-23)), 3 * std::numbers::pi / std::sqrt(23.0), 1e-15);
    EXPECT_NEAR(l1_from_class_number(Discriminant(-23)), 1.9652, 1e-4);
}

TEST(L1FromClassNumber, MatchesPartialSeries) {
    // sum_{n <= N} chi(n)/n with chi tabulated over one period; the tail is below |D|/N
    for (i64 v : {-3, -4, -7, -8, -23, -84}) {
        const i64 m = -v;
        std::vector<int> chi(m);
        for (i64 r = 0; r < m; ++r) chi[r] = r == 0 ? 0 : oracle::kronecker_by_table(v, r);
        double s = 0.0;
        const i64 N = m * 100000;
        for (i64 n = 1; n <= N; ++n) s += chi[n % m] / static_cast<double>(n);
        EXPECT_NEAR(s, l1_from_class_number(Discriminant(v)), 1e-4) << v;
    }
}

TEST(CharSumS, Examples) {
    EXPECT_DOUBLE_EQ(char_sum_S(Discriminant(-4), 2), 0.0);
    EXPECT_NEAR(char_sum_S(Discriminant(-4), 5), std::log(5.0) - std::log(3.0), 1e-15);
    EXPECT_LT(std::abs(char_sum_S(Discriminant(-4), 100000)) / 1e5, 0.05);
}

TEST(CharSumS, SmallForEveryFieldAtLargeT) {
    for (const auto& D : fundamental_discriminants(60))
        EXPECT_LT(std::abs(char_sum_S(D, 200000)) / 2e5, 0.05) << D.value();
}

TEST(PhiBoundScan, Examples) {
    const auto s = phi_bound_scan(Discriminant(-4), 4);
    EXPECT_NEAR(s.min_value, 2.0 * std::log(std::log(4.0)) / 4.0, 1e-15);
    EXPECT_EQ(s.argmin_ideal.to_string(), "P2^2");

    const auto g = phi_bound_scan(Discriminant(-4), 100);
    EXPECT_GT(g.min_value, 0.0);
    for (const auto& f : g.argmin_ideal.factors()) EXPECT_LE(f.prime.p, 13u);

    EXPECT_GT(phi_bound_scan(Discriminant(-3), 100).min_value, 0.0);
    EXPECT_THROW(phi_bound_scan(Discriminant(-4), 2), std::invalid_argument);
}

TEST(PhiBoundScan, MinimumIsAttainedValue) {
    for (i64 v : {-3, -4, -7, -15, -20}) {
        const Discriminant D(v);
        const auto s = phi_bound_scan(D, 2000);
        const double n = static_cast<double>(ideal_norm(s.argmin_ideal));
        const double h = static_cast<double>(class_number(D));
        EXPECT_DOUBLE_EQ(s.min_value, h * phi_K(s.argmin_ideal) * std::log(std::log(n)) / n);
        for (const auto& c : ideals_up_to_norm(D, 2000)) {
            const double m = static_cast<double>(ideal_norm(c));
            if (m < 3) continue;
            ASSERT_LE(s.min_value, h * phi_K(c) * std::log(std::log(m)) / m);
        }
    }
}

TEST(PhiFloor, SerialAndParallelAgree) {
    const auto a = phi_floor(40, 2000, 1);
    const auto b = phi_floor(40, 2000, 5);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.at.disc, b.at.disc);
    EXPECT_GT(a.value, 0.0);
}

TEST(LandauCheck, Examples) {
    const auto g = landau_liminf_check(Discriminant(-4), 10000);
    EXPECT_NEAR(g.target, std::exp(-std::numbers::egamma) / (std::numbers::pi / 4), 1e-15);
    EXPECT_GT(g.empirical_min_tail, 0.0);
    EXPECT_LE(g.empirical_min_tail, 3 * g.target);
    EXPECT_NEAR(g.empirical_min_tail, 0.567231, 1e-6);

    const auto e = landau_liminf_check(Discriminant(-3), 10000);
    EXPECT_GT(e.empirical_min_tail, 0.0);
    EXPECT_GT(e.target, 0.0);
    EXPECT_THROW(landau_liminf_check(Discriminant(-4), 99), std::invalid_argument);
}

TEST(LandauCheck, ArgminLiesInTheTail) {
    const auto g = landau_liminf_check(Discriminant(-7), 5000);
    const u64 n = ideal_norm(g.argmin_ideal);
    EXPECT_GE(10 * n, 5000u);
    EXPECT_LE(n, 5000u);
}

TEST(SplitPrimeProduct, PhiOverNormIsTheSplitMertensFactor) {
    // For c = product of all split primes up to y, phi_K(c)/|c| = prod (1 - 1/p).
    const Discriminant D(-4);
    auto c = FactoredIdeal::unit(D);
    double expected = 1.0;
    for (u64 p = 2; p <= 40; ++p) {
        if (!oracle::is_prime(p) || splitting_type(D, p) != SplitType::Split) continue;
        const auto q = primes_above(D, p)[0];
        c = c * FactoredIdeal::prime_power(D, q, 1);
        expected *= 1.0 - 1.0 / p;
    }
    EXPECT_NEAR(static_cast<double>(phi_K(c)) / ideal_norm(c), expected, 1e-15);
}
