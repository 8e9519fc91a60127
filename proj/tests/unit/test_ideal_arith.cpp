#include <map>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcm/ideal_arith.hpp"

using namespace tcm;

namespace {

const Discriminant kGauss(-4);

std::vector<u64> norms(const std::vector<FactoredIdeal>& ideals) {
    std::vector<u64> out;
    for (const auto& a : ideals) out.push_back(ideal_norm(a));
    return out;
}

}  // namespace

TEST(PrimesAbove, SplittingShapes) {
    const auto split = primes_above(kGauss, 5);
    ASSERT_EQ(split.size(), 2u);
    EXPECT_EQ(split[0].norm, 5u);
    EXPECT_EQ(split[1].norm, 5u);
    EXPECT_NE(split[0].conjugate_index, split[1].conjugate_index);

    const auto inert = primes_above(kGauss, 3);
    ASSERT_EQ(inert.size(), 1u);
    EXPECT_EQ(inert[0].norm, 9u);

    const auto ram = primes_above(kGauss, 2);
    ASSERT_EQ(ram.size(), 1u);
    EXPECT_EQ(ram[0].norm, 2u);

    EXPECT_THROW(primes_above(kGauss, 15), not_prime);
}

TEST(PrincipalIdeal, Examples) {
    const auto one = principal_ideal(kGauss, 1);
    EXPECT_TRUE(one.is_unit());
    EXPECT_EQ(ideal_norm(one), 1u);

    const auto two = principal_ideal(kGauss, 2);
    ASSERT_EQ(two.factors().size(), 1u);
    EXPECT_EQ(two.factors()[0].exponent, 2u);
    EXPECT_EQ(ideal_norm(two), 4u);

    const auto five = principal_ideal(kGauss, 5);
    ASSERT_EQ(five.factors().size(), 2u);
    EXPECT_EQ(ideal_norm(five), 25u);
}

TEST(PrincipalIdeal, RejectsNonFundamental) {
    EXPECT_THROW(principal_ideal(Discriminant(-12), 5), not_fundamental);
}

TEST(IdealNorm, Examples) {
    const auto p3 = primes_above(kGauss, 3)[0];
    EXPECT_EQ(ideal_norm(FactoredIdeal::prime_power(kGauss, p3, 2)), 81u);
}

TEST(IdealNorm, PrincipalIdealHasNormNSquared) {
    for (const auto& D : fundamental_discriminants(60))
        for (u64 n = 1; n <= 1000; ++n) ASSERT_EQ(ideal_norm(principal_ideal(D, n)), n * n);
}

TEST(PhiK, Examples) {
    EXPECT_EQ(phi_K(FactoredIdeal::unit(kGauss)), 1u);
    EXPECT_EQ(phi_K(principal_ideal(kGauss, 5)), 16u);
    EXPECT_EQ(phi_K(principal_ideal(kGauss, 2)), 2u);
    EXPECT_EQ(oracle::residue_units(-4, 5), 16u);
    EXPECT_EQ(oracle::residue_units(-4, 2), 2u);
}

TEST(PhiK, PrimePowerFormula) {
    for (const auto& D : fundamental_discriminants(40)) {
        for (u64 p : {2, 3, 5, 7, 11}) {
            for (const auto& q : primes_above(D, p)) {
                for (unsigned k = 1; k <= 4; ++k)
                    ASSERT_EQ(phi_K(FactoredIdeal::prime_power(D, q, k)), ipow(q.norm, k - 1) * (q.norm - 1));
            }
        }
    }
}

TEST(PhiKOfN, Examples) {
    EXPECT_EQ(phi_K_of_N(kGauss, 12), 64u);
    EXPECT_EQ(oracle::residue_units(-4, 12), 64u);
    EXPECT_EQ(phi_K_of_N(Discriminant(-23), 1), 1u);
    EXPECT_EQ(phi_K_of_N(Discriminant(-3), 3), 6u);
    EXPECT_EQ(oracle::residue_units(-3, 3), 6u);
}

TEST(PhiKOfN, EqualsPhiOfPrincipalIdeal) {
    for (const auto& D : fundamental_discriminants(100))
        for (u64 n = 1; n <= 500; ++n) ASSERT_EQ(phi_K_of_N(D, n), phi_K(principal_ideal(D, n)));
}

TEST(PhiKOfN, AtLeastEulerPhiSquaredWithEqualityIffAllSplit) {
    for (const auto& D : fundamental_discriminants(100)) {
        for (u64 n = 1; n <= 400; ++n) {
            const u64 phi = euler_phi(n);
            const u64 pk = phi_K_of_N(D, n);
            ASSERT_GE(pk, phi * phi);
            bool all_split = true;
            for (const auto& pp : factorize(n)) all_split &= kronecker(D, pp.p) == 1;
            if (n == 1) all_split = true;
            ASSERT_EQ(pk == phi * phi, all_split) << D.value() << " " << n;
        }
    }
}

TEST(BruteForcePhi, Examples) {
    EXPECT_EQ(brute_force_phi(kGauss, 5), 16u);
    EXPECT_EQ(brute_force_phi(kGauss, 1), 1u);
    EXPECT_EQ(brute_force_phi(Discriminant(-7), 3), 8u);
    EXPECT_EQ(oracle::residue_units(-7, 3), 8u);
    EXPECT_EQ(phi_K_of_N(Discriminant(-7), 3), 8u);
    EXPECT_EQ(splitting_type(Discriminant(-7), 3), SplitType::Inert);
    EXPECT_THROW(brute_force_phi(kGauss, 301), cap_exceeded);
    EXPECT_EQ(brute_force_phi(kGauss, 301, 400), phi_K_of_N(kGauss, 301));
}

TEST(BruteForcePhi, MatchesIndependentBasisCount) {
    for (i64 v = -3; v >= -40; --v) {
        if (mod(v, 4) > 1) continue;
        for (i64 n = 1; n <= 30; ++n)
            ASSERT_EQ(brute_force_phi(Discriminant(v), n), oracle::residue_units(v, n)) << v << " " << n;
    }
}

TEST(BruteForcePhi, MatchesFormulaOnFundamentalGrid) {
    for (const auto& D : fundamental_discriminants(40))
        for (u64 n = 1; n <= 60; ++n) ASSERT_EQ(phi_K_of_N(D, n), brute_force_phi(D, n)) << D.value() << " " << n;
}

TEST(PhiK, MultiplicativeOnCoprimeIdeals) {
    std::mt19937_64 rng(7);
    for (const auto& D : fundamental_discriminants(80)) {
        const auto ideals = ideals_up_to_norm(D, 400);
        std::uniform_int_distribution<std::size_t> pick(0, ideals.size() - 1);
        for (int trial = 0; trial < 200; ++trial) {
            const auto& a = ideals[pick(rng)];
            const auto& b = ideals[pick(rng)];
            bool coprime = true;
            for (const auto& f : a.factors())
                for (const auto& g : b.factors()) coprime &= !(f.prime == g.prime);
            if (!coprime) continue;
            ASSERT_EQ(phi_K(a * b), phi_K(a) * phi_K(b));
        }
    }
}

TEST(IdealsUpToNorm, Examples) {
    EXPECT_EQ(norms(ideals_up_to_norm(kGauss, 1)), (std::vector<u64>{1}));
    EXPECT_EQ(norms(ideals_up_to_norm(kGauss, 5)), (std::vector<u64>{1, 2, 4, 5, 5}));
    i64 expected = 0;
    for (u64 n = 1; n <= 100; ++n) expected += oracle::ideal_count_by_divisor_sum(-4, n);
    EXPECT_EQ(static_cast<i64>(ideals_up_to_norm(kGauss, 100).size()), expected);
}

TEST(IdealsUpToNorm, CountPerNormMatchesDedekindCoefficients) {
    for (i64 v : {-3, -4, -7, -8, -15, -20, -23, -24, -84}) {
        const Discriminant D(v);
        std::map<u64, i64> count;
        for (const auto& a : ideals_up_to_norm(D, 500)) ++count[ideal_norm(a)];
        for (u64 n = 1; n <= 500; ++n) {
            i64 r = 0;
            for (u64 m = 1; m <= n; ++m)
                if (n % m == 0) r += kronecker(D, m);
            ASSERT_EQ(count[n], r) << v << " " << n;
        }
    }
}

TEST(IdealsUpToNorm, OrderedDistinctAndRestartable) {
    IdealStream stream(Discriminant(-15), 300);
    std::vector<FactoredIdeal> first;
    while (auto a = stream.next()) first.push_back(*a);
    for (std::size_t i = 1; i < first.size(); ++i) {
        const u64 n0 = ideal_norm(first[i - 1]), n1 = ideal_norm(first[i]);
        ASSERT_LE(n0, n1);
        if (n0 == n1) {
            ASSERT_TRUE(compare_factorizations(first[i - 1], first[i]) < 0);
        }
    }
    stream.reset();
    std::size_t k = 0;
    while (auto a = stream.next()) ASSERT_EQ(*a, first[k++]);
    EXPECT_EQ(k, first.size());
}

TEST(FactoredIdeal, DivisibilityAndFormatting) {
    const auto a = principal_ideal(kGauss, 10);
    const auto b = principal_ideal(kGauss, 20);
    EXPECT_TRUE(a.divides(b));
    EXPECT_FALSE(b.divides(a));
    EXPECT_EQ(a.to_string(), "P2^2*P5a*P5b");
    EXPECT_EQ(principal_ideal(kGauss, 3).to_string(), "P3i");
    EXPECT_EQ(FactoredIdeal::unit(kGauss).to_string(), "(1)");
}
