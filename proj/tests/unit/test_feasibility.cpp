#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcm/feasibility.hpp"

using namespace tcm;

namespace {

const std::vector<u64>& phi_table() {
    static const auto t = oracle::phi_table_by_divisor_sum(500000);
    return t;
}

}  // namespace

TEST(RelaxedFeasible, Examples) {
    EXPECT_TRUE(relaxed_feasible(1, 1, 2));
    EXPECT_TRUE(relaxed_feasible(1, 2, 1));
    EXPECT_FALSE(relaxed_feasible(1, 1, 66));
    EXPECT_TRUE(relaxed_feasible(1, 1, 60));
}

TEST(TorsionBound, SmallDegreesMatchGridSearch) {
    for (u64 d : {1, 2}) {
        const auto grid = oracle::torsion_bound_grid(d, 50, 10000, phi_table());
        const auto rec = torsion_bound(d);
        EXPECT_EQ(rec.bound, grid.size) << d;
        EXPECT_EQ(rec.best_shape.a, grid.a);
        EXPECT_EQ(rec.best_shape.b, grid.b);
    }
    EXPECT_EQ(torsion_bound(1).bound, 60u);
    EXPECT_EQ(torsion_bound(1).best_shape, (TorsionShape{1, 60}));
    EXPECT_EQ(torsion_bound(2).bound, 210u);
    EXPECT_EQ(torsion_bound(2).best_shape, (TorsionShape{1, 210}));
}

TEST(TorsionBound, MatchesGridSearchUpToTen) {
    for (u64 d = 3; d <= 10; ++d) {
        const u64 b_max = product_cutoff(6.0L * d);
        ASSERT_LT(12 * d * b_max, phi_table().size());
        const auto grid = oracle::torsion_bound_grid(d, 12 * d, b_max, phi_table());
        ASSERT_EQ(torsion_bound(d).bound, grid.size) << d;
    }
}

TEST(TorsionBound, RangeAgreesWithSinglePoints) {
    const auto recs = bound_records(1, 60);
    for (u64 d : {1, 7, 33, 60}) {
        const auto one = torsion_bound(d);
        EXPECT_EQ(recs[d - 1].bound, one.bound);
        EXPECT_EQ(recs[d - 1].best_shape, one.best_shape);
    }
}

TEST(TorsionBound, NondecreasingAndFeasible) {
    const auto recs = bound_records(1, 2000);
    u64 prev = 0;
    for (const auto& r : recs) {
        ASSERT_GE(r.bound, prev) << r.d;
        ASSERT_GE(r.bound, 6u);
        ASSERT_EQ(r.bound, r.best_shape.size());
        ASSERT_TRUE(relaxed_feasible(r.d, r.best_shape.a, r.best_shape.b));
        ASSERT_LE(r.best_shape.a, a_cutoff(r.d));
        prev = r.bound;
    }
}

TEST(TorsionBound, WorkerCountDoesNotChangeResult) {
    const auto a = bound_records(1, 300, 1);
    const auto b = bound_records(1, 300, 7);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].bound, b[i].bound);
        EXPECT_EQ(a[i].best_shape, b[i].best_shape);
    }
}

TEST(TorsionBound, RejectsBadRange) {
    EXPECT_THROW(bound_records(5, 3), std::invalid_argument);
    EXPECT_THROW(bound_records(0, 3), std::invalid_argument);
}

TEST(ProductCutoff, TotientFloorHolds) {
    const auto& phi = phi_table();
    for (u64 n = 3; n < phi.size(); ++n)
        ASSERT_GT(static_cast<long double>(phi[n]), n / totient_denominator(static_cast<long double>(n))) << n;
    // the one n where the 2.50637 constant fails
    const u64 n = 223092870;
    EXPECT_EQ(euler_phi(n), 36495360u);
    EXPECT_GT(static_cast<long double>(euler_phi(n)), n / totient_denominator(static_cast<long double>(n)));
}

TEST(ProductCutoff, NothingFeasiblePastTheCutoff) {
    const auto& phi = phi_table();
    for (u64 d : {1, 2, 5, 20, 100}) {
        const u64 cut = product_cutoff(6.0L * d);
        ASSERT_LT(cut, phi.size());
        for (u64 n = cut + 1; n < std::min<u64>(phi.size(), 4 * cut); ++n)
            ASSERT_GT(phi[n] * phi[n], 6 * d * n) << d << " " << n;
    }
}

TEST(ACutoff, FeasibleShapesStayBelow) {
    for (u64 d : {1, 2, 3, 10, 40}) {
        for (const auto& s : relaxed_region(d)) ASSERT_LE(s.a, a_cutoff(d));
        // sample just past the cutoff
        for (u64 a = a_cutoff(d) + 1; a <= a_cutoff(d) + 50; ++a)
            for (u64 b = 1; b <= 50; ++b) ASSERT_FALSE(relaxed_feasible(d, a, b)) << d << " " << a << " " << b;
    }
}

TEST(RelaxedRegion, ContainsTheGridSolutions) {
    const auto& phi = phi_table();
    for (u64 d : {1, 2, 4}) {
        std::size_t expected = 0;
        for (u64 a = 1; a <= 50; ++a)
            for (u64 b = 1; b <= 10000; ++b)
                if (phi[a * b] * phi[a * b] <= 6 * b * d) ++expected;
        EXPECT_EQ(relaxed_region(d).size(), expected) << d;
    }
}

TEST(ExplicitConstant, SinglePoint) {
    const auto c = explicit_constant(3, 3);
    const double expected = static_cast<double>(torsion_bound(3).bound) / (3.0 * std::log(std::log(3.0)));
    EXPECT_DOUBLE_EQ(c.value, expected);
    EXPECT_EQ(c.argmax_d, 3u);
    EXPECT_THROW(explicit_constant(2, 5), std::invalid_argument);
}

TEST(ExplicitConstant, FinitePositiveAndMonotoneInTheRange) {
    const auto small = explicit_constant(3, 100);
    EXPECT_TRUE(std::isfinite(small.value));
    EXPECT_GT(small.value, 0.0);
    EXPECT_GE(small.argmax_d, 3u);
    EXPECT_LE(small.argmax_d, 100u);
    EXPECT_GE(explicit_constant(3, 300).value, small.value);
    EXPECT_LE(explicit_constant(10, 100).value, small.value);
}

TEST(RefinedTable, Examples) {
    const auto rows = refined_table(1, 4);
    auto find = [&](i64 D, u64 a, u64 b) -> const FeasibilityRow* {
        for (const auto& r : rows)
            if (r.disc == D && r.a == a && r.b == b) return &r;
        return nullptr;
    };
    const auto* r21 = find(-4, 2, 1);
    ASSERT_NE(r21, nullptr);
    EXPECT_EQ(r21->lhs, Rational(2, 6));
    EXPECT_TRUE(r21->feasible);
    const auto* r11 = find(-4, 1, 1);
    ASSERT_NE(r11, nullptr);
    EXPECT_EQ(r11->lhs, Rational(1, 6));
    EXPECT_TRUE(r11->feasible);

    const auto wide = refined_table(1, 23);
    bool seen = false;
    for (const auto& r : wide) {
        if (r.disc != -23 || r.a != 1 || r.b != 5) continue;
        seen = true;
        // 5 is inert in Q(sqrt -23): phi_K = 24, h = 3
        EXPECT_EQ(kronecker(Discriminant(-23), 5), -1);
        EXPECT_EQ(r.lhs, Rational(3 * 24, 30));
        EXPECT_FALSE(r.feasible);
    }
    EXPECT_TRUE(seen);
}

TEST(RefinedTable, SortedAndConsistentWithRelaxation) {
    const auto rows = refined_table(2, 60);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const u64 s0 = rows[i - 1].a * rows[i - 1].a * rows[i - 1].b;
        const u64 s1 = rows[i].a * rows[i].a * rows[i].b;
        ASSERT_GE(s0, s1);
        if (s0 == s1) { ASSERT_GE(rows[i - 1].disc, rows[i].disc); }
    }
    for (const auto& r : rows) {
        // exact condition implies the relaxed one
        if (r.feasible) { ASSERT_TRUE(relaxed_feasible(2, r.a, r.b)); }
        const Discriminant D(r.disc);
        ASSERT_EQ(r.lhs, Rational(static_cast<i64>(class_number(D) * phi_K_of_N(D, r.a * r.b)), static_cast<i64>(6 * r.b)));
    }
}

TEST(RefinedTable, CapMustCoverAField) {
    EXPECT_THROW(refined_table(1, 2), std::invalid_argument);
}

TEST(ChainAudit, Examples) {
    const auto ok = chain_audit(3, Discriminant(-4), 5, 1);
    ASSERT_EQ(ok.steps.size(), 5u);
    EXPECT_FALSE(ok.first_failure);
    EXPECT_EQ(ok.steps[0].lhs, Rational(6));
    EXPECT_EQ(ok.steps[0].rhs, Rational(16, 3));

    const auto bad = chain_audit(1, Discriminant(-4), 5, 1);
    ASSERT_TRUE(bad.first_failure);
    EXPECT_EQ(*bad.first_failure, 0u);
    EXPECT_EQ(bad.steps[0].label, "2d >= h phi_K(a O_K)/3");

    const auto trivial = chain_audit(1, Discriminant(-4), 1, 1);
    EXPECT_FALSE(trivial.first_failure);
    for (const auto& s : trivial.steps) EXPECT_TRUE(s.holds);
}

TEST(ChainAudit, LastStepFollowsFromTheFourth) {
    for (const auto& D : fundamental_discriminants(50)) {
        for (u64 a = 1; a <= 6; ++a) {
            for (u64 b = 1; b <= 6; ++b) {
                const auto t = chain_audit(4, D, a, b);
                if (t.steps[3].holds) { ASSERT_TRUE(t.steps[4].holds); }
            }
        }
    }
}
