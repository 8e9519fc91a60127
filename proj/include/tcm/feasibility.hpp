#pragma once

// Exhaustive feasibility search over torsion shapes Z/a x Z/ab.
//
// A shape can occur on a K-CM curve over a degree-d field only if
//     d >= h_K phi_K(ab O_K) / (6b).
// Relaxing h_K >= 1 and phi_K(ab O_K) >= phi(ab)^2 gives a condition free of K:
//     phi(ab)^2 <= 6 b d,
// and B(d) = max a^2 b over shapes meeting it is an upper bound on CM torsion
// in degree d.
//
// Search region. With n = ab the condition reads a <= 6 d n / phi(n)^2, and
// since a >= 1 every feasible n satisfies phi(n)^2 <= 6 d n. Using
//     phi(n) > n / f(n),  f(n) = e^gamma log log n + 3 / log log n   (n >= 3)
// and that n / f(n)^2 is increasing for n >= 3, all feasible n lie below the
// crossing point of n / f(n)^2 = 6d, computed by product_cutoff(). Each (a, n)
// with a | n then has an exact minimal degree ceil(phi(n)^2 / (6b)), so one pass
// over n settles B(d) for every d up to d_max at once.

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "tcm/arith.hpp"
#include "tcm/galois_image.hpp"
#include "tcm/ideal_arith.hpp"
#include "tcm/parallel.hpp"
#include "tcm/quad_core.hpp"
#include "tcm/ray_class_bounds.hpp"
#include "tcm/sieve.hpp"

namespace tcm {

struct TorsionShape {
    u64 a;
    u64 b;

    u64 size() const noexcept { return a * a * b; }
    friend bool operator==(const TorsionShape&, const TorsionShape&) = default;
};

inline bool relaxed_feasible(u64 d, u64 a, u64 b) {
    const u128 phi = euler_phi(a * b);
    return phi * phi <= u128{6} * b * d;
}

// f(n) with phi(n) > n / f(n) for every n >= 3.
inline long double totient_denominator(long double n) {
    const long double ll = std::log(std::log(n));
    return std::exp(static_cast<long double>(std::numbers::egamma)) * ll + 3.0L / ll;
}

// n / f(n)^2, a strict lower bound for phi(n)^2 / n when n >= 3.
inline long double totient_ratio_floor(long double n) {
    const long double f = totient_denominator(n);
    return n / (f * f);
}

// Largest n that can satisfy phi(n)^2 <= r n; every larger n provably fails.
inline u64 product_cutoff(long double r) {
    constexpr long double slack = 1e-12L;
    if (totient_ratio_floor(3.0L) > r) return 2;
    // pass 1: over-approximate by doubling
    long double hi = 4.0L;
    while (totient_ratio_floor(hi) <= r) hi *= 2.0L;
    // pass 2: refine the crossing by bisection
    long double lo = hi / 2.0L < 3.0L ? 3.0L : hi / 2.0L;
    for (int i = 0; i < 200 && hi - lo > 0.5L; ++i) {
        const long double mid = (lo + hi) / 2.0L;
        (totient_ratio_floor(mid) <= r ? lo : hi) = mid;
    }
    u64 n = static_cast<u64>(std::ceil(hi * (1.0L + slack))) + 1;
    while (totient_ratio_floor(static_cast<long double>(n)) <= r * (1.0L + slack)) ++n;
    return n;
}

// a <= 12 d for every feasible shape, from phi(n) >= sqrt(n / 2).
constexpr u64 a_cutoff(u64 d) { return 12 * d; }

struct BoundRecord {
    u64 d;
    TorsionShape best_shape;
    u64 bound;
    std::optional<double> ratio;  // bound / (d log log d), for d >= 3
};

inline std::optional<double> bound_ratio(u64 d, u64 bound) {
    if (d < 3) return std::nullopt;
    const double dd = static_cast<double>(d);
    return static_cast<double>(bound) / (dd * std::log(std::log(dd)));
}

namespace detail {

struct Candidate {
    u64 value = 0;
    u64 a = 0;
    u64 b = 0;

    // Larger a^2 b wins; ties go to the smallest a, then the smallest b.
    bool beats(const Candidate& o) const noexcept {
        if (value != o.value) return value > o.value;
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

inline void offer(Candidate& slot, const Candidate& c) {
    if (slot.value == 0 || c.beats(slot)) slot = c;
}

// best[k] = best shape whose minimal admissible degree is exactly k, k <= d_max.
inline std::vector<Candidate> best_by_min_degree(u64 d_max, unsigned workers) {
    const u64 n_max = product_cutoff(6.0L * static_cast<long double>(d_max));
    const u64 a_max = a_cutoff(d_max);
    const std::vector<u64> base = primes_up_to(isqrt(n_max) + 1);
    const u64 seg = detail::kSegment;
    const std::size_t blocks = static_cast<std::size_t>(n_max / seg + 1);

    // bound memory held by per-worker tables
    const u64 table_budget = u64{1} << 24;
    workers = static_cast<unsigned>(std::max<u64>(1, std::min<u64>(workers, table_budget / (d_max + 1))));

    std::vector<std::vector<Candidate>> local(workers);
    parallel_stripes(blocks, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
        auto& best = local[w];
        best.assign(d_max + 1, Candidate{});
        std::vector<u64> phi, rest;
        for (std::size_t blk = begin; blk < end; ++blk) {
            const u64 lo = std::max<u64>(1, blk * seg);
            const u64 hi = std::min<u64>(n_max + 1, (blk + 1) * seg);
            if (lo >= hi) continue;
            euler_phi_segment(lo, hi, base, phi, rest);
            u64 a_lim = a_max;
            if (lo >= 3) {
                // feasible (a, n) with n >= lo has a < 6 d_max / totient_ratio_floor(lo)
                const long double cap = 6.0L * d_max / totient_ratio_floor(static_cast<long double>(lo));
                a_lim = std::min<u64>(a_max, static_cast<u64>(cap * (1.0L + 1e-12L)) + 1);
            }
            for (u64 a = 1; a <= a_lim; ++a) {
                u64 n = std::max((lo + a - 1) / a * a, a);
                for (; n < hi; n += a) {
                    const u64 b = n / a;
                    const u128 ph = phi[n - lo];
                    const u128 sixb = u128{6} * b;
                    u128 req = (ph * ph + sixb - 1) / sixb;
                    if (req == 0) req = 1;
                    if (req > d_max) continue;
                    offer(best[static_cast<std::size_t>(req)], {a * n, a, b});
                }
            }
        }
    });

    std::vector<Candidate> merged(d_max + 1);
    for (const auto& t : local)  // workers beyond the block count never ran
        for (u64 k = 0; k < t.size(); ++k)
            if (t[k].value) offer(merged[k], t[k]);
    return merged;
}

}  // namespace detail

// B(d) for every d in [d_min, d_max].
inline std::vector<BoundRecord> bound_records(u64 d_min, u64 d_max, unsigned workers = thread_count()) {
    if (d_min < 1 || d_min > d_max) throw std::invalid_argument("bound_records: need 1 <= d_min <= d_max");
    const auto best = detail::best_by_min_degree(d_max, workers);
    std::vector<BoundRecord> out;
    out.reserve(d_max - d_min + 1);
    detail::Candidate running;
    for (u64 d = 1; d <= d_max; ++d) {
        if (best[d].value) detail::offer(running, best[d]);
        if (d >= d_min) out.push_back({d, {running.a, running.b}, running.value, bound_ratio(d, running.value)});
    }
    return out;
}

inline BoundRecord torsion_bound(u64 d) { return bound_records(d, d).front(); }

struct ExplicitConstant {
    double value;
    u64 argmax_d;
};

inline ExplicitConstant explicit_constant_of(const std::vector<BoundRecord>& records) {
    ExplicitConstant c{0.0, 0};
    for (const auto& r : records)
        if (r.ratio && *r.ratio > c.value) c = {*r.ratio, r.d};
    return c;
}

// sup of B(d) / (d log log d) over [d_min, d_max], d_min >= 3.
inline ExplicitConstant explicit_constant(u64 d_min, u64 d_max) {
    if (d_min < 3 || d_min > d_max) throw std::invalid_argument("explicit_constant: need 3 <= d_min <= d_max");
    return explicit_constant_of(bound_records(d_min, d_max));
}

// Every shape meeting the relaxed condition at degree d, ordered by (a, b).
inline std::vector<TorsionShape> relaxed_region(u64 d) {
    const u64 n_max = product_cutoff(6.0L * static_cast<long double>(d));
    std::vector<TorsionShape> out;
    for (u64 a = 1; a <= std::min(a_cutoff(d), n_max); ++a)
        for (u64 b = 1; a * b <= n_max; ++b)
            if (relaxed_feasible(d, a, b)) out.push_back({a, b});
    return out;
}

struct FeasibilityRow {
    i64 disc;
    u64 a;
    u64 b;
    Rational lhs;  // h phi_K(ab O_K) / (6b)
    bool feasible; // lhs <= d
};

// Exact condition per fundamental D with |D| <= disc_cap over the relaxed region.
// Diagnostic only: it says nothing about discriminants beyond the cap.
template <class ClassNumberFn>
std::vector<FeasibilityRow> refined_table(u64 d, u64 disc_cap, ClassNumberFn&& class_number_of) {
    if (disc_cap < 3) throw std::invalid_argument("refined_table: D_cap must be >= 3");
    const auto region = relaxed_region(d);
    std::vector<FeasibilityRow> rows;
    for (const auto& D : fundamental_discriminants(disc_cap)) {
        const u64 h = class_number_of(D);
        for (const auto& s : region) {
            const Rational lhs(static_cast<i64>(h * phi_K_of_N(D, s.a * s.b)), static_cast<i64>(6 * s.b));
            rows.push_back({D.value(), s.a, s.b, lhs, lhs <= Rational(static_cast<i64>(d))});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const FeasibilityRow& x, const FeasibilityRow& y) {
        const u64 sx = x.a * x.a * x.b, sy = y.a * y.a * y.b;
        if (sx != sy) return sx > sy;
        if (x.disc != y.disc) return x.disc > y.disc;  // smaller |D| first
        return x.a < y.a;
    });
    return rows;
}

inline std::vector<FeasibilityRow> refined_table(u64 d, u64 disc_cap) {
    return refined_table(d, disc_cap, [](const Discriminant& D) { return class_number(D); });
}

struct ChainStep {
    std::string label;
    Rational lhs;
    Rational rhs;
    bool holds;  // lhs >= rhs
};

struct ChainTrace {
    u64 d;
    i64 disc;
    u64 a;
    u64 b;
    std::vector<ChainStep> steps;
    std::optional<std::size_t> first_failure;
};

// Each inequality of the degree chain, evaluated exactly:
//   2d >= [K^(a O_K):Q] >= h phi_K(a O_K) / 3
//   [L:FK] <= b            (torsion squaring)
//   2bd >= [K^(ab O_K):Q] >= h phi_K(ab O_K) / 3
//   d >= h phi_K(ab O_K) / (6b)
//   6 (d/h) |ab O_K| / phi_K(ab O_K) >= a^2 b
inline ChainTrace chain_audit(u64 d, const Discriminant& D, u64 a, u64 b) {
    const auto K = Discriminant::fundamental(D.value());
    const u64 h = class_number(K);
    const auto ideal_a = principal_ideal(K, a);
    const auto ideal_ab = principal_ideal(K, a * b);
    const auto bounds_a = degree_bounds(K, ideal_a);
    const auto bounds_ab = degree_bounds(K, ideal_ab);
    const i64 phi_ab = static_cast<i64>(phi_K(ideal_ab));
    const i64 norm_ab = static_cast<i64>(ideal_norm(ideal_ab));
    const i64 di = static_cast<i64>(d), bi = static_cast<i64>(b), hi = static_cast<i64>(h);

    ChainTrace t{d, K.value(), a, b, {}, std::nullopt};
    auto step = [&](std::string label, Rational lhs, Rational rhs) {
        const bool ok = lhs >= rhs;
        if (!ok && !t.first_failure) t.first_failure = t.steps.size();
        t.steps.push_back({std::move(label), lhs, rhs, ok});
    };
    step("2d >= h phi_K(a O_K)/3", Rational(2 * di), bounds_a.lower_weak * Rational(2));
    step("b >= [L:FK]", Rational(bi), Rational(static_cast<i64>(squaring_degree_bound(a, b))));
    step("2bd >= h phi_K(ab O_K)/3", Rational(2 * bi * di), bounds_ab.lower_weak * Rational(2));
    step("d >= h phi_K(ab O_K)/(6b)", Rational(di), bounds_ab.lower_weak / Rational(bi));
    step("6 (d/h) |ab O_K|/phi_K(ab O_K) >= a^2 b", Rational(6 * di * norm_ab, hi * phi_ab),
         Rational(static_cast<i64>(a * a * b)));
    return t;
}

}  // namespace tcm
