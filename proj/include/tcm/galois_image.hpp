#pragma once

// C_N = (O/NO)^x realized as 2x2 matrices mod N via the embedding
//   alpha + beta e2  ->  [[alpha, beta (D - D^2)/4], [beta, alpha + beta D]],
// where e2 = (D + sqrt D)/2. Exhaustive checks of the homothety and kernel-size
// facts and of the point-stabilizer bounds behind the torsion-squaring rule.

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "tcm/arith.hpp"
#include "tcm/errors.hpp"
#include "tcm/ideal_arith.hpp"
#include "tcm/quad_core.hpp"

namespace tcm {

inline constexpr u64 kGaloisModulusCap = 200;

class GaloisMatrix {
public:
    using Entries = std::array<std::array<i64, 2>, 2>;

    GaloisMatrix(Entries e, i64 modulus) : e_(e), n_(modulus) {}

    // The image of alpha + beta e2 in M_2(Z/NZ).
    static GaloisMatrix from_element(const Discriminant& d, i64 alpha, i64 beta, i64 modulus) {
        const i64 D = d.value();
        const i64 off = (D - D * D) / 4;  // exact since D = 0, 1 mod 4
        return GaloisMatrix({{{mod(alpha, modulus), mod(mod(beta, modulus) * mod(off, modulus), modulus)},
                              {mod(beta, modulus), mod(alpha + mod(beta, modulus) * mod(D, modulus), modulus)}}},
                            modulus);
    }

    static GaloisMatrix identity(i64 modulus) { return homothety(1, modulus); }

    static GaloisMatrix homothety(i64 alpha, i64 modulus) {
        const i64 a = mod(alpha, modulus);
        return GaloisMatrix({{{a, 0}, {0, a}}}, modulus);
    }

    i64 modulus() const noexcept { return n_; }
    const Entries& entries() const noexcept { return e_; }
    i64 operator()(int r, int c) const noexcept { return e_[r][c]; }

    i64 determinant() const noexcept {
        return mod(e_[0][0] * e_[1][1] - e_[0][1] * e_[1][0], n_);
    }

    GaloisMatrix reduce(i64 modulus) const {
        Entries r{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r[i][j] = mod(e_[i][j], modulus);
        return GaloisMatrix(r, modulus);
    }

    std::array<i64, 2> apply(i64 x, i64 y) const noexcept {
        return {mod(e_[0][0] * x + e_[0][1] * y, n_), mod(e_[1][0] * x + e_[1][1] * y, n_)};
    }

    friend GaloisMatrix operator*(const GaloisMatrix& a, const GaloisMatrix& b) {
        Entries r{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r[i][j] = mod(a.e_[i][0] * b.e_[0][j] + a.e_[i][1] * b.e_[1][j], a.n_);
        return GaloisMatrix(r, a.n_);
    }

    friend bool operator==(const GaloisMatrix&, const GaloisMatrix&) = default;

    // Injective for entries in [0, N).
    u64 key() const noexcept {
        const u64 n = static_cast<u64>(n_);
        return ((static_cast<u64>(e_[0][0]) * n + static_cast<u64>(e_[0][1])) * n +
                static_cast<u64>(e_[1][0])) * n + static_cast<u64>(e_[1][1]);
    }

private:
    Entries e_;
    i64 n_;
};

struct TorsionVector {
    i64 x;
    i64 y;
    i64 modulus;

    // Additive order in (Z/NZ)^2.
    i64 order() const noexcept {
        const i64 g = std::gcd(std::gcd(x, y), modulus);
        return modulus / g;
    }
};

namespace detail {

inline void check_modulus_cap(u64 n, u64 cap) {
    if (n > cap)
        throw cap_exceeded("galois modulus cap", static_cast<long long>(cap), static_cast<long long>(n));
}

inline i64 norm_form(i64 D, i64 c, i64 alpha, i64 beta, i64 n) {
    return mod(alpha * alpha + mod(D, n) * alpha % n * beta + mod(c, n) * beta % n * beta, n);
}

}  // namespace detail

// All of C_N, ordered by (alpha, beta).
inline std::vector<GaloisMatrix> cn_elements(const Discriminant& d, u64 n, u64 cap = kGaloisModulusCap) {
    if (n < 2) throw std::invalid_argument("cn_elements: N must be >= 2");
    detail::check_modulus_cap(n, cap);
    const i64 N = static_cast<i64>(n);
    const i64 D = d.value();
    const i64 c = (D * D - D) / 4;
    std::vector<GaloisMatrix> out;
    for (i64 alpha = 0; alpha < N; ++alpha)
        for (i64 beta = 0; beta < N; ++beta)
            if (std::gcd(detail::norm_form(D, c, alpha, beta, N), N) == 1)
                out.push_back(GaloisMatrix::from_element(d, alpha, beta, N));
    return out;
}

inline std::unordered_set<u64> element_keys(const std::vector<GaloisMatrix>& g) {
    std::unordered_set<u64> keys;
    keys.reserve(g.size() * 2);
    for (const auto& m : g) keys.insert(m.key());
    return keys;
}

inline bool verify_homotheties(const Discriminant& d, u64 n, u64 cap = kGaloisModulusCap) {
    const auto keys = element_keys(cn_elements(d, n, cap));
    const i64 N = static_cast<i64>(n);
    for (i64 a = 1; a < N; ++a) {
        if (std::gcd(a, N) != 1) continue;
        if (!keys.contains(GaloisMatrix::homothety(a, N).key())) return false;
    }
    return true;
}

struct ReductionReport {
    u64 kernel_size;  // #{g in C_{p^(A+B)} : g = I mod p^A}
    u64 image_size;   // #reduction(C_{p^(A+B)})
    u64 target_size;  // #C_{p^A}
    bool surjective() const noexcept { return image_size == target_size; }
};

// The reduction map C_{p^(A+B)} -> C_{p^A}.
inline ReductionReport reduction_report(const Discriminant& d, u64 p, unsigned A, unsigned B,
                                        u64 cap = kGaloisModulusCap) {
    if (!is_prime(p)) throw not_prime(std::to_string(p) + " is not prime");
    if (A < 1 || B < 1) throw std::invalid_argument("reduction_report: A, B must be >= 1");
    const u64 top = ipow(p, A + B);
    detail::check_modulus_cap(top, cap);
    const i64 low = static_cast<i64>(ipow(p, A));
    const auto source = cn_elements(d, top, cap);
    const auto target = cn_elements(d, static_cast<u64>(low), cap);
    const auto identity = GaloisMatrix::identity(low);
    std::unordered_set<u64> image;
    u64 kernel = 0;
    for (const auto& g : source) {
        const auto r = g.reduce(low);
        image.insert(r.key());
        if (r == identity) ++kernel;
    }
    return {kernel, image.size(), target.size()};
}

inline u64 kernel_size(const Discriminant& d, u64 p, unsigned A, unsigned B, u64 cap = kGaloisModulusCap) {
    const auto r = reduction_report(d, p, A, B, cap);
    if (!r.surjective())
        throw std::logic_error("reduction C_{p^(A+B)} -> C_{p^A} is not surjective");
    return r.kernel_size;
}

struct GaloisImageReport {
    Discriminant disc;
    u64 p;
    unsigned A;
    SplitType split_type;
    u64 max_stabilizer_order;
    u64 expected_divisor;

    bool consistent() const noexcept { return expected_divisor % max_stabilizer_order == 0; }
};

// A = 0: max over nonzero v in F_p^2 of #{g in C_p : g v = v};
//        expected divisor p - 1 / 1 / p for split / inert / ramified.
// A >= 1: max over v of order p^(A+1) of #{g in ker(C_{p^(A+1)} -> C_{p^A}) : g v = v};
//        expected divisor p.
inline GaloisImageReport max_stabilizer_order(const Discriminant& d, u64 p, unsigned A,
                                              u64 cap = kGaloisModulusCap) {
    const SplitType type = splitting_type(d, p);
    const u64 top = ipow(p, A + 1);
    detail::check_modulus_cap(top, cap);
    const i64 N = static_cast<i64>(top);

    std::vector<GaloisMatrix> group = cn_elements(d, top, cap);
    if (A >= 1) {
        const i64 low = static_cast<i64>(ipow(p, A));
        const auto identity = GaloisMatrix::identity(low);
        std::erase_if(group, [&](const GaloisMatrix& g) { return !(g.reduce(low) == identity); });
    }

    u64 best = 0;
    for (i64 x = 0; x < N; ++x) {
        for (i64 y = 0; y < N; ++y) {
            const TorsionVector v{x, y, N};
            if (v.order() != N) continue;
            u64 fixed = 0;
            for (const auto& g : group) {
                const auto w = g.apply(x, y);
                if (w[0] == x && w[1] == y) ++fixed;
            }
            best = std::max(best, fixed);
        }
    }

    u64 expected = p;
    if (A == 0) {
        if (type == SplitType::Split) expected = p - 1;
        if (type == SplitType::Inert) expected = 1;
    }
    return {d, p, A, type, best, expected};
}

// Torsion-squaring rule: Z/a x Z/ab in E(F) forces [F(E[ab]) : F] <= b.
constexpr u64 squaring_degree_bound(u64 /*a*/, u64 b) { return b; }

}  // namespace tcm
