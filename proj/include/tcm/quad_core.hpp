#pragma once

// Imaginary quadratic discriminants: fundamentality, the Kronecker character,
// unit counts and class numbers (reduced forms, plus the Dirichlet finite sum
// kept as an independent oracle).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "tcm/arith.hpp"
#include "tcm/errors.hpp"

namespace tcm {

inline void check_discriminant(i64 value) {
    if (value >= 0)
        throw invalid_discriminant("discriminant must be negative, got " + std::to_string(value));
    const i64 r = mod(value, 4);
    if (r != 0 && r != 1)
        throw invalid_discriminant("discriminant must be 0 or 1 mod 4, got " + std::to_string(value));
}

// Throws invalid_discriminant for values that are not discriminants at all;
// returns false for valid non-fundamental (order) discriminants.
inline bool is_fundamental(i64 value) {
    check_discriminant(value);
    const u64 n = static_cast<u64>(-value);
    if (mod(value, 4) == 1) return is_squarefree(n);
    const i64 m = value / 4;
    const i64 r = mod(m, 4);
    return (r == 2 || r == 3) && is_squarefree(n / 4);
}

class Discriminant {
public:
    // Any order discriminant.
    explicit Discriminant(i64 value) : value_(value), fundamental_(tcm::is_fundamental(value)) {}

    static Discriminant fundamental(i64 value) {
        Discriminant d(value);
        if (!d.is_fundamental())
            throw not_fundamental(std::to_string(value) + " is not a fundamental discriminant");
        return d;
    }

    i64 value() const noexcept { return value_; }
    u64 abs() const noexcept { return static_cast<u64>(-value_); }
    bool is_fundamental() const noexcept { return fundamental_; }

    friend bool operator==(const Discriminant& a, const Discriminant& b) noexcept {
        return a.value_ == b.value_;
    }

private:
    i64 value_;
    bool fundamental_;
};

// Fundamental discriminants D with lo <= |D| <= hi, ordered by |D|.
inline std::vector<Discriminant> fundamental_discriminants(u64 hi, u64 lo = 3) {
    std::vector<Discriminant> out;
    for (u64 n = std::max<u64>(lo, 3); n <= hi; ++n) {
        const i64 v = -static_cast<i64>(n);
        const i64 r = mod(v, 4);
        if ((r == 0 || r == 1) && is_fundamental(v)) out.emplace_back(v);
    }
    return out;
}

// Kronecker symbol (a|n) for n >= 1.
inline int kronecker(i64 a, u64 n) {
    if (n == 0) throw std::invalid_argument("kronecker: n must be >= 1");
    static constexpr int two_rule[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    if ((n & 1) == 0 && (a & 1) == 0) return 0;
    int k = 1;
    unsigned v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v & 1) k = two_rule[a & 7];
    // Jacobi symbol (a|n), n odd and positive.
    u64 x = static_cast<u64>(mod(a, static_cast<i64>(n)));
    while (x != 0) {
        unsigned t = 0;
        while ((x & 1) == 0) {
            x >>= 1;
            ++t;
        }
        if ((t & 1) && ((n & 7) == 3 || (n & 7) == 5)) k = -k;
        if ((x & 3) == 3 && (n & 3) == 3) k = -k;
        const u64 r = n % x;
        n = x;
        x = r;
    }
    return n == 1 ? k : 0;
}

inline int kronecker(const Discriminant& d, u64 n) { return kronecker(d.value(), n); }

struct BinaryQuadraticForm {
    i64 a;
    i64 b;
    i64 c;

    i64 discriminant() const noexcept { return b * b - 4 * a * c; }

    bool is_reduced() const noexcept {
        const i64 ab = b < 0 ? -b : b;
        if (a <= 0 || ab > a || a > c) return false;
        if ((ab == a || a == c) && b < 0) return false;
        return true;
    }

    friend auto operator<=>(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
};

// One reduced primitive form per class of discriminant D (fundamental or not),
// ordered by (a, b).
inline std::vector<BinaryQuadraticForm> reduced_forms(const Discriminant& d) {
    const i64 D = d.value();
    std::vector<BinaryQuadraticForm> out;
    const i64 a_max = static_cast<i64>(isqrt(d.abs() / 3));
    for (i64 a = 1; a <= a_max; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (mod(b - D, 2) != 0) continue;
            const i64 num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const i64 c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

inline u64 class_number(const Discriminant& d) { return reduced_forms(d).size(); }

inline int unit_count(const Discriminant& d) {
    if (d.value() == -3) return 6;
    if (d.value() == -4) return 4;
    return 2;
}

// h = (w / (2|D|)) * |sum_{k=1}^{|D|} chi(k) k|. Fundamental D only.
inline u64 class_number_dirichlet(const Discriminant& d) {
    if (!d.is_fundamental())
        throw not_fundamental("class_number_dirichlet requires a fundamental discriminant, got " +
                              std::to_string(d.value()));
    const u64 n = d.abs();
    i64 sum = 0;
    for (u64 k = 1; k <= n; ++k) sum += kronecker(d, k) * static_cast<i64>(k);
    const u64 num = static_cast<u64>(sum < 0 ? -sum : sum) * static_cast<u64>(unit_count(d));
    if (num % (2 * n) != 0)
        throw std::logic_error("class_number_dirichlet: non-integral result for " +
                               std::to_string(d.value()));
    return num / (2 * n);
}

enum class SplitType { Split, Inert, Ramified };

inline const char* to_string(SplitType t) {
    switch (t) {
        case SplitType::Split: return "Split";
        case SplitType::Inert: return "Inert";
        case SplitType::Ramified: return "Ramified";
    }
    return "?";
}

inline SplitType splitting_type(const Discriminant& d, u64 p) {
    if (!is_prime(p)) throw not_prime(std::to_string(p) + " is not prime");
    switch (kronecker(d, p)) {
        case 1: return SplitType::Split;
        case -1: return SplitType::Inert;
        default: return SplitType::Ramified;
    }
}

struct FieldConstants {
    u64 h;
    int w;
    double l1;  // L(1, chi) = 2 pi h / (w sqrt|D|)
};

inline double l1_from_constants(u64 h, int w, u64 abs_disc) {
    return 2.0 * std::numbers::pi * static_cast<double>(h) /
           (static_cast<double>(w) * std::sqrt(static_cast<double>(abs_disc)));
}

inline FieldConstants field_constants(const Discriminant& d) {
    const u64 h = class_number(d);
    const int w = unit_count(d);
    return {h, w, l1_from_constants(h, w, d.abs())};
}

}  // namespace tcm
