#pragma once

// Numerical side: Mertens and character Euler products, L(1, chi) from the
// class number formula, the prime character sum S(t), and empirical scans of
// h_K phi_K(c) log log|c| / |c|.

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "tcm/ideal_arith.hpp"
#include "tcm/parallel.hpp"
#include "tcm/quad_core.hpp"
#include "tcm/sieve.hpp"

namespace tcm {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct ProductEstimate {
    u64 x;
    double value;
    u64 terms;  // pi(x)
};

namespace detail {

inline constexpr u64 kCompensatedAbove = 100000;

// prod_{p <= x} (1 - c(p)/p) with c(p) in {-1, 0, 1}.
template <class Coeff>
ProductEstimate euler_product(u64 x, Coeff&& coeff) {
    if (x < 2) throw std::invalid_argument("euler product needs x >= 2");
    const auto primes = primes_up_to(x);
    if (x <= kCompensatedAbove) {
        double v = 1.0;
        for (u64 p : primes) v *= 1.0 - coeff(p) / static_cast<double>(p);
        return {x, v, primes.size()};
    }
    CompensatedSum logs;
    for (u64 p : primes) logs.add(std::log1p(-coeff(p) / static_cast<double>(p)));
    return {x, std::exp(logs.value()), primes.size()};
}

}  // namespace detail

inline ProductEstimate mertens_product(u64 x) {
    return detail::euler_product(x, [](u64) { return 1.0; });
}

inline ProductEstimate char_euler_product(const Discriminant& d, u64 x) {
    const auto D = Discriminant::fundamental(d.value());
    return detail::euler_product(x, [&](u64 p) { return static_cast<double>(kronecker(D, p)); });
}

inline double l1_from_class_number(const Discriminant& d) {
    return field_constants(Discriminant::fundamental(d.value())).l1;
}

// S(t) = sum_{p <= t} chi(p) log p.
inline double char_sum_S(const Discriminant& d, u64 t) {
    if (t < 2) throw std::invalid_argument("char_sum_S needs t >= 2");
    CompensatedSum s;
    for (u64 p : primes_up_to(t)) {
        const int chi = kronecker(d, p);
        if (chi) s.add(chi * std::log(static_cast<double>(p)));
    }
    return s.value();
}

struct ScanResult {
    Discriminant disc;
    u64 max_norm;
    double min_value;
    FactoredIdeal argmin_ideal;
};

inline double loglog(double v) { return std::log(std::log(v)); }

// min over ideals 3 <= |c| <= X of h phi_K(c) log log|c| / |c|.
inline ScanResult phi_bound_scan(const Discriminant& d, u64 max_norm) {
    if (max_norm < 3) throw std::invalid_argument("phi_bound_scan needs X >= 3");
    const auto D = Discriminant::fundamental(d.value());
    const double h = static_cast<double>(class_number(D));
    IdealStream stream(D, max_norm);
    std::optional<ScanResult> best;
    while (auto c = stream.next()) {
        const u64 norm = ideal_norm(*c);
        if (norm < 3) continue;
        const double n = static_cast<double>(norm);
        const double v = h * static_cast<double>(phi_K(*c)) * loglog(n) / n;
        if (!best || v < best->min_value) best = ScanResult{D, max_norm, v, *c};
    }
    if (!best) throw std::logic_error("phi_bound_scan: no ideal with norm >= 3");
    return *best;
}

struct PhiFloor {
    double value;
    ScanResult at;
};

// Smallest phi_bound_scan value over fundamental |D| <= disc_cap; the scan is
// parallel over D, reduced in |D| order.
inline PhiFloor phi_floor(u64 disc_cap, u64 max_norm, unsigned workers = thread_count()) {
    const auto discs = fundamental_discriminants(disc_cap);
    if (discs.empty()) throw std::invalid_argument("phi_floor: no fundamental discriminants in range");
    std::vector<std::optional<ScanResult>> results(discs.size());
    parallel_stripes(discs.size(), workers, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) results[i] = phi_bound_scan(discs[i], max_norm);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i]->min_value < results[best]->min_value) best = i;
    return {results[best]->min_value, *results[best]};
}

struct LandauCheck {
    double empirical_min_tail;
    double target;  // e^-gamma / L(1, chi)
    FactoredIdeal argmin_ideal;
};

// min over X/10 <= |a| <= X of phi_K(a) log log|a| / |a|, against e^-gamma / L(1, chi).
inline LandauCheck landau_liminf_check(const Discriminant& d, u64 max_norm) {
    if (max_norm < 100) throw std::invalid_argument("landau_liminf_check needs X >= 100");
    const auto D = Discriminant::fundamental(d.value());
    IdealStream stream(D, max_norm);
    std::optional<LandauCheck> best;
    const double target = std::exp(-std::numbers::egamma) / l1_from_class_number(D);
    while (auto c = stream.next()) {
        const u64 norm = ideal_norm(*c);
        if (norm * 10 < max_norm) continue;
        const double n = static_cast<double>(norm);
        const double v = static_cast<double>(phi_K(*c)) * loglog(n) / n;
        if (!best || v < best->empirical_min_tail) best = LandauCheck{v, target, *c};
    }
    return *best;
}

}  // namespace tcm
