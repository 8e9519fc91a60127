#pragma once

// Ideals of O_K carried in factored form: prime ideals above rational primes,
// norms, the ideal Euler function, and enumeration of all ideals up to a norm.

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcm/arith.hpp"
#include "tcm/errors.hpp"
#include "tcm/quad_core.hpp"

namespace tcm {

struct PrimeIdeal {
    u64 p;
    SplitType type;
    u64 norm;                 // p, or p^2 when inert
    unsigned conjugate_index; // 0/1 above a split p, otherwise 0

    friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
};

// Canonical order of prime ideals: by p, then conjugate index.
inline std::strong_ordering compare_primes(const PrimeIdeal& x, const PrimeIdeal& y) {
    if (auto c = x.p <=> y.p; c != 0) return c;
    return x.conjugate_index <=> y.conjugate_index;
}

struct IdealFactor {
    PrimeIdeal prime;
    unsigned exponent;

    friend bool operator==(const IdealFactor&, const IdealFactor&) = default;
};

inline std::vector<PrimeIdeal> primes_above(const Discriminant& d, u64 p) {
    switch (splitting_type(d, p)) {
        case SplitType::Split:
            return {{p, SplitType::Split, p, 0}, {p, SplitType::Split, p, 1}};
        case SplitType::Inert:
            return {{p, SplitType::Inert, p * p, 0}};
        case SplitType::Ramified:
            return {{p, SplitType::Ramified, p, 0}};
    }
    return {};
}

class FactoredIdeal {
public:
    explicit FactoredIdeal(Discriminant d) : disc_(d) { require_fundamental(); }

    FactoredIdeal(Discriminant d, std::vector<IdealFactor> factors)
        : disc_(d), factors_(std::move(factors)) {
        require_fundamental();
        normalize();
    }

    static FactoredIdeal unit(Discriminant d) { return FactoredIdeal(d); }

    static FactoredIdeal prime_power(Discriminant d, const PrimeIdeal& p, unsigned e) {
        return FactoredIdeal(d, {{p, e}});
    }

    const Discriminant& disc() const noexcept { return disc_; }
    const std::vector<IdealFactor>& factors() const noexcept { return factors_; }
    bool is_unit() const noexcept { return factors_.empty(); }

    // Exponent-wise divisibility of factorizations.
    bool divides(const FactoredIdeal& other) const {
        for (const auto& f : factors_) {
            auto it = std::find_if(other.factors_.begin(), other.factors_.end(),
                                   [&](const IdealFactor& g) { return g.prime == f.prime; });
            if (it == other.factors_.end() || it->exponent < f.exponent) return false;
        }
        return true;
    }

    // Product of ideals: merges factorizations.
    friend FactoredIdeal operator*(const FactoredIdeal& x, const FactoredIdeal& y) {
        if (!(x.disc_ == y.disc_)) throw std::invalid_argument("ideals from different fields");
        std::vector<IdealFactor> merged = x.factors_;
        merged.insert(merged.end(), y.factors_.begin(), y.factors_.end());
        return FactoredIdeal(x.disc_, std::move(merged));
    }

    friend bool operator==(const FactoredIdeal& x, const FactoredIdeal& y) {
        return x.disc_ == y.disc_ && x.factors_ == y.factors_;
    }

    // Lexicographic on the canonical factor list: (p, index, exponent) per factor.
    friend std::strong_ordering compare_factorizations(const FactoredIdeal& x,
                                                       const FactoredIdeal& y) {
        const auto n = std::min(x.factors_.size(), y.factors_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto& f = x.factors_[i];
            const auto& g = y.factors_[i];
            if (auto c = compare_primes(f.prime, g.prime); c != 0) return c;
            if (auto c = f.exponent <=> g.exponent; c != 0) return c;
        }
        return x.factors_.size() <=> y.factors_.size();
    }

    // e.g. "P2^2*P5a*P5b*P3i" (a/b: split conjugates, i: inert); "(1)" for the unit ideal.
    std::string to_string() const {
        if (factors_.empty()) return "(1)";
        std::string s;
        for (const auto& f : factors_) {
            if (!s.empty()) s += '*';
            s += 'P' + std::to_string(f.prime.p);
            if (f.prime.type == SplitType::Split) s += f.prime.conjugate_index == 0 ? 'a' : 'b';
            if (f.prime.type == SplitType::Inert) s += 'i';
            if (f.exponent > 1) s += '^' + std::to_string(f.exponent);
        }
        return s;
    }

private:
    void require_fundamental() const {
        if (!disc_.is_fundamental())
            throw not_fundamental("ideals are only modelled for fundamental discriminants, got " +
                                  std::to_string(disc_.value()));
    }

    void normalize() {
        std::sort(factors_.begin(), factors_.end(), [](const IdealFactor& x, const IdealFactor& y) {
            return compare_primes(x.prime, y.prime) < 0;
        });
        std::vector<IdealFactor> out;
        for (const auto& f : factors_) {
            if (f.exponent == 0) continue;
            if (!out.empty() && out.back().prime == f.prime)
                out.back().exponent += f.exponent;
            else
                out.push_back(f);
        }
        factors_ = std::move(out);
    }

    Discriminant disc_;
    std::vector<IdealFactor> factors_;
};

// Factorization of N * O_K.
inline FactoredIdeal principal_ideal(const Discriminant& d, u64 n) {
    if (n == 0) throw std::invalid_argument("principal_ideal: N must be >= 1");
    std::vector<IdealFactor> factors;
    if (n > 1) {
        for (const auto& [p, e] : factorize(n)) {
            for (const auto& q : primes_above(d, p))
                factors.push_back({q, q.type == SplitType::Ramified ? 2 * e : e});
        }
    }
    return FactoredIdeal(d, std::move(factors));
}

inline u64 ideal_norm(const FactoredIdeal& a) {
    u64 n = 1;
    for (const auto& f : a.factors()) n *= ipow(f.prime.norm, f.exponent);
    return n;
}

// phi_K(a) = #(O_K/a)^x = prod |P|^(k-1) (|P| - 1).
inline u64 phi_K(const FactoredIdeal& a) {
    u64 r = 1;
    for (const auto& f : a.factors())
        r *= ipow(f.prime.norm, f.exponent - 1) * (f.prime.norm - 1);
    return r;
}

// phi_K(N O_K) = N^2 prod_{p|N} (1 - 1/p)(1 - chi(p)/p).
inline u64 phi_K_of_N(const Discriminant& d, u64 n) {
    if (n == 0) throw std::invalid_argument("phi_K_of_N: N must be >= 1");
    u64 r = 1;
    if (n == 1) return r;
    for (const auto& [p, e] : factorize(n)) {
        const i64 chi = kronecker(d, p);
        const u64 pe = ipow(p, e - 1);
        // p^(2e) (1 - 1/p)(1 - chi/p) = p^(2e-2) (p - 1)(p - chi)
        r *= pe * pe * (p - 1) * static_cast<u64>(static_cast<i64>(p) - chi);
    }
    return r;
}

inline constexpr u64 kBruteForcePhiCap = 300;

// Counts (alpha, beta) mod N whose norm alpha^2 + D alpha beta + ((D^2 - D)/4) beta^2
// is a unit mod N, i.e. #(O/NO)^x in the basis 1, (D + sqrt D)/2. Any order discriminant.
inline u64 brute_force_phi(const Discriminant& d, u64 n, u64 cap = kBruteForcePhiCap) {
    if (n == 0) throw std::invalid_argument("brute_force_phi: N must be >= 1");
    if (n > cap) throw cap_exceeded("brute_force_phi N cap", static_cast<long long>(cap),
                                    static_cast<long long>(n));
    if (n == 1) return 1;
    const i64 N = static_cast<i64>(n);
    const i64 D = mod(d.value(), N);
    const i64 c = mod((d.value() * d.value() - d.value()) / 4, N);
    u64 count = 0;
    for (i64 alpha = 0; alpha < N; ++alpha) {
        for (i64 beta = 0; beta < N; ++beta) {
            const i64 norm = (alpha * alpha + D * alpha % N * beta + c * beta % N * beta) % N;
            if (std::gcd(norm, N) == 1) ++count;
        }
    }
    return count;
}

// Every integral ideal with norm <= X, each exactly once, ordered by norm and
// then by factorization. Restartable via reset().
class IdealStream {
public:
    IdealStream(Discriminant d, u64 max_norm) : disc_(d), max_norm_(max_norm) {
        if (!d.is_fundamental())
            throw not_fundamental("ideal enumeration requires a fundamental discriminant");
        if (max_norm < 1) throw std::invalid_argument("IdealStream: X must be >= 1");
        build();
    }

    std::optional<FactoredIdeal> next() {
        if (pos_ >= ideals_.size()) return std::nullopt;
        return ideals_[pos_++];
    }

    void reset() noexcept { pos_ = 0; }
    std::size_t size() const noexcept { return ideals_.size(); }
    const std::vector<FactoredIdeal>& all() const noexcept { return ideals_; }

private:
    void build() {
        std::vector<PrimeIdeal> primes;
        for (u64 p = 2; p <= max_norm_; ++p) {
            if (!is_prime(p)) continue;
            for (const auto& q : primes_above(disc_, p))
                if (q.norm <= max_norm_) primes.push_back(q);
        }
        std::vector<IdealFactor> stack;
        collect(primes, 0, 1, stack);
        std::vector<std::pair<u64, FactoredIdeal>> keyed;
        keyed.reserve(ideals_.size());
        for (auto& a : ideals_) keyed.emplace_back(ideal_norm(a), std::move(a));
        std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            return compare_factorizations(x.second, y.second) < 0;
        });
        ideals_.clear();
        for (auto& [n, a] : keyed) ideals_.push_back(std::move(a));
    }

    void collect(const std::vector<PrimeIdeal>& primes, std::size_t from, u64 norm,
                 std::vector<IdealFactor>& stack) {
        ideals_.emplace_back(disc_, stack);
        for (std::size_t i = from; i < primes.size(); ++i) {
            const u64 q = primes[i].norm;
            if (norm * q > max_norm_) continue;
            u64 m = norm;
            unsigned e = 0;
            while (m * q <= max_norm_) {
                m *= q;
                ++e;
                stack.push_back({primes[i], e});
                collect(primes, i + 1, m, stack);
                stack.pop_back();
            }
        }
    }

    Discriminant disc_;
    u64 max_norm_;
    std::vector<FactoredIdeal> ideals_;
    std::size_t pos_ = 0;
};

inline std::vector<FactoredIdeal> ideals_up_to_norm(const Discriminant& d, u64 max_norm) {
    return IdealStream(d, max_norm).all();
}

}  // namespace tcm
