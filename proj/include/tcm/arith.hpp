#pragma once

// Small exact integer helpers shared by every module.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tcm {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Non-negative residue of a mod m (m > 0).
constexpr i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

constexpr u64 isqrt(u64 n) {
    if (n < 2) return n;
    u64 x = n;
    u64 y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

constexpr u64 ipow(u64 base, unsigned exp) {
    u64 r = 1;
    while (exp--) r *= base;
    return r;
}

namespace detail {

constexpr u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

// Deterministic Miller-Rabin for the full 64-bit range.
constexpr bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

struct PrimePower {
    u64 p;
    unsigned e;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Trial division; fine for the magnitudes used here (n well below 2^40).
inline std::vector<PrimePower> factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<PrimePower> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

// Classical Euler totient.
inline u64 euler_phi(u64 n) {
    u64 r = n;
    for (const auto& [p, e] : factorize(n)) r -= r / p;
    return r;
}

inline bool is_squarefree(u64 n) {
    for (const auto& pp : factorize(n))
        if (pp.e > 1) return false;
    return true;
}

}  // namespace tcm
