#pragma once

// Segmented sieve of Eratosthenes, and a segmented Euler-phi table built on
// the same base primes.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "tcm/arith.hpp"

namespace tcm {

namespace detail {

// Plain sieve for the base primes up to `limit`.
inline std::vector<u64> small_primes(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

inline constexpr u64 kSegment = u64{1} << 18;

}  // namespace detail

// All primes p <= x in increasing order.
inline std::vector<u64> primes_up_to(u64 x) {
    if (x < 2) return {};
    const u64 root = isqrt(x);
    std::vector<u64> base = detail::small_primes(root);
    std::vector<u64> out(base.begin(), base.end());
    std::vector<char> mark(detail::kSegment);
    for (u64 lo = root + 1; lo <= x; lo += detail::kSegment) {
        const u64 hi = std::min(x + 1, lo + detail::kSegment);
        std::fill(mark.begin(), mark.end(), 0);
        for (u64 p : base) {
            u64 start = std::max(p * p, (lo + p - 1) / p * p);
            for (u64 m = start; m < hi; m += p) mark[m - lo] = 1;
        }
        for (u64 n = lo; n < hi; ++n)
            if (!mark[n - lo]) out.push_back(n);
    }
    return out;
}

// phi(n) for n in [lo, hi). `base` must contain every prime <= sqrt(hi - 1).
inline void euler_phi_segment(u64 lo, u64 hi, const std::vector<u64>& base, std::vector<u64>& phi,
                              std::vector<u64>& rest) {
    const u64 len = hi - lo;
    phi.resize(len);
    rest.resize(len);
    for (u64 i = 0; i < len; ++i) phi[i] = rest[i] = lo + i;
    for (u64 p : base) {
        if (p * p >= hi) break;
        for (u64 m = (lo + p - 1) / p * p; m < hi; m += p) {
            const u64 i = m - lo;
            if (m == 0) continue;
            phi[i] -= phi[i] / p;
            do rest[i] /= p;
            while (rest[i] % p == 0);
        }
    }
    for (u64 i = 0; i < len; ++i)
        if (rest[i] > 1) phi[i] -= phi[i] / rest[i];
}

}  // namespace tcm
