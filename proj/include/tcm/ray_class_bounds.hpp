#pragma once

// Degree sandwich for ray class fields of imaginary quadratic K:
//   h phi_K(c) / 6 <= h phi_K(c) / w <= [K^(c) : K] <= h phi_K(c).

#include <boost/rational.hpp>

#include "tcm/ideal_arith.hpp"
#include "tcm/quad_core.hpp"

namespace tcm {

using Rational = boost::rational<i64>;

struct DegreeBounds {
    Rational lower_weak;  // h phi / 6
    Rational lower;       // h phi / w
    i64 upper;            // h phi
};

inline DegreeBounds degree_bounds_from(u64 h, int w, u64 phi) {
    const i64 hp = static_cast<i64>(h * phi);
    return {Rational(hp, 6), Rational(hp, w), hp};
}

inline DegreeBounds degree_bounds(const Discriminant& d, const FactoredIdeal& c) {
    if (!(c.disc() == d)) throw std::invalid_argument("degree_bounds: ideal belongs to another field");
    return degree_bounds_from(class_number(d), unit_count(d), phi_K(c));
}

// Lower bound on [F:Q] for any degree-d field F carrying a K-CM curve with
// full N-torsion over FK: 2d >= [FK:Q] >= [K^(N O_K):Q] = 2[K^(N O_K):K] >= h phi / 3,
// so d >= h phi_K(N O_K) / 6.
inline Rational min_absolute_degree_with_full_N_torsion(const Discriminant& d, u64 n) {
    const u64 phi = phi_K_of_N(Discriminant::fundamental(d.value()), n);
    return Rational(static_cast<i64>(class_number(d) * phi), 6);
}

}  // namespace tcm
