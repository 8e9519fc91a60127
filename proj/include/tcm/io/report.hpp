#pragma once

// Library results as envelope rows. Field names follow the domain types.

#include <cmath>
#include <string>
#include <vector>

#include "tcm/analytics.hpp"
#include "tcm/feasibility.hpp"
#include "tcm/galois_image.hpp"
#include "tcm/io/envelope.hpp"

namespace tcm::io {

inline Json real(double v) { return std::isfinite(v) ? Json(round12(v)) : Json(); }

inline Json real(const std::optional<double>& v) { return v ? real(*v) : Json(); }

inline std::string rational_text(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// One row per record; running_constant is the sup of ratio over the rows so far.
inline std::vector<Json> bound_rows(const std::vector<BoundRecord>& records) {
    std::vector<Json> rows;
    std::optional<double> running;
    for (const auto& r : records) {
        if (r.ratio && (!running || *r.ratio > *running)) running = r.ratio;
        rows.push_back(Json{{"d", r.d},
                            {"a", r.best_shape.a},
                            {"b", r.best_shape.b},
                            {"bound", r.bound},
                            {"ratio", real(r.ratio)},
                            {"running_constant", real(running)}});
    }
    return rows;
}

inline Json phi_row(const Discriminant& d, u64 n, std::optional<u64> brute) {
    const auto ideal = principal_ideal(d, n);
    return Json{{"disc", d.value()},
                {"n", n},
                {"norm", ideal_norm(ideal)},
                {"phi_K", phi_K(ideal)},
                {"factorization", ideal.to_string()},
                {"brute_force", brute ? Json(*brute) : Json()}};
}

inline Json report_row(const GaloisImageReport& r) {
    return Json{{"disc", r.disc.value()},
                {"p", r.p},
                {"A", r.A},
                {"split_type", to_string(r.split_type)},
                {"max_stabilizer_order", r.max_stabilizer_order},
                {"expected_divisor", r.expected_divisor},
                {"divides", r.consistent()}};
}

inline Json product_row(const ProductEstimate& p, std::optional<i64> disc = std::nullopt) {
    Json row;
    if (disc) row["disc"] = *disc;
    row["x"] = p.x;
    row["value"] = real(p.value);
    row["terms"] = p.terms;
    if (!disc) row["normalized"] = real(p.value * std::exp(std::numbers::egamma) * std::log(static_cast<double>(p.x)));
    return row;
}

inline Json scan_row(const ScanResult& s) {
    return Json{{"disc", s.disc.value()},
                {"X", s.max_norm},
                {"min_value", real(s.min_value)},
                {"argmin_ideal", s.argmin_ideal.to_string()},
                {"argmin_norm", ideal_norm(s.argmin_ideal)}};
}

inline Json landau_row(const Discriminant& d, u64 x, const LandauCheck& c) {
    return Json{{"disc", d.value()},
                {"X", x},
                {"empirical_min_tail", real(c.empirical_min_tail)},
                {"target", real(c.target)},
                {"argmin_ideal", c.argmin_ideal.to_string()}};
}

inline Json feasibility_row(const FeasibilityRow& r) {
    return Json{{"D", r.disc},
                {"a", r.a},
                {"b", r.b},
                {"size", r.a * r.a * r.b},
                {"lhs", rational_text(r.lhs)},
                {"feasible", r.feasible}};
}

inline std::vector<Json> chain_rows(const ChainTrace& t) {
    std::vector<Json> rows;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        rows.push_back(Json{{"step", i + 1},
                            {"inequality", s.label},
                            {"lhs", rational_text(s.lhs)},
                            {"rhs", rational_text(s.rhs)},
                            {"holds", s.holds},
                            {"first_failure", t.first_failure && *t.first_failure == i}});
    }
    return rows;
}

}  // namespace tcm::io
