#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "glsvol/errors.hpp"

namespace gls {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rational>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

// Parses "p/q", "p", or a plain decimal like "-1.25" (exact).
Rational parse_rational(const std::string& text);

// Canonical "p/q" form (denominator always present, always positive).
std::string format_rational(const Rational& r);

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::vector<double> to_double_vec(const RatVec& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
    return out;
}

// Lexicographic order on rational vectors; the canonical order used everywhere
// a deterministic arrangement is required.
bool lex_less(const RatVec& a, const RatVec& b);

// Scales a rational vector to coprime integers with a sign convention (first
// nonzero entry positive). Used to deduplicate directions.
RatVec normalize_direction(const RatVec& v);

std::string format_rat_vec(const RatVec& v);

} // namespace gls
