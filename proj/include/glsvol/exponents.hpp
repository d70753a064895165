#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glsvol/rational.hpp"

namespace gls {

// A monomial exponent in the affine chart: one integer per torus direction.
using Exponent = std::vector<std::int64_t>;

std::int64_t degree_sum(const Exponent& e);
std::string format_exponent(const Exponent& e);

inline RatVec to_rat_vec(const Exponent& e) {
    RatVec v(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) v[i] = Rational(e[i]);
    return v;
}

// The level-k set of exponents of a graded family, canonically ordered.
// Invariants: every entry is componentwise nonnegative with coordinate sum at
// most k*d, entries are unique and sorted lexicographically.
struct GradedPiece {
    int k = 0;
    int d = 0;
    std::vector<Exponent> exponents;

    GradedPiece() = default;
    GradedPiece(int k, int d, std::vector<Exponent> exps);

    std::size_t dimension() const { return exponents.size(); }
    bool empty() const { return exponents.empty(); }
    bool contains(const Exponent& e) const;
};

// Sorts, deduplicates and checks the simplex bound.
void canonicalize(std::vector<Exponent>& exps, int k, int d);

} // namespace gls
