#pragma once

#include <optional>
#include <vector>

#include "glsvol/rational.hpp"

namespace gls {

// One linear inequality  coeffs . x <= rhs.
struct LinIneq {
    RatVec coeffs;
    Rational rhs;
};

// Feasibility of a system of inequalities over free variables, decided
// exactly. Dimension <= 3 runs Fourier-Motzkin elimination with row
// deduplication; higher dimensions (or an elimination blow-up past the row
// cap) fall back to a rational simplex.
bool ineq_feasible(const std::vector<LinIneq>& system, int dim);

// Phase-1 simplex with Bland's rule: does E y = f admit y >= 0?
// E is given by rows; all arithmetic is exact.
bool eq_nonneg_feasible(const std::vector<RatVec>& rows, const RatVec& rhs);

struct LpMax {
    bool feasible = false;
    bool bounded = false;
    Rational value;
};

// max objective . y  subject to  rows y = rhs, y >= 0; two-phase simplex
// with Bland's rule, exact throughout.
LpMax lp_max_eq_nonneg(const std::vector<RatVec>& rows, const RatVec& rhs,
                       const RatVec& objective);

// Is p a convex combination of pts?
bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& pts);

} // namespace gls
