#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "glsvol/envelope.hpp"
#include "glsvol/exponents.hpp"
#include "glsvol/grid.hpp"
#include "glsvol/series.hpp"
#include "glsvol/weight.hpp"

namespace gls {

struct QuadratureParams {
    double box_half_width = 40.0; // starting box, grown until tails are negligible
    double box_cap = 1000.0;
    int initial_nodes = 128;      // per axis; dimension 2 starts here too
    int max_nodes_1d = 8192;
    int max_nodes_2d = 512;       // per axis
    double tail_rel = 1e-12;      // face integrand relative to the peak
    double refine_rel = 1e-9;     // stop refining when the log integral settles
};

// log of integral exp(<a,t> - k*phi(t)) * density(t) dt.  Adaptive
// trapezoid: the box grows until the face values drop tail_rel below the
// peak, then the node count doubles until the log integral moves less than
// refine_rel.  Throws NumericError("tail not captured") if no box works.
double log_monomial_norm(const Exponent& a, int k, const SmoothToricWeight& w,
                         const QuadratureParams& q = {});
double monomial_norm(const Exponent& a, int k, const SmoothToricWeight& w,
                     const QuadratureParams& q = {});

// Normalized modulus of the off-diagonal inner product of two monomials:
// the radial quadrature factor times the angular averages, divided by the
// geometric mean of the two norms.  Zero in exact arithmetic whenever the
// exponents differ; the returned value validates that numerically.
double gram_offdiagonal(const Exponent& a, const Exponent& b, int k,
                        const SmoothToricWeight& w,
                        const QuadratureParams& q = {});

// Level weight built from per-monomial norms: with pairwise-orthogonal
// monomials the extremal normalized section reduces to a diagonal sum,
// value = (1/k) log sum_a exp(<a,t> - log_norm(a)).
struct BergmanLevel {
    int k = 0;
    std::vector<Exponent> exponents;
    std::vector<double> log_norms;

    double value(const std::vector<double>& t) const;
    GridFunction as_grid_function() const;
};

BergmanLevel bergman_weight(const MonomialSeries& W, int k,
                            const SmoothToricWeight& w,
                            const QuadratureParams& q = {});

struct SandwichRow {
    int k = 0;
    double sup_gap = 0.0; // sup over the box of |level weight - limit symbol|
};

struct SandwichReport {
    std::vector<SandwichRow> rows;
    double fitted_C = 0.0; // gap ~ C/k fit through the origin, largest 3 levels
    bool monotone = false; // gaps non-increasing in k
    GridSpec box;
};

SandwichReport sandwich_report(const MonomialSeries& W,
                               const SmoothToricWeight& w,
                               const PLConvexFunction& limit_symbol,
                               const std::vector<int>& ks, const GridSpec& box,
                               const QuadratureParams& q = {});

void sandwich_csv(std::ostream& os, const SandwichReport& r);
std::string sandwich_json(const SandwichReport& r);

} // namespace gls
