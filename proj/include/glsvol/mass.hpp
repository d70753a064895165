#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glsvol/envelope.hpp"
#include "glsvol/grid.hpp"
#include "glsvol/polytope.hpp"
#include "glsvol/rational.hpp"
#include "glsvol/weight.hpp"

namespace gls {

struct MassReport {
    std::optional<Rational> exact_mass;
    double grid_mass = 0.0;
    GridSpec grid;
    double moreau_eps = 0.0;
    int active_slope_count = 0;
    double discrepancy = 0.0;       // |exact - grid| / max(exact, 1e-12)
    double negative_mass = 0.0;     // clamped negative-determinant mass
    double boundary_deficit = 0.0;  // worst face-gradient distance to the hull boundary
};

// A piece contributes to the max somewhere iff no convex combination of the
// other slopes reproduces its slope with a strictly larger intercept; that
// combination problem is a small exact LP.
bool is_piece_active(const PLConvexFunction& f, std::size_t index);

// Distinct slopes of the active pieces, sorted lex.
std::vector<RatVec> active_slopes(const PLConvexFunction& f);

// Total mass as n! times the volume of the convex hull of the piece slopes.
// Every vertex of that hull belongs to an active piece, so restricting to
// active slopes would give the same hull; tests assert that equivalence.
Rational ma_mass_pl(const PLConvexFunction& f);

struct GridMassParams {
    GridSpec grid;                 // leave resolution 0 to take the dimension default
    double eps = 0.0;              // 0 = slope-aware width, floor twice the grid step
    double coverage_delta = 0.05;  // allowed face-gradient distance to the hull boundary
    bool parallel = true;
    bool count_active = true;      // fill MassReport::active_slope_count (runs the LPs)
    bool auto_box = true;          // 2-D symbols: shrink the box to the crease pattern
};

// Box [-20,20]^n with 4096 points (n=1) or 512^2 (n=2).
GridMassParams default_grid_mass_params(int n);

// Grid estimate of the total mass: sample, Moreau-smooth, integrate the
// clamped difference-stencil Hessian determinant, times n!.  In 2-D with
// auto_box set, the box is the smallest of a fixed ladder (capped by
// params.grid) whose face gradients reach every slope-hull vertex; grid junk
// scales with the crease length inside the box, so tight boxes are more
// accurate.  Throws NumericError("box too small...") when no candidate
// covers the hull and NumericError("eps too small...") when the clamped
// negative-determinant mass exceeds the noise allowance (1% in 1-D, 10% for
// smoothed 2-D symbols).
double ma_mass_grid(const PLConvexFunction& f, const GridMassParams& params,
                    MassReport* report = nullptr);

// Same estimate for a smooth weight; no Moreau step, hull = d * simplex.
double ma_mass_grid(const SmoothToricWeight& w, const GridMassParams& params,
                    MassReport* report = nullptr);

// Integration kernels: trapezoid-weighted sum of clamped Hessian
// determinants over the grid interior, in units of mass (cell volume and n!
// included).  1-D uses the plain central second difference, whose clamped
// sum telescopes to the exact slope range for convex samples.  2-D fits a
// quadratic by least squares over a (2*radius+1)^2 patch per node; radius 1
// reproduces central differences (best for smooth inputs), while the default
// wide patch averages out the lattice jitter of the discrete Moreau
// transform, which a narrow stencil rectifies into spurious mass along
// creases.  The parallel kernel accumulates per-row partials and reduces
// them in index order, so both kernels agree bit for bit at any thread
// count.  negative_mass (optional) receives the clamped portion.
double hessian_det_sum_serial(const GridField& u, double* negative_mass,
                              int radius = 4);
double hessian_det_sum_omp(const GridField& u, double* negative_mass,
                           int radius = 4);

// If g <= f + C holds (checked on a probe grid plus crease witnesses),
// returns whether mass(g) <= mass(f); nullopt when the hypothesis fails.
std::optional<bool> comparison_check(const PLConvexFunction& f,
                                     const PLConvexFunction& g, double C);

struct MassSequence {
    std::vector<int> levels;
    std::vector<Rational> masses;      // exact level-envelope masses
    std::vector<Rational> normalized_mk; // n! vol(conv A_k) / k^n per level
    Rational final_mass;
};

// Exact masses of the level envelopes along a divisibility schedule.
// Checks, as rational identities: the sequence is non-decreasing, each mass
// equals the normalized hull self-intersection of the level, and every hull
// vertex slope is active.  A violation throws NumericError, since each is a
// theorem for these inputs.
MassSequence analytic_mass_limit(EnvelopeBuilder& builder,
                                 const std::vector<int>& schedule);

struct RegimeReport {
    char regime = '?';
    std::vector<double> params;       // eps / subset size / perturbation height
    std::vector<double> grid_masses;
    std::vector<double> exact_masses; // exact mass of the object integrated
};

struct ConvergenceReport {
    double exact_mass = 0.0; // of the full input function
    std::vector<RegimeReport> regimes;
};

// Three families degenerating to f: (a) Moreau widths shrinking, (b) piece
// subsets growing, (c) uniform bump perturbations shrinking.  Grid masses
// are reported against the exact masses; nothing is asserted here.
ConvergenceReport monotone_convergence_harness(const PLConvexFunction& f,
                                               const GridMassParams& base);

std::string mass_report_json(const MassReport& r);

} // namespace gls
