#include "glsvol/mass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "glsvol/errors.hpp"
#include "glsvol/lp.hpp"
#include "glsvol/moreau.hpp"
#include "json.hpp"

namespace gls {

namespace {

Int int_pow(Int base, int e) {
    Int out = 1;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

Int factorial(int n) {
    Int out = 1;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

std::vector<RatVec> distinct_slopes(const PLConvexFunction& f) {
    std::set<RatVec> s;
    for (const PLPiece& p : f.pieces()) s.insert(p.slope);
    return std::vector<RatVec>(s.begin(), s.end());
}

// Central-difference gradient at an interior grid index.
std::vector<double> grid_gradient(const GridField& u, const std::vector<int>& idx) {
    const int n = u.spec.dim();
    const int m = u.spec.resolution;
    std::vector<double> g(n);
    std::vector<int> lo = idx, hi = idx;
    for (int a = 0; a < n; ++a) {
        double h = (u.spec.hi[a] - u.spec.lo[a]) / (m - 1);
        lo[a] = idx[a] - 1;
        hi[a] = idx[a] + 1;
        g[a] = (u.at(hi) - u.at(lo)) / (2.0 * h);
        lo[a] = idx[a];
        hi[a] = idx[a];
    }
    return g;
}

// Worst distance from a slope-hull vertex to the nearest face-adjacent
// gradient.  A box that is too small leaves some extreme slope unrealized,
// and that vertex's distance stays large; a gradient merely parked at the
// wrong vertex does not mask the gap.
double coverage_deficit(const GridField& u, const RationalPolytope& hull) {
    const int n = u.spec.dim();
    const int m = u.spec.resolution;
    std::vector<std::vector<double>> grads;
    if (n == 1) {
        for (int i : {1, m - 2}) grads.push_back(grid_gradient(u, {i}));
    } else {
        for (int i = 1; i <= m - 2; ++i) {
            for (int j = 1; j <= m - 2; ++j) {
                if (i != 1 && i != m - 2 && j != 1 && j != m - 2) continue;
                grads.push_back(grid_gradient(u, {i, j}));
            }
        }
    }
    double worst = 0.0;
    for (const RatVec& vr : hull.vertices()) {
        const std::vector<double> v = to_double_vec(vr);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& g : grads) {
            double d2 = 0.0;
            for (int i = 0; i < n; ++i) d2 += (g[i] - v[i]) * (g[i] - v[i]);
            best = std::min(best, std::sqrt(d2));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

// Default 2-D stencil half-width after Moreau smoothing.
constexpr int kPatch = 4;

// Least-squares quadratic-fit filters over 2r+1 unit-spaced taps.  The
// second-derivative filter is 2*(i^2 - s2/m)/(s4 - s2^2/m); at r=1 it
// reduces to the central second difference [1,-2,1].
struct PatchFilters {
    std::vector<double> d0, d1, d2;
    explicit PatchFilters(int r) {
        const int m = 2 * r + 1;
        double s2 = 0.0, s4 = 0.0;
        for (int i = -r; i <= r; ++i) {
            s2 += static_cast<double>(i) * i;
            s4 += static_cast<double>(i) * i * i * i;
        }
        const double denom = s4 - s2 * s2 / m;
        d0.assign(m, 1.0 / m);
        d1.resize(m);
        d2.resize(m);
        for (int i = -r; i <= r; ++i) {
            d1[i + r] = i / s2;
            d2[i + r] = 2.0 * (static_cast<double>(i) * i - s2 / m) / denom;
        }
    }
};

template <bool Parallel>
double hessian_det_sum_impl(const GridField& u, double* negative_mass,
                            int radius) {
    const int n = u.spec.dim();
    const int m = u.spec.resolution;
    if (n > 2) throw CapError("grid mass supports n <= 2");
    if (radius < 1) throw ValidationError("radius", "patch radius must be >= 1");

    const double hx = (u.spec.hi[0] - u.spec.lo[0]) / (m - 1);

    if (n == 1) {
        if (m < 4) throw ValidationError("grid.resolution", "need at least 4 points");
        auto edge_weight = [m](int i) { return (i == 1 || i == m - 2) ? 0.5 : 1.0; };
        std::vector<double> pos(m - 2, 0.0), neg(m - 2, 0.0);
        const double scale = hx; // cell volume, n! = 1
#pragma omp parallel for schedule(static) if (Parallel)
        for (int i = 1; i <= m - 2; ++i) {
            double uxx = (u.values[i + 1] - 2.0 * u.values[i] + u.values[i - 1]) /
                         (hx * hx);
            double w = edge_weight(i) * scale;
            pos[i - 1] = w * std::max(uxx, 0.0);
            neg[i - 1] = w * std::max(-uxx, 0.0);
        }
        double total = 0.0, total_neg = 0.0;
        for (int i = 0; i < m - 2; ++i) {
            total += pos[i];
            total_neg += neg[i];
        }
        if (negative_mass) *negative_mass = total_neg;
        return total;
    }

    const int r = radius;
    if (m < 2 * r + 2)
        throw ValidationError("grid.resolution", "grid too coarse for the stencil");
    const PatchFilters flt(r);
    auto edge_weight = [m, r](int i) {
        return (i == r || i == m - 1 - r) ? 0.5 : 1.0;
    };
    const double hy = (u.spec.hi[1] - u.spec.lo[1]) / (m - 1);
    const double scale = 2.0 * hx * hy; // cell volume times n!
    const double* v = u.values.data();
    const int rows = m - 2 * r;
    std::vector<double> pos(rows, 0.0), neg(rows, 0.0);
#pragma omp parallel for schedule(static) if (Parallel)
    for (int i = r; i <= m - 1 - r; ++i) {
        double row_pos = 0.0, row_neg = 0.0;
        const double wi = edge_weight(i);
        for (int j = r; j <= m - 1 - r; ++j) {
            double uxx = 0.0, uyy = 0.0, uxy = 0.0;
            for (int a = -r; a <= r; ++a) {
                const double* line =
                    v + static_cast<std::size_t>(i + a) * m + (j - r);
                double s0 = 0.0, s1 = 0.0, s2 = 0.0;
                for (int b = 0; b <= 2 * r; ++b) {
                    s0 += flt.d0[b] * line[b];
                    s1 += flt.d1[b] * line[b];
                    s2 += flt.d2[b] * line[b];
                }
                uxx += flt.d2[a + r] * s0;
                uyy += flt.d0[a + r] * s2;
                uxy += flt.d1[a + r] * s1;
            }
            uxx /= hx * hx;
            uyy /= hy * hy;
            uxy /= hx * hy;
            double det = uxx * uyy - uxy * uxy;
            double w = wi * edge_weight(j);
            row_pos += w * std::max(det, 0.0);
            row_neg += w * std::max(-det, 0.0);
        }
        pos[i - r] = row_pos * scale;
        neg[i - r] = row_neg * scale;
    }
    double total = 0.0, total_neg = 0.0;
    for (int i = 0; i < rows; ++i) {
        total += pos[i];
        total_neg += neg[i];
    }
    if (negative_mass) *negative_mass = total_neg;
    return total;
}

// Shared integration pipeline; checks are the caller's business.  Smooth
// inputs skip the Moreau step and use the narrow stencil.
double grid_mass_of_function(const GridFunction& fn, const GridSpec& grid,
                             double eps, bool smooth_input, bool parallel,
                             double* neg_out, GridField* u_out) {
    GridField field = parallel ? evaluate_on_grid(fn, grid)
                               : evaluate_on_grid_serial(fn, grid);
    GridField u = smooth_input
                      ? std::move(field)
                      : (parallel ? moreau_envelope(field, eps)
                                  : moreau_envelope_serial(field, eps));
    const int radius = smooth_input ? 1 : kPatch;
    double mass = parallel ? hessian_det_sum_omp(u, neg_out, radius)
                           : hessian_det_sum_serial(u, neg_out, radius);
    if (u_out) *u_out = std::move(u);
    return mass;
}

double grid_mass_checked(const GridFunction& fn, const RationalPolytope& hull,
                         int n, const GridMassParams& params_in,
                         bool smooth_input, MassReport& rep) {
    if (n > 2) throw CapError("grid mass supports n <= 2");
    GridMassParams p = params_in;
    if (p.grid.resolution == 0) p.grid = default_grid_mass_params(n).grid;
    if (p.grid.dim() != n) throw ValidationError("grid", "grid dimension mismatch");
    double eps = p.eps > 0.0 ? p.eps : default_moreau_eps(p.grid);

    double neg = 0.0;
    GridField u;
    double mass =
        grid_mass_of_function(fn, p.grid, eps, smooth_input, p.parallel, &neg, &u);

    rep.grid = p.grid;
    rep.moreau_eps = smooth_input ? 0.0 : eps;
    rep.grid_mass = mass;
    rep.negative_mass = neg;
    rep.boundary_deficit = coverage_deficit(u, hull);
    if (rep.boundary_deficit > p.coverage_delta)
        throw NumericError(
            "box too small: face gradients stop short of the slope hull boundary");
    if (neg > 0.01 * std::max(mass, 1e-12))
        throw NumericError("eps too small: negative determinant mass exceeds 1%");
    return mass;
}

// Smoothing width tuned to the slope set: the Moreau transition between two
// pieces has width eps * slope gap, and the determinant stencil only settles
// once the narrowest zone spans its footprint.  Capped at a quarter of the
// half-width so the zones stay inside the box.
double pl_moreau_eps(const GridSpec& spec, const std::vector<RatVec>& slopes) {
    double h = 0.0;
    double half_width = std::numeric_limits<double>::infinity();
    for (int a = 0; a < spec.dim(); ++a) {
        h = std::max(h, (spec.hi[a] - spec.lo[a]) / (spec.resolution - 1));
        half_width = std::min(half_width, 0.5 * (spec.hi[a] - spec.lo[a]));
    }
    double min_gap = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> pts;
    pts.reserve(slopes.size());
    for (const RatVec& s : slopes) pts.push_back(to_double_vec(s));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d2 = 0.0;
            for (std::size_t a = 0; a < pts[i].size(); ++a)
                d2 += (pts[i][a] - pts[j][a]) * (pts[i][a] - pts[j][a]);
            if (d2 > 0.0) min_gap = std::min(min_gap, std::sqrt(d2));
        }
    }
    const double base = default_moreau_eps(spec);
    if (!std::isfinite(min_gap)) return base;
    // Two regimes: the narrowest transition zone must span the stencil
    // footprint (second term), and the Moreau lattice jitter, whose clamped
    // determinant noise scales like (h/eps)^2, must stay under the noise
    // allowance (first term).
    double eps = std::max(48.0 * h, 2.0 * kPatch * h / min_gap);
    eps = std::min(eps, 0.25 * half_width);
    return std::max(eps, base);
}

} // namespace

bool is_piece_active(const PLConvexFunction& f, std::size_t index) {
    const auto& pieces = f.pieces();
    const int n = f.dim();
    const int m = static_cast<int>(pieces.size());
    std::vector<RatVec> rows(n + 1, RatVec(m, Rational(0)));
    RatVec rhs(n + 1), obj(m);
    for (int c = 0; c < m; ++c) {
        for (int r = 0; r < n; ++r) rows[r][c] = pieces[c].slope[r];
        rows[n][c] = 1;
        obj[c] = rational_from_double(pieces[c].intercept);
    }
    for (int r = 0; r < n; ++r) rhs[r] = pieces[index].slope[r];
    rhs[n] = 1;
    LpMax best = lp_max_eq_nonneg(rows, rhs, obj);
    if (!best.feasible || !best.bounded)
        throw NumericError("active-piece program degenerate");
    return best.value == obj[index];
}

std::vector<RatVec> active_slopes(const PLConvexFunction& f) {
    const auto& pieces = f.pieces();
    std::vector<char> active(pieces.size(), 0);
    const std::int64_t total = static_cast<std::int64_t>(pieces.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < total; ++i)
        active[static_cast<std::size_t>(i)] =
            is_piece_active(f, static_cast<std::size_t>(i)) ? 1 : 0;
    std::set<RatVec> out;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        if (active[i]) out.insert(pieces[i].slope);
    return std::vector<RatVec>(out.begin(), out.end());
}

Rational ma_mass_pl(const PLConvexFunction& f) {
    RationalPolytope hull = convex_hull(distinct_slopes(f));
    return Rational(factorial(f.dim())) * volume(hull);
}

GridMassParams default_grid_mass_params(int n) {
    GridMassParams p;
    if (n == 1)
        p.grid = GridSpec::cube(1, 20.0, 4096);
    else if (n == 2)
        p.grid = GridSpec::cube(2, 20.0, 512);
    else
        throw CapError("grid mass supports n <= 2");
    return p;
}

double ma_mass_grid(const PLConvexFunction& f, const GridMassParams& params,
                    MassReport* report) {
    MassReport local;
    MassReport& rep = report ? *report : local;
    const int n = f.dim();
    if (n > 2) throw CapError("grid mass supports n <= 2");
    std::vector<RatVec> slopes = distinct_slopes(f);
    RationalPolytope hull = convex_hull(slopes);

    GridMassParams p = params;
    if (p.grid.resolution == 0) p.grid = default_grid_mass_params(n).grid;
    if (p.grid.dim() != n) throw ValidationError("grid", "grid dimension mismatch");

    // Candidate boxes, small to large.  Junk in the clamped determinant grows
    // with the crease length inside the box, so the smallest box whose face
    // gradients still reach every hull vertex wins.  1-D determinants
    // telescope exactly, so only 2-D gains from shrinking.
    std::vector<GridSpec> candidates;
    if (n == 2 && p.auto_box) {
        double cap = 0.0;
        for (int a = 0; a < n; ++a)
            cap = std::max(cap, 0.5 * (p.grid.hi[a] - p.grid.lo[a]));
        for (double b : {4.0, 6.0, 8.0, 12.0, 16.0})
            if (b < cap) candidates.push_back(GridSpec::cube(2, b, p.grid.resolution));
        candidates.push_back(p.grid);
    } else {
        candidates.push_back(p.grid);
    }

    double mass = 0.0, neg = 0.0, deficit = 0.0, eps = 0.0;
    GridSpec chosen;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        chosen = candidates[c];
        eps = p.eps > 0.0 ? p.eps : pl_moreau_eps(chosen, slopes);
        GridField u;
        mass = grid_mass_of_function(f.as_grid_function(), chosen, eps,
                                     /*smooth_input=*/false, p.parallel, &neg, &u);
        deficit = coverage_deficit(u, hull);
        if (deficit <= p.coverage_delta) break;
    }

    rep.grid = chosen;
    rep.moreau_eps = eps;
    rep.grid_mass = mass;
    rep.negative_mass = neg;
    rep.boundary_deficit = deficit;
    if (deficit > p.coverage_delta)
        throw NumericError(
            "box too small: face gradients stop short of the slope hull boundary");
    const double neg_allowance = n == 2 ? 0.10 : 0.01;
    if (neg > neg_allowance * std::max(mass, 1e-12))
        throw NumericError("eps too small: negative determinant mass exceeds " +
                           std::string(n == 2 ? "10%" : "1%"));
    rep.exact_mass = ma_mass_pl(f);
    rep.active_slope_count =
        params.count_active ? static_cast<int>(active_slopes(f).size()) : 0;
    rep.discrepancy = std::fabs(to_double(*rep.exact_mass) - rep.grid_mass) /
                      std::max(to_double(*rep.exact_mass), 1e-12);
    return mass;
}

double ma_mass_grid(const SmoothToricWeight& w, const GridMassParams& params,
                    MassReport* report) {
    MassReport local;
    MassReport& rep = report ? *report : local;
    std::vector<RatVec> corners(w.n + 1, RatVec(w.n, Rational(0)));
    for (int i = 0; i < w.n; ++i) corners[i + 1][i] = w.d;
    RationalPolytope hull = convex_hull(corners);
    GridFunction fn = [&w](const std::vector<double>& t) { return w.value(t); };
    double mass = grid_mass_checked(fn, hull, w.n, params,
                                    /*smooth_input=*/true, rep);
    rep.discrepancy = 0.0;
    return mass;
}

double hessian_det_sum_serial(const GridField& u, double* negative_mass,
                              int radius) {
    return hessian_det_sum_impl<false>(u, negative_mass, radius);
}

double hessian_det_sum_omp(const GridField& u, double* negative_mass,
                           int radius) {
    return hessian_det_sum_impl<true>(u, negative_mass, radius);
}

std::optional<bool> comparison_check(const PLConvexFunction& f,
                                     const PLConvexFunction& g, double C) {
    if (f.dim() != g.dim())
        throw ValidationError("comparison", "dimension mismatch");
    const int n = f.dim();
    const double slack = C + 1e-9;

    GridSpec probe = GridSpec::cube(n, 12.0, n == 1 ? 1201 : 101);
    GridField ff = evaluate_on_grid_serial(f.as_grid_function(), probe);
    GridField gf = evaluate_on_grid_serial(g.as_grid_function(), probe);
    for (std::size_t i = 0; i < ff.values.size(); ++i)
        if (gf.values[i] > ff.values[i] + slack) return std::nullopt;

    // Crease witnesses: for each slope pair, the nearest point of the
    // bisector hyperplane; catches violations between grid lines.
    auto witness_pairs = [&](const PLConvexFunction& h) -> bool {
        const auto& ps = h.pieces();
        if (ps.size() * ps.size() > 20000) return true;
        for (std::size_t a = 0; a < ps.size(); ++a) {
            for (std::size_t b = a + 1; b < ps.size(); ++b) {
                if (ps[a].slope == ps[b].slope) continue;
                std::vector<double> dir(n);
                double norm2 = 0.0;
                for (int i = 0; i < n; ++i) {
                    dir[i] = to_double(ps[a].slope[i]) - to_double(ps[b].slope[i]);
                    norm2 += dir[i] * dir[i];
                }
                double c = (ps[b].intercept - ps[a].intercept) / norm2;
                std::vector<double> t(n);
                for (int i = 0; i < n; ++i) t[i] = c * dir[i];
                if (g.value(t) > f.value(t) + slack) return false;
            }
        }
        return true;
    };
    if (!witness_pairs(f) || !witness_pairs(g)) return std::nullopt;

    return ma_mass_pl(g) <= ma_mass_pl(f);
}

MassSequence analytic_mass_limit(EnvelopeBuilder& builder,
                                 const std::vector<int>& schedule) {
    validate_schedule(schedule);
    const int n = builder.series().n();
    MassSequence out;
    for (int k : schedule) {
        PLConvexFunction level = builder.level(k);
        Rational mass = ma_mass_pl(level);
        Rational normalized = mk_self_intersection(builder.series(), k) /
                              Rational(int_pow(Int(k), n));
        if (mass != normalized)
            throw NumericError("level mass differs from the normalized "
                               "self-intersection at k=" + std::to_string(k));
        if (!out.masses.empty() && mass < out.masses.back())
            throw NumericError("level masses decreased along the schedule");

        // Every hull vertex of the slope set must belong to an active piece.
        RationalPolytope hull = convex_hull(distinct_slopes(level));
        const auto& pieces = level.pieces();
        for (const RatVec& v : hull.vertices()) {
            std::size_t lo = 0, hi = pieces.size();
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (lex_less(pieces[mid].slope, v))
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo == pieces.size() || pieces[lo].slope != v)
                throw NumericError("hull vertex has no matching piece");
            if (!is_piece_active(level, lo))
                throw NumericError("hull vertex piece is inactive");
        }

        out.levels.push_back(k);
        out.masses.push_back(mass);
        out.normalized_mk.push_back(normalized);
    }
    out.final_mass = out.masses.back();
    return out;
}

ConvergenceReport monotone_convergence_harness(const PLConvexFunction& f,
                                               const GridMassParams& base) {
    const int n = f.dim();
    GridMassParams p = base;
    if (p.grid.resolution == 0) p.grid = default_grid_mass_params(n).grid;
    p.count_active = false;

    ConvergenceReport rep;
    rep.exact_mass = to_double(ma_mass_pl(f));

    RegimeReport a;
    a.regime = 'a';
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
        GridMassParams q = p;
        q.eps = eps;
        a.params.push_back(eps);
        a.grid_masses.push_back(ma_mass_grid(f, q));
        a.exact_masses.push_back(rep.exact_mass);
    }
    rep.regimes.push_back(std::move(a));

    RegimeReport b;
    b.regime = 'b';
    const std::size_t m = f.pieces().size();
    std::set<std::size_t> sizes{1, m};
    if (m > 2) sizes.insert(m / 2);
    if (m > 4) {
        sizes.insert(m / 4);
        sizes.insert(3 * m / 4);
    }
    for (std::size_t size : sizes) {
        std::vector<PLPiece> subset(f.pieces().begin(),
                                    f.pieces().begin() + size);
        PLConvexFunction g(n, std::move(subset));
        b.params.push_back(static_cast<double>(size));
        b.grid_masses.push_back(ma_mass_grid(g, p));
        b.exact_masses.push_back(to_double(ma_mass_pl(g)));
    }
    rep.regimes.push_back(std::move(b));

    RegimeReport c;
    c.regime = 'c';
    double eps = p.eps > 0.0 ? p.eps : default_moreau_eps(p.grid);
    for (double delta : {0.1, 0.01, 0.001}) {
        GridFunction bumped = [&f, delta](const std::vector<double>& t) {
            double r2 = 0.0;
            for (double x : t) r2 += x * x;
            return f.value(t) + delta * std::exp(-r2);
        };
        c.params.push_back(delta);
        c.grid_masses.push_back(grid_mass_of_function(
            bumped, p.grid, eps, false, p.parallel, nullptr, nullptr));
        c.exact_masses.push_back(rep.exact_mass);
    }
    rep.regimes.push_back(std::move(c));
    return rep;
}

std::string mass_report_json(const MassReport& r) {
    nlohmann::json j;
    j["exact_mass"] =
        r.exact_mass ? nlohmann::json(format_rational(*r.exact_mass))
                     : nlohmann::json(nullptr);
    j["grid_mass"] = r.grid_mass;
    j["grid"] = {{"lo", r.grid.lo}, {"hi", r.grid.hi},
                 {"resolution", r.grid.resolution}};
    j["moreau_eps"] = r.moreau_eps;
    j["active_slope_count"] = r.active_slope_count;
    j["discrepancy"] = r.discrepancy;
    j["negative_mass"] = r.negative_mass;
    j["boundary_deficit"] = r.boundary_deficit;
    return j.dump(2);
}

} // namespace gls
