#include "glsvol/lp.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "glsvol/errors.hpp"

namespace gls {

namespace {

// Scales an inequality to coprime integer coefficients so duplicates collide.
LinIneq normalize_ineq(const LinIneq& q) {
    RatVec all = q.coeffs;
    all.push_back(q.rhs);
    Int lcm_den = 1;
    for (const auto& x : all) lcm_den = lcm(lcm_den, denominator(x));
    Int g = 0;
    std::vector<Int> ints(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        ints[i] = numerator(all[i]) * (lcm_den / denominator(all[i]));
        g = gcd(g, ints[i]);
    }
    if (g == 0) g = 1;
    LinIneq out;
    out.coeffs.resize(q.coeffs.size());
    for (std::size_t i = 0; i < q.coeffs.size(); ++i) out.coeffs[i] = Rational(ints[i], g);
    out.rhs = Rational(ints.back(), g);
    return out;
}

bool all_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

constexpr std::size_t kFmRowCap = 100000;

// Returns std::nullopt when the elimination exceeds the row cap.
std::optional<bool> fm_feasible(std::vector<LinIneq> rows, int dim) {
    for (int var = 0; var < dim; ++var) {
        std::vector<LinIneq> lower, upper, keep;
        for (auto& r : rows) {
            const Rational& a = r.coeffs[var];
            if (a > 0)
                upper.push_back(r);
            else if (a < 0)
                lower.push_back(r);
            else
                keep.push_back(r);
        }
        std::vector<LinIneq> next = std::move(keep);
        std::map<std::vector<std::string>, bool> seen;
        auto push_unique = [&](LinIneq q) {
            q = normalize_ineq(q);
            std::vector<std::string> key;
            key.reserve(q.coeffs.size() + 1);
            for (const auto& c : q.coeffs) key.push_back(format_rational(c));
            key.push_back(format_rational(q.rhs));
            if (seen.emplace(std::move(key), true).second) next.push_back(std::move(q));
        };
        for (const auto& u : upper) {
            for (const auto& l : lower) {
                // u: a x + ... <= c with a > 0, paired with l: -b x + ... <= e, b > 0.
                const Rational a = u.coeffs[var];
                const Rational b = -l.coeffs[var];
                LinIneq comb;
                comb.coeffs.resize(dim);
                for (int j = 0; j < dim; ++j) comb.coeffs[j] = u.coeffs[j] / a + l.coeffs[j] / b;
                comb.coeffs[var] = 0;
                comb.rhs = u.rhs / a + l.rhs / b;
                if (all_zero(comb.coeffs)) {
                    if (comb.rhs < 0) return false;
                } else {
                    push_unique(std::move(comb));
                }
                if (next.size() > kFmRowCap) return std::nullopt;
            }
        }
        rows = std::move(next);
    }
    for (const auto& r : rows) {
        if (all_zero(r.coeffs) && r.rhs < 0) return false;
    }
    return true;
}

// Bland pivoting on a dense tableau until no entering column remains.
// Columns in [0, enter_limit) may enter the basis.  Returns false when an
// entering column has no positive entry (unbounded objective row).
bool bland_pivot(std::vector<RatVec>& tab, std::vector<int>& basis,
                 int m, int cols, int enter_limit) {
    while (true) {
        int pc = -1;
        for (int c = 0; c < enter_limit; ++c) {
            if (tab[m][c] < 0) { pc = c; break; }
        }
        if (pc < 0) return true;
        int pr = -1;
        Rational best;
        for (int r = 0; r < m; ++r) {
            if (tab[r][pc] <= 0) continue;
            Rational ratio = tab[r][cols] / tab[r][pc];
            if (pr < 0 || ratio < best || (ratio == best && basis[r] < basis[pr])) {
                pr = r;
                best = ratio;
            }
        }
        if (pr < 0) return false;
        const Rational p = tab[pr][pc];
        for (int c = 0; c <= cols; ++c) tab[pr][c] /= p;
        for (int r = 0; r <= m; ++r) {
            if (r == pr) continue;
            const Rational f = tab[r][pc];
            if (f == 0) continue;
            for (int c = 0; c <= cols; ++c) tab[r][c] -= f * tab[pr][c];
        }
        basis[pr] = pc;
    }
}

} // namespace

LpMax lp_max_eq_nonneg(const std::vector<RatVec>& rows_in, const RatVec& rhs_in,
                       const RatVec& objective) {
    const int m = static_cast<int>(rows_in.size());
    const int n = m == 0 ? static_cast<int>(objective.size())
                         : static_cast<int>(rows_in[0].size());
    if (static_cast<int>(objective.size()) != n)
        throw ValidationError("lp", "objective arity mismatch");
    LpMax out;
    if (m == 0) {
        out.feasible = true;
        out.bounded = true;
        for (const auto& c : objective)
            if (c > 0) out.bounded = false;
        out.value = 0;
        return out;
    }

    const int cols = n + m; // structural + one artificial per row
    std::vector<RatVec> tab(m + 1, RatVec(cols + 1, Rational(0)));
    for (int r = 0; r < m; ++r) {
        const bool flip = rhs_in[r] < 0;
        for (int c = 0; c < n; ++c) tab[r][c] = flip ? -rows_in[r][c] : rows_in[r][c];
        tab[r][n + r] = 1;
        tab[r][cols] = flip ? -rhs_in[r] : rhs_in[r];
    }
    // Phase-1 objective (minimize the artificial sum), reduced against the
    // starting basis of artificials.
    for (int c = 0; c <= cols; ++c) {
        if (c >= n && c < cols) continue;
        Rational s = 0;
        for (int r = 0; r < m; ++r) s += tab[r][c];
        tab[m][c] = -s;
    }
    std::vector<int> basis(m);
    for (int r = 0; r < m; ++r) basis[r] = n + r;

    bland_pivot(tab, basis, m, cols, cols); // phase 1 is bounded below by 0
    if (tab[m][cols] != 0) return out;      // infeasible
    out.feasible = true;

    // Drive leftover basic artificials out with degenerate pivots; phase 2
    // never lets artificials enter, but a basic one could otherwise be pushed
    // positive by a pivot row with a negative entry. Rows with no structural
    // entry left are redundant and stay identically zero.
    for (int r = 0; r < m; ++r) {
        if (basis[r] < n) continue;
        int pc = -1;
        for (int c = 0; c < n; ++c) {
            if (tab[r][c] != 0) { pc = c; break; }
        }
        if (pc < 0) continue;
        const Rational p = tab[r][pc];
        for (int c = 0; c <= cols; ++c) tab[r][c] /= p;
        for (int r2 = 0; r2 <= m; ++r2) {
            if (r2 == r) continue;
            const Rational f = tab[r2][pc];
            if (f == 0) continue;
            for (int c = 0; c <= cols; ++c) tab[r2][c] -= f * tab[r][c];
        }
        basis[r] = pc;
    }

    // Phase 2: minimize -objective over structural columns only, so basic
    // artificials stuck at zero can never re-enter with positive value.
    for (int c = 0; c <= cols; ++c) tab[m][c] = 0;
    for (int c = 0; c < n; ++c) tab[m][c] = -objective[c];
    for (int r = 0; r < m; ++r) {
        const Rational f = tab[m][basis[r]];
        if (f == 0) continue;
        for (int c = 0; c <= cols; ++c) tab[m][c] -= f * tab[r][c];
    }
    if (!bland_pivot(tab, basis, m, cols, n)) return out; // unbounded
    out.bounded = true;
    out.value = tab[m][cols];
    return out;
}

bool eq_nonneg_feasible(const std::vector<RatVec>& rows, const RatVec& rhs) {
    if (rows.empty()) return true;
    RatVec zero(rows[0].size(), Rational(0));
    return lp_max_eq_nonneg(rows, rhs, zero).feasible;
}

bool ineq_feasible(const std::vector<LinIneq>& system, int dim) {
    for (const auto& q : system) {
        if (static_cast<int>(q.coeffs.size()) != dim)
            throw ValidationError("lp", "inequality arity mismatch");
    }
    if (dim <= 3) {
        auto res = fm_feasible(system, dim);
        if (res.has_value()) return *res;
    }
    // Simplex fallback: x = u - v with u, v >= 0 and slacks s >= 0 turns
    // A x <= b into [A, -A, I] (u, v, s) = b.
    const int m = static_cast<int>(system.size());
    std::vector<RatVec> rows(m, RatVec(2 * dim + m, Rational(0)));
    RatVec rhs(m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < dim; ++c) {
            rows[r][c] = system[r].coeffs[c];
            rows[r][dim + c] = -system[r].coeffs[c];
        }
        rows[r][2 * dim + r] = 1;
        rhs[r] = system[r].rhs;
    }
    return eq_nonneg_feasible(rows, rhs);
}

bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& pts) {
    if (pts.empty()) return false;
    const int n = static_cast<int>(p.size());
    const int m = static_cast<int>(pts.size());
    std::vector<RatVec> rows(n + 1, RatVec(m, Rational(0)));
    RatVec rhs(n + 1);
    for (int c = 0; c < m; ++c) {
        for (int r = 0; r < n; ++r) rows[r][c] = pts[c][r];
        rows[n][c] = 1;
    }
    for (int r = 0; r < n; ++r) rhs[r] = p[r];
    rhs[n] = 1;
    return eq_nonneg_feasible(rows, rhs);
}

} // namespace gls
