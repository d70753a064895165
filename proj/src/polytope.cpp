#include "glsvol/polytope.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "glsvol/lp.hpp"

namespace gls {

namespace {

using Matrix = std::vector<RatVec>;

// Row echelon reduction; returns rank. Destroys m.
int rank_of(Matrix m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            const Rational f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// Kernel basis of the row space: all v with m . v = 0 (m given by rows).
std::vector<RatVec> kernel_of(Matrix m, int cols) {
    const int rows = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        const Rational piv = m[r][c];
        for (int j = 0; j < cols; ++j) m[r][j] /= piv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, Rational(0));
        v[free] = 1;
        for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) v[pivot_col[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves square system a x = b by Gauss-Jordan. Throws if singular.
RatVec solve_square(Matrix a, RatVec b) {
    const int n = static_cast<int>(a.size());
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) { pr = i; break; }
        if (pr < 0) throw Error("singular system");
        std::swap(a[c], a[pr]);
        std::swap(b[c], b[pr]);
        const Rational piv = a[c][c];
        for (int j = 0; j < n; ++j) a[c][j] /= piv;
        b[c] /= piv;
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (int j = 0; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    return b;
}

Rational cross2(const RatVec& o, const RatVec& a, const RatVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Counterclockwise hull cycle of >= 3 affinely spanning points, strict turns
// only (collinear boundary points are dropped).
std::vector<RatVec> chain_hull_2d(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = static_cast<int>(pts.size());
    std::vector<RatVec> hull;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (int i = 0; i < n; ++i) {
            const RatVec& p = pts[pass == 0 ? i : n - 1 - i];
            while (hull.size() >= base + 2 &&
                   cross2(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 0)
                hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
    }
    return hull;
}

struct WorkingHull {
    std::vector<RatVec> vertices;              // in working coordinates
    std::vector<Halfspace> facets;             // in working coordinates
    std::vector<std::vector<int>> facet_vertices;
};

constexpr int kMaxHullDim = 6;
constexpr std::size_t kMaxHullPointsHighDim = 2000;
constexpr std::size_t kMaxExtremeDim3 = 60;
constexpr std::size_t kMaxExtremeDim4Plus = 28;

// Full-dimensional hull in the working space.
WorkingHull hull_full_dim(std::vector<RatVec> pts, int md) {
    WorkingHull out;
    if (md == 1) {
        auto [mn, mx] = std::minmax_element(pts.begin(), pts.end(), lex_less);
        out.vertices = {*mn, *mx};
        if (out.vertices[0] == out.vertices[1]) out.vertices.pop_back();
        out.facets.push_back({{Rational(-1)}, -(*mn)[0]});
        out.facets.push_back({{Rational(1)}, (*mx)[0]});
        out.facet_vertices = {{0}, {1}};
        return out;
    }
    if (md == 2) {
        auto cycle = chain_hull_2d(std::move(pts));
        const int m = static_cast<int>(cycle.size());
        // Map cycle entries to lexicographically sorted vertex indices.
        std::vector<RatVec> sorted = cycle;
        std::sort(sorted.begin(), sorted.end(), lex_less);
        auto index_of = [&](const RatVec& v) {
            return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v, lex_less) -
                                    sorted.begin());
        };
        out.vertices = sorted;
        for (int i = 0; i < m; ++i) {
            const RatVec& a = cycle[i];
            const RatVec& b = cycle[(i + 1) % m];
            RatVec normal = {b[1] - a[1], a[0] - b[0]}; // outward for ccw
            Halfspace h{normal, normal[0] * a[0] + normal[1] * a[1]};
            out.facets.push_back(std::move(h));
            std::vector<int> inc = {index_of(a), index_of(b)};
            std::sort(inc.begin(), inc.end());
            out.facet_vertices.push_back(std::move(inc));
        }
        return out;
    }
    if (md > kMaxHullDim)
        throw CapError("convex hull beyond dimension " + std::to_string(kMaxHullDim));
    if (pts.size() > kMaxHullPointsHighDim)
        throw CapError("convex hull in dimension >= 3 capped at " +
                       std::to_string(kMaxHullPointsHighDim) + " input points");
    // Exact extreme-point filter.
    std::vector<RatVec> extreme;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<RatVec> others;
        others.reserve(pts.size() - 1);
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!in_convex_hull(pts[i], others)) extreme.push_back(pts[i]);
    }
    const std::size_t cap = md == 3 ? kMaxExtremeDim3 : kMaxExtremeDim4Plus;
    if (extreme.size() > cap)
        throw CapError("convex hull with " + std::to_string(extreme.size()) +
                       " extreme points exceeds the dimension-" + std::to_string(md) + " cap of " +
                       std::to_string(cap));
    std::sort(extreme.begin(), extreme.end(), lex_less);
    const int V = static_cast<int>(extreme.size());
    out.vertices = extreme;
    // Interior reference point: the vertex centroid.
    RatVec centroid(md, Rational(0));
    for (const auto& v : extreme)
        for (int j = 0; j < md; ++j) centroid[j] += v[j];
    for (int j = 0; j < md; ++j) centroid[j] /= V;
    // Enumerate md-subsets, derive their hyperplane, keep supporting ones.
    std::map<std::pair<std::vector<std::string>, std::string>, bool> seen;
    auto consider = [&](const std::vector<int>& sel) {
        Matrix dirs;
        for (int i = 1; i < md; ++i) {
            RatVec d(md);
            for (int j = 0; j < md; ++j) d[j] = extreme[sel[i]][j] - extreme[sel[0]][j];
            dirs.push_back(std::move(d));
        }
        auto ker = kernel_of(dirs, md);
        if (ker.size() != 1) return; // not affinely independent
        RatVec normal = normalize_direction(ker[0]);
        Rational offset = dot(normal, extreme[sel[0]]);
        const Rational side = dot(normal, centroid);
        if (side == offset) return; // passes through the interior point
        if (side > offset) {
            for (auto& x : normal) x = -x;
            offset = -offset;
        }
        for (int i = 0; i < V; ++i)
            if (dot(normal, extreme[i]) > offset) return; // not supporting
        std::vector<std::string> key;
        for (const auto& x : normal) key.push_back(format_rational(x));
        if (!seen.emplace(std::make_pair(std::move(key), format_rational(offset)), true).second)
            return;
        std::vector<int> inc;
        for (int i = 0; i < V; ++i)
            if (dot(normal, extreme[i]) == offset) inc.push_back(i);
        out.facets.push_back({std::move(normal), std::move(offset)});
        out.facet_vertices.push_back(std::move(inc));
    };
    std::vector<int> sel(md);
    auto rec = [&](auto&& self, int pos, int from) -> void {
        if (pos == md) {
            consider(sel);
            return;
        }
        for (int i = from; i < V; ++i) {
            sel[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Triangulates the convex position points (working coordinates, full
// dimension md) into simplices given the facet structure; emits index tuples.
std::vector<std::vector<int>> triangulate(const std::vector<RatVec>& verts,
                                          const std::vector<std::vector<int>>& facet_verts, int md);

// Triangulates one facet (an (md-1)-polytope embedded in md coordinates) by
// mapping it to its own affine coordinates and recursing.
std::vector<std::vector<int>> triangulate_facet(const std::vector<RatVec>& verts,
                                                const std::vector<int>& inc, int md) {
    const int fd = md - 1;
    // Affine coordinates inside the facet.
    const RatVec& origin = verts[inc[0]];
    Matrix dirs;
    std::vector<int> desc;
    for (std::size_t i = 1; i < inc.size() && static_cast<int>(dirs.size()) < fd; ++i) {
        RatVec d(md);
        for (int j = 0; j < md; ++j) d[j] = verts[inc[i]][j] - origin[j];
        Matrix test = dirs;
        test.push_back(d);
        if (rank_of(test) == static_cast<int>(dirs.size()) + 1) dirs.push_back(std::move(d));
    }
    // Coordinate rows making the solve square, chosen by greedy rank.
    Matrix dt;
    for (int j = 0; j < md; ++j) {
        RatVec row(dirs.size());
        for (std::size_t i = 0; i < dirs.size(); ++i) row[i] = dirs[i][j];
        dt.push_back(std::move(row));
    }
    std::vector<int> pivot_rows;
    {
        Matrix acc;
        for (int i = 0; i < md && static_cast<int>(pivot_rows.size()) < fd; ++i) {
            Matrix test = acc;
            test.push_back(dt[i]);
            if (rank_of(test) == static_cast<int>(acc.size()) + 1) {
                acc.push_back(dt[i]);
                pivot_rows.push_back(i);
            }
        }
    }
    Matrix square(fd, RatVec(fd));
    for (int i = 0; i < fd; ++i)
        for (int j = 0; j < fd; ++j) square[i][j] = dirs[j][pivot_rows[i]];
    std::vector<RatVec> mapped;
    for (int i : inc) {
        RatVec rhs(fd);
        for (int r = 0; r < fd; ++r) rhs[r] = verts[i][pivot_rows[r]] - origin[pivot_rows[r]];
        mapped.push_back(solve_square(square, std::move(rhs)));
    }
    WorkingHull fh = hull_full_dim(mapped, fd);
    // Map facet-local vertex coordinates back to global indices.
    std::map<std::vector<std::string>, int> lookup;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        std::vector<std::string> key;
        for (const auto& x : mapped[i]) key.push_back(format_rational(x));
        lookup[key] = inc[i];
    }
    auto local = triangulate(fh.vertices, fh.facet_vertices, fd);
    std::vector<std::vector<int>> out;
    for (const auto& simplex : local) {
        std::vector<int> glob;
        for (int li : simplex) {
            std::vector<std::string> key;
            for (const auto& x : fh.vertices[li]) key.push_back(format_rational(x));
            glob.push_back(lookup.at(key));
        }
        out.push_back(std::move(glob));
    }
    return out;
}

std::vector<std::vector<int>> triangulate(const std::vector<RatVec>& verts,
                                          const std::vector<std::vector<int>>& facet_verts, int md) {
    std::vector<std::vector<int>> out;
    if (md == 1) {
        out.push_back({0, static_cast<int>(verts.size()) - 1});
        return out;
    }
    if (md == 2) {
        // Fan over the boundary cycle. Rebuild the cycle from edges.
        const int m = static_cast<int>(verts.size());
        if (m < 3) return out;
        std::vector<std::vector<int>> adj(m);
        for (const auto& e : facet_verts) {
            adj[e[0]].push_back(e[1]);
            adj[e[1]].push_back(e[0]);
        }
        std::vector<int> cycle = {0};
        int prev = -1;
        while (static_cast<int>(cycle.size()) < m) {
            int cur = cycle.back();
            int nxt = (adj[cur][0] != prev) ? adj[cur][0] : adj[cur][1];
            prev = cur;
            cycle.push_back(nxt);
        }
        for (int i = 1; i + 1 < m; ++i) out.push_back({cycle[0], cycle[i], cycle[i + 1]});
        return out;
    }
    // Pyramids from vertex 0 over facets that do not contain it.
    for (const auto& inc : facet_verts) {
        if (std::find(inc.begin(), inc.end(), 0) != inc.end()) continue;
        for (auto& s : triangulate_facet(verts, inc, md)) {
            s.push_back(0);
            out.push_back(std::move(s));
        }
    }
    return out;
}

Rational simplex_volume(const std::vector<RatVec>& verts, const std::vector<int>& simplex, int md) {
    Matrix edges;
    for (int i = 0; i + 1 < static_cast<int>(simplex.size()); ++i) {
        RatVec d(md);
        for (int j = 0; j < md; ++j) d[j] = verts[simplex[i]][j] - verts[simplex.back()][j];
        edges.push_back(std::move(d));
    }
    // Determinant by Gaussian elimination.
    Rational det = 1;
    Matrix m = edges;
    for (int c = 0; c < md; ++c) {
        int pr = -1;
        for (int i = c; i < md; ++i)
            if (m[i][c] != 0) { pr = i; break; }
        if (pr < 0) return Rational(0);
        if (pr != c) {
            std::swap(m[c], m[pr]);
            det = -det;
        }
        det *= m[c][c];
        for (int i = c + 1; i < md; ++i) {
            if (m[i][c] == 0) continue;
            const Rational f = m[i][c] / m[c][c];
            for (int j = c; j < md; ++j) m[i][j] -= f * m[c][j];
        }
    }
    Rational fact = 1;
    for (int i = 2; i <= md; ++i) fact *= i;
    Rational v = det / fact;
    return v < 0 ? -v : v;
}

} // namespace

bool RationalPolytope::contains(const RatVec& p) const {
    for (const auto& eq : span_)
        if (dot(eq.normal, p) != eq.offset) return false;
    for (const auto& f : facets_)
        if (dot(f.normal, p) > f.offset) return false;
    return !vertices_.empty();
}

RationalPolytope convex_hull(const std::vector<RatVec>& points) {
    if (points.empty()) throw ValidationError("points", "empty point list");
    const int n = static_cast<int>(points[0].size());
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != n) throw ValidationError("points", "mixed arities");
    std::vector<RatVec> pts = points;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    RationalPolytope out;
    out.ambient_dim_ = n;

    // Affine dimension and a greedy difference basis.
    const RatVec& v0 = pts[0];
    Matrix basis; // rows are independent directions
    for (const auto& p : pts) {
        if (static_cast<int>(basis.size()) == n) break;
        RatVec d(n);
        for (int j = 0; j < n; ++j) d[j] = p[j] - v0[j];
        Matrix test = basis;
        test.push_back(d);
        if (rank_of(test) == static_cast<int>(basis.size()) + 1) basis.push_back(std::move(d));
    }
    const int md = static_cast<int>(basis.size());
    out.dim_ = md;

    if (md == 0) {
        out.vertices_ = {v0};
        for (int j = 0; j < n; ++j) {
            RatVec e(n, Rational(0));
            e[j] = 1;
            out.span_.push_back({e, v0[j]});
        }
        return out;
    }

    if (md == n) {
        WorkingHull wh = hull_full_dim(pts, n);
        out.vertices_ = wh.vertices;
        out.facets_ = wh.facets;
        out.facet_vertices_ = wh.facet_vertices;
    } else {
        // Map to affine coordinates: square solve against pivot rows.
        std::vector<int> pivot_rows;
        {
            Matrix acc;
            Matrix bt(n, RatVec(md));
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < md; ++i) bt[j][i] = basis[i][j];
            for (int j = 0; j < n && static_cast<int>(pivot_rows.size()) < md; ++j) {
                Matrix test = acc;
                test.push_back(bt[j]);
                if (rank_of(test) == static_cast<int>(acc.size()) + 1) {
                    acc.push_back(bt[j]);
                    pivot_rows.push_back(j);
                }
            }
        }
        Matrix square(md, RatVec(md));
        for (int i = 0; i < md; ++i)
            for (int j = 0; j < md; ++j) square[i][j] = basis[j][pivot_rows[i]];
        std::vector<RatVec> mapped;
        std::map<std::vector<std::string>, RatVec> back;
        for (const auto& p : pts) {
            RatVec rhs(md);
            for (int r = 0; r < md; ++r) rhs[r] = p[pivot_rows[r]] - v0[pivot_rows[r]];
            RatVec c = solve_square(square, std::move(rhs));
            std::vector<std::string> key;
            for (const auto& x : c) key.push_back(format_rational(x));
            back[key] = p;
            mapped.push_back(std::move(c));
        }
        WorkingHull wh = hull_full_dim(mapped, md);
        for (const auto& wv : wh.vertices) {
            std::vector<std::string> key;
            for (const auto& x : wv) key.push_back(format_rational(x));
            out.vertices_.push_back(back.at(key));
        }
        // Keep vertices lexicographic in ambient coordinates; remap facets.
        std::vector<int> order(out.vertices_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return lex_less(out.vertices_[a], out.vertices_[b]); });
        std::vector<int> inv(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = static_cast<int>(i);
        std::vector<RatVec> sorted_verts(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) sorted_verts[i] = out.vertices_[order[i]];
        out.vertices_ = std::move(sorted_verts);

        // Lift facet halfspaces: ambient normal nu = B G^{-1} w.
        Matrix gram(md, RatVec(md, Rational(0)));
        for (int i = 0; i < md; ++i)
            for (int j = 0; j < md; ++j) {
                Rational s = 0;
                for (int t = 0; t < n; ++t) s += basis[i][t] * basis[j][t];
                gram[i][j] = s;
            }
        for (std::size_t fi = 0; fi < wh.facets.size(); ++fi) {
            RatVec gw = solve_square(gram, wh.facets[fi].normal);
            RatVec nu(n, Rational(0));
            for (int t = 0; t < n; ++t)
                for (int i = 0; i < md; ++i) nu[t] += basis[i][t] * gw[i];
            Rational off = wh.facets[fi].offset + dot(nu, v0);
            out.facets_.push_back({std::move(nu), std::move(off)});
            std::vector<int> inc;
            for (int i : wh.facet_vertices[fi]) inc.push_back(inv[i]);
            std::sort(inc.begin(), inc.end());
            out.facet_vertices_.push_back(std::move(inc));
        }
        // Affine span equalities from the kernel of the direction matrix.
        for (auto& eta : kernel_of(basis, n)) {
            RatVec nrm = normalize_direction(eta);
            out.span_.push_back({nrm, dot(nrm, v0)});
        }
    }

    // Canonical facet order.
    {
        std::vector<std::size_t> order(out.facets_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        auto facet_key = [&](std::size_t i) {
            RatVec k = out.facets_[i].normal;
            k.push_back(out.facets_[i].offset);
            return k;
        };
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return lex_less(facet_key(a), facet_key(b)); });
        std::vector<Halfspace> fs;
        std::vector<std::vector<int>> fv;
        for (auto i : order) {
            fs.push_back(out.facets_[i]);
            fv.push_back(out.facet_vertices_[i]);
        }
        out.facets_ = std::move(fs);
        out.facet_vertices_ = std::move(fv);
    }

    // Cross-validation of the two representations.
    for (const auto& v : out.vertices_) {
        int tight = 0;
        for (const auto& eq : out.span_)
            if (dot(eq.normal, v) != eq.offset) throw Error("hull invariant: vertex off the affine span");
        for (const auto& f : out.facets_) {
            const Rational s = dot(f.normal, v);
            if (s > f.offset) throw Error("hull invariant: vertex outside a facet halfspace");
            if (s == f.offset) ++tight;
        }
        if (md >= 1 && tight < md) throw Error("hull invariant: vertex not tight on enough facets");
    }
    for (const auto& inc : out.facet_vertices_)
        if (static_cast<int>(inc.size()) < md) throw Error("hull invariant: facet with too few vertices");
    for (const auto& p : pts)
        if (!out.contains(p)) throw Error("hull invariant: input point outside the hull");
    return out;
}

Rational volume(const RationalPolytope& p) {
    if (p.dim() < p.ambient_dim()) return Rational(0);
    const int md = p.dim();
    if (md == 0) return Rational(0);
    auto simplices = triangulate(p.vertices(), p.facet_vertices(), md);
    Rational total = 0;
    for (const auto& s : simplices) total += simplex_volume(p.vertices(), s, md);
    return total;
}

std::vector<Exponent> lattice_points(const RationalPolytope& p, std::size_t cap) {
    const int n = p.ambient_dim();
    std::vector<std::int64_t> lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        Rational mn = p.vertices()[0][j], mx = mn;
        for (const auto& v : p.vertices()) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        // ceil(mn), floor(mx)
        Int num = numerator(mn), den = denominator(mn);
        Int q = num / den;
        if (q * den < num) q += 1;
        lo[j] = q.convert_to<std::int64_t>();
        num = numerator(mx);
        den = denominator(mx);
        q = num / den;
        if (q * den > num) q -= 1;
        hi[j] = q.convert_to<std::int64_t>();
    }
    // Candidate count guard.
    double count = 1;
    for (int j = 0; j < n; ++j) {
        if (hi[j] < lo[j]) return {};
        count *= static_cast<double>(hi[j] - lo[j] + 1);
        if (count > static_cast<double>(cap))
            throw CapError("lattice enumeration box exceeds the cap");
    }
    std::vector<Exponent> out;
    Exponent cur(n);
    auto rec = [&](auto&& self, int j) -> void {
        if (j == n) {
            RatVec q(n);
            for (int t = 0; t < n; ++t) q[t] = Rational(cur[t]);
            if (p.contains(q)) out.push_back(cur);
            return;
        }
        for (std::int64_t v = lo[j]; v <= hi[j]; ++v) {
            cur[j] = v;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    return out;
}

Rational mk_self_intersection(const MonomialSeries& w, int k) {
    GradedPiece piece = graded_piece(w, k);
    if (piece.empty())
        throw ValidationError("k", "series trivial at level " + std::to_string(k));
    std::vector<RatVec> pts;
    pts.reserve(piece.dimension());
    for (const auto& e : piece.exponents) pts.push_back(to_rat_vec(e));
    RationalPolytope hull = convex_hull(pts);
    Rational fact = 1;
    for (int i = 2; i <= w.n(); ++i) fact *= i;
    return fact * volume(hull);
}

std::string serialize_vrep(const RationalPolytope& p) {
    std::string out;
    for (const auto& v : p.vertices()) {
        out += format_rat_vec(v);
        out += "\n";
    }
    return out;
}

std::vector<RatVec> parse_vrep(const std::string& text) {
    std::vector<RatVec> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        RatVec v;
        std::string tok;
        while (ls >> tok) v.push_back(parse_rational(tok));
        if (!v.empty()) out.push_back(std::move(v));
    }
    return out;
}

} // namespace gls
