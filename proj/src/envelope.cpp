#include "glsvol/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "glsvol/errors.hpp"

namespace gls {

SlopeClass classify_slope(const RatVec& s, int d) {
    Rational sum = 0;
    bool on_face = false;
    for (const Rational& si : s) {
        if (si < 0) return SlopeClass::outside;
        if (si == 0) on_face = true;
        sum += si;
    }
    if (sum > d) return SlopeClass::outside;
    if (sum == d) on_face = true;
    return on_face ? SlopeClass::boundary : SlopeClass::interior;
}

namespace {

// Maximizes a concave 1-D function over [a,b] to interval width tol.
// Returns the midpoint of the final bracket.
template <class F>
double golden_max(const F& f, double a, double b, double tol) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    static const double invphi2 = 1.0 - invphi;
    double h = b - a;
    double c = a + invphi2 * h;
    double d = a + invphi * h;
    double fc = f(c);
    double fd = f(d);
    while (h > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            h = b - a;
            c = a + invphi2 * h;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            h = b - a;
            d = a + invphi * h;
            fd = f(d);
        }
    }
    return (a + b) / 2.0;
}

int coarse_points_per_axis(int requested, int n) {
    double per_axis = std::pow(65536.0, 1.0 / n);
    int cap = std::max(2, static_cast<int>(per_axis));
    return std::min(requested, cap);
}

} // namespace

LegendreValue legendre_transform(const SmoothToricWeight& w, const RatVec& s,
                                 const LegendreParams& params) {
    if (static_cast<int>(s.size()) != w.n)
        throw ValidationError("s", "slope dimension mismatch");
    LegendreValue out;
    out.slope_class = classify_slope(s, w.d);
    if (out.slope_class == SlopeClass::outside) {
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }

    const int n = w.n;
    const double B = params.box_half_width;
    std::vector<double> sd = to_double_vec(s);
    auto objective = [&](const std::vector<double>& t) {
        double v = -w.value(t);
        for (int i = 0; i < n; ++i) v += sd[i] * t[i];
        return v;
    };

    // Coarse tensor scan for a starting point.
    const int m = coarse_points_per_axis(params.coarse_points, n);
    std::vector<double> best(n, 0.0);
    double best_val = objective(best);
    std::vector<int> idx(n, 0);
    std::vector<double> t(n);
    for (;;) {
        for (int i = 0; i < n; ++i)
            t[i] = -B + 2.0 * B * idx[i] / (m - 1);
        double v = objective(t);
        if (v > best_val) {
            best_val = v;
            best = t;
        }
        int axis = n - 1;
        while (axis >= 0 && ++idx[axis] == m) idx[axis--] = 0;
        if (axis < 0) break;
    }

    // Cyclic golden-section ascent; concavity makes coordinate descent
    // converge to the box optimum.
    double prev_val = best_val;
    double last_improvement = 0.0;
    for (int sweep = 0; sweep < params.sweeps; ++sweep) {
        for (int axis = 0; axis < n; ++axis) {
            auto line = [&](double x) {
                std::vector<double> p = best;
                p[axis] = x;
                return objective(p);
            };
            best[axis] = golden_max(line, -B, B, params.tol);
        }
        best_val = objective(best);
        last_improvement = best_val - prev_val;
        if (sweep > 0 && last_improvement < params.tol) break;
        prev_val = best_val;
    }
    if (last_improvement > 1e-6 * (1.0 + std::fabs(best_val)))
        throw NumericError("conjugate refinement did not converge");

    out.value = best_val;
    out.argmax = best;
    return out;
}

double legendre_box_drift(const SmoothToricWeight& w, const RatVec& s,
                          const LegendreParams& params) {
    LegendreValue base = legendre_transform(w, s, params);
    if (std::isinf(base.value)) return 0.0;
    LegendreParams grown = params;
    grown.box_half_width *= 1.5;
    LegendreValue wide = legendre_transform(w, s, grown);
    return wide.value - base.value;
}

PLConvexFunction::PLConvexFunction(int n, std::vector<PLPiece> pieces) : n_(n) {
    if (n < 1) throw ValidationError("n", "dimension must be at least 1");
    if (pieces.empty()) throw ValidationError("pieces", "piece list is empty");
    for (const PLPiece& p : pieces)
        if (static_cast<int>(p.slope.size()) != n)
            throw ValidationError("pieces", "slope dimension mismatch");
    std::sort(pieces.begin(), pieces.end(),
              [](const PLPiece& a, const PLPiece& b) {
                  if (a.slope != b.slope) return lex_less(a.slope, b.slope);
                  return a.intercept < b.intercept;
              });
    pieces.erase(std::unique(pieces.begin(), pieces.end(),
                             [](const PLPiece& a, const PLPiece& b) {
                                 return a.slope == b.slope &&
                                        a.intercept == b.intercept;
                             }),
                 pieces.end());
    pieces_ = std::move(pieces);
    dslopes_.reserve(pieces_.size());
    for (const PLPiece& p : pieces_) dslopes_.push_back(to_double_vec(p.slope));
}

double PLConvexFunction::value(const std::vector<double>& t) const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        best = std::max(best, dot(dslopes_[i], t) + pieces_[i].intercept);
    return best;
}

std::size_t PLConvexFunction::active_index(const std::vector<double>& t) const {
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        double v = dot(dslopes_[i], t) + pieces_[i].intercept;
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    return best;
}

std::vector<double> PLConvexFunction::discrete_gradient(
    const std::vector<double>& t) const {
    return dslopes_[active_index(t)];
}

GridFunction PLConvexFunction::as_grid_function() const {
    return [this](const std::vector<double>& t) { return value(t); };
}

void PLConvexFunction::serialize(std::ostream& os) const {
    os << "plfn " << n_ << " " << pieces_.size() << "\n";
    char buf[64];
    for (const PLPiece& p : pieces_) {
        for (const Rational& c : p.slope) os << format_rational(c) << " ";
        std::snprintf(buf, sizeof(buf), "%.17g", p.intercept);
        os << buf << "\n";
    }
}

PLConvexFunction PLConvexFunction::deserialize(std::istream& is) {
    std::string tag;
    int n = 0;
    std::size_t count = 0;
    if (!(is >> tag >> n >> count) || tag != "plfn")
        throw ValidationError("plfn", "malformed header");
    std::vector<PLPiece> pieces;
    pieces.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        PLPiece p;
        p.slope.resize(n);
        std::string token;
        for (int j = 0; j < n; ++j) {
            if (!(is >> token)) throw ValidationError("plfn", "truncated piece");
            p.slope[j] = parse_rational(token);
        }
        if (!(is >> p.intercept)) throw ValidationError("plfn", "missing intercept");
        pieces.push_back(std::move(p));
    }
    return PLConvexFunction(n, std::move(pieces));
}

EnvelopeBuilder::EnvelopeBuilder(const MonomialSeries& series,
                                 const SmoothToricWeight& weight,
                                 LegendreParams params)
    : series_(&series), weight_(&weight), params_(params) {
    if (series.n() != weight.n)
        throw ValidationError("weight", "weight dimension differs from series");
    if (series.d() != weight.d)
        throw ValidationError("weight", "weight degree differs from series");
}

PLConvexFunction EnvelopeBuilder::level(int k) {
    GradedPiece piece = graded_piece(*series_, k);
    if (piece.empty())
        throw ValidationError("k", "empty graded piece at level " + std::to_string(k));

    std::set<RatVec> slopes;
    for (const Exponent& a : piece.exponents) {
        RatVec s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            s[i] = Rational(Int(a[i]), Int(k));
        slopes.insert(std::move(s));
    }

    std::vector<RatVec> missing;
    for (const RatVec& s : slopes)
        if (cache_.find(s) == cache_.end()) missing.push_back(s);

    std::vector<LegendreValue> computed(missing.size());
    const std::int64_t total = static_cast<std::int64_t>(missing.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < total; ++i)
        computed[static_cast<std::size_t>(i)] =
            legendre_transform(*weight_, missing[static_cast<std::size_t>(i)], params_);
    for (std::size_t i = 0; i < missing.size(); ++i)
        cache_.emplace(missing[i], std::move(computed[i]));

    std::vector<PLPiece> pieces;
    pieces.reserve(slopes.size());
    for (const RatVec& s : slopes) {
        const LegendreValue& lv = cache_.at(s);
        if (lv.slope_class == SlopeClass::outside)
            throw NumericError("level slope escaped the dilated simplex");
        pieces.push_back(PLPiece{s, -lv.value});
    }
    return PLConvexFunction(series_->n(), std::move(pieces));
}

void validate_schedule(const std::vector<int>& levels) {
    if (levels.empty()) throw ValidationError("schedule", "empty schedule");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 1)
            throw ValidationError("schedule", "levels must be positive");
        if (i > 0) {
            if (levels[i] <= levels[i - 1])
                throw ValidationError("schedule", "levels must strictly increase");
            if (levels[i] % levels[i - 1] != 0)
                throw ValidationError("schedule",
                                      "each level must divide the next");
        }
    }
}

SymbolResult equilibrium_symbol(EnvelopeBuilder& builder,
                                const std::vector<int>& schedule,
                                const GridSpec& probe) {
    validate_schedule(schedule);
    SymbolResult out;
    out.schedule = schedule;
    out.probe = probe;
    for (int k : schedule) out.levels.push_back(builder.level(k));

    std::vector<PLPiece> all;
    for (const PLConvexFunction& f : out.levels)
        for (const PLPiece& p : f.pieces()) all.push_back(p);
    out.symbol = PLConvexFunction(builder.series().n(), std::move(all));

    if (out.levels.size() >= 2) {
        const PLConvexFunction& last = out.levels.back();
        const PLConvexFunction& prev = out.levels[out.levels.size() - 2];
        GridField a = evaluate_on_grid(last.as_grid_function(), probe);
        GridField b = evaluate_on_grid(prev.as_grid_function(), probe);
        double gap = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i)
            gap = std::max(gap, a.values[i] - b.values[i]);
        out.last_gap = gap;
    }
    return out;
}

SymbolResult equilibrium_symbol(EnvelopeBuilder& builder,
                                const std::vector<int>& schedule) {
    int n = builder.series().n();
    GridSpec probe = GridSpec::cube(n, 5.0, n == 1 ? 1001 : 65);
    return equilibrium_symbol(builder, schedule, probe);
}

int first_nonempty_level(const MonomialSeries& series, int limit) {
    for (int k = 1; k <= limit; ++k)
        if (!graded_piece(series, k).empty()) return k;
    return 0;
}

std::vector<int> doubling_schedule(int start, int k_max) {
    if (start < 1) throw ValidationError("schedule", "start must be positive");
    std::vector<int> out;
    for (long long k = start; k <= k_max; k *= 2)
        out.push_back(static_cast<int>(k));
    if (out.empty())
        throw ValidationError("schedule", "start exceeds the level cap");
    return out;
}

} // namespace gls
