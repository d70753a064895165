#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "glsvol/envelope.hpp"
#include "glsvol/errors.hpp"
#include "glsvol/grid.hpp"
#include "glsvol/moreau.hpp"
#include "glsvol/series.hpp"
#include "glsvol/weight.hpp"

using namespace gls;

namespace {

// ---- oracles ----------------------------------------------------------

double xlogx(double x) { return x <= 0.0 ? 0.0 : x * std::log(x); }

// Conjugate of d*log(1 + sum e^{t_i}) at s inside d*Simplex, in closed form:
// sum_i s_i log s_i + (d - sum s) log(d - sum s) - d log d.
double fs_conjugate(const std::vector<double>& s, int d) {
    double total = 0.0;
    double out = 0.0;
    for (double si : s) {
        out += xlogx(si);
        total += si;
    }
    return out + xlogx(double(d) - total) - double(d) * std::log(double(d));
}

double fs_conjugate(const RatVec& s, int d) {
    return fs_conjugate(to_double_vec(s), d);
}

// Brute-force conjugate: coarse scan over a big box, then two zoom stages
// around the best point.  Independent of the library's golden-section path.
double dense_conjugate_1d(const SmoothToricWeight& w, double s) {
    auto obj = [&](double t) { return s * t - w.value({t}); };
    double best_t = 0.0;
    double best = obj(0.0);
    for (int i = 0; i <= 60000; ++i) {
        const double t = -30.0 + i * 1e-3;
        const double v = obj(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    for (double span : {2e-3, 2e-6}) {
        const double center = best_t;
        for (int i = 0; i <= 4000; ++i) {
            const double t = center - span + i * (span / 2000.0);
            const double v = obj(t);
            if (v > best) {
                best = v;
                best_t = t;
            }
        }
    }
    return best;
}

double dense_conjugate_2d(const SmoothToricWeight& w, double s1, double s2) {
    auto obj = [&](double x, double y) {
        return s1 * x + s2 * y - w.value({x, y});
    };
    double bx = 0.0, by = 0.0, best = obj(0.0, 0.0);
    auto scan = [&](double cx, double cy, double span, int m) {
        const double step = 2.0 * span / m;
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j) {
                const double x = cx - span + i * step;
                const double y = cy - span + j * step;
                const double v = obj(x, y);
                if (v > best) {
                    best = v;
                    bx = x;
                    by = y;
                }
            }
    };
    scan(0.0, 0.0, 20.0, 800);
    scan(bx, by, 0.1, 400);
    scan(bx, by, 5e-4, 400);
    return best;
}

RatVec rs(std::initializer_list<Rational> xs) { return RatVec(xs); }

// ---- weight -----------------------------------------------------------

TEST_CASE("the smooth toric weight matches its defining formula") {
    const SmoothToricWeight w = fubini_study_weight(2, 3);
    CHECK(w.n == 2);
    CHECK(w.d == 3);
    CHECK(w.name.rfind("fubini-study", 0) == 0);
    const std::vector<double> t{0.3, -1.1};
    CHECK(w.value(t) ==
          doctest::Approx(3.0 * std::log(1.0 + std::exp(0.3) + std::exp(-1.1)))
              .epsilon(1e-12));
    CHECK(w.density({0.0, 0.0}) == doctest::Approx(1.0 / 27.0).epsilon(1e-12));
    CHECK(std::exp(w.log_density(t)) == doctest::Approx(w.density(t)).epsilon(1e-12));
}

TEST_CASE("weight gradients agree with central differences") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pick(-4.0, 4.0);
    for (int n : {1, 2}) {
        for (int d : {1, 2}) {
            const SmoothToricWeight w = fubini_study_weight(n, d);
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> t(n);
                for (double& x : t) x = pick(rng);
                const std::vector<double> g = w.gradient(t);
                REQUIRE(int(g.size()) == n);
                const double h = 1e-5;
                double sum = 0.0;
                for (int i = 0; i < n; ++i) {
                    std::vector<double> tp = t, tm = t;
                    tp[i] += h;
                    tm[i] -= h;
                    const double fd = (w.value(tp) - w.value(tm)) / (2.0 * h);
                    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
                    CHECK(g[i] > 0.0);
                    sum += g[i];
                }
                CHECK(sum < double(d));
            }
        }
    }
}

// ---- slope classification ---------------------------------------------

TEST_CASE("slopes classify exactly against the dilated simplex") {
    CHECK(classify_slope(rs({Rational(1, 2)}), 1) == SlopeClass::interior);
    CHECK(classify_slope(rs({Rational(0)}), 1) == SlopeClass::boundary);
    CHECK(classify_slope(rs({Rational(1)}), 1) == SlopeClass::boundary);
    CHECK(classify_slope(rs({Rational(3, 2)}), 1) == SlopeClass::outside);
    CHECK(classify_slope(rs({Rational(1)}), 2) == SlopeClass::interior);

    CHECK(classify_slope(rs({Rational(1, 2), Rational(1, 2)}), 2) == SlopeClass::interior);
    CHECK(classify_slope(rs({Rational(0), Rational(0)}), 2) == SlopeClass::boundary);
    CHECK(classify_slope(rs({Rational(2), Rational(0)}), 2) == SlopeClass::boundary);
    CHECK(classify_slope(rs({Rational(1), Rational(1)}), 2) == SlopeClass::boundary);
    CHECK(classify_slope(rs({Rational(3), Rational(0)}), 2) == SlopeClass::outside);
    CHECK(classify_slope(rs({Rational(-1, 2), Rational(1)}), 2) == SlopeClass::outside);
    CHECK(classify_slope(rs({Rational(1, 2), Rational(1, 2)}), 1) == SlopeClass::boundary);
}

// ---- conjugates -------------------------------------------------------

TEST_CASE("conjugate values hit the pinned closed forms") {
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    {
        const LegendreValue lv = legendre_transform(w, rs({Rational(1, 2)}));
        CHECK(lv.slope_class == SlopeClass::interior);
        CHECK(lv.value == doctest::Approx(-std::log(2.0)).epsilon(1e-9));
        REQUIRE(lv.argmax.size() == 1);
        CHECK(std::abs(lv.argmax[0]) < 1e-4);
    }
    {
        const LegendreValue lv = legendre_transform(w, rs({Rational(0)}));
        CHECK(lv.slope_class == SlopeClass::boundary);
        CHECK(std::abs(lv.value) < 1e-8);
    }
    {
        const LegendreValue lv = legendre_transform(w, rs({Rational(1)}));
        CHECK(lv.slope_class == SlopeClass::boundary);
        CHECK(std::abs(lv.value) < 1e-8);
    }
    {
        const LegendreValue lv = legendre_transform(w, rs({Rational(2)}));
        CHECK(lv.slope_class == SlopeClass::outside);
        CHECK(std::isinf(lv.value));
        CHECK(lv.argmax.empty());
    }
    {
        const SmoothToricWeight w22 = fubini_study_weight(2, 2);
        const LegendreValue lv = legendre_transform(w22, rs({Rational(2), Rational(0)}));
        CHECK(lv.slope_class == SlopeClass::boundary);
        CHECK(std::abs(lv.value) < 1e-8);
    }
}

TEST_CASE("conjugates match the closed form across dimensions and degrees") {
    struct Case {
        int n, d;
        RatVec s;
    };
    const std::vector<Case> cases{
        {1, 1, rs({Rational(1, 10)})},
        {1, 1, rs({Rational(1, 3)})},
        {1, 1, rs({Rational(2, 3)})},
        {1, 1, rs({Rational(9, 10)})},
        {1, 2, rs({Rational(1, 2)})},
        {1, 2, rs({Rational(1)})},
        {1, 2, rs({Rational(3, 2)})},
        {1, 2, rs({Rational(2)})},
        {2, 1, rs({Rational(1, 4), Rational(1, 4)})},
        {2, 1, rs({Rational(1, 3), Rational(1, 3)})},
        {2, 1, rs({Rational(1, 5), Rational(3, 5)})},
        {2, 1, rs({Rational(1, 2), Rational(1, 2)})},
        {2, 1, rs({Rational(1), Rational(0)})},
        {2, 2, rs({Rational(1, 2), Rational(1, 2)})},
        {2, 2, rs({Rational(1), Rational(1, 2)})},
        {2, 2, rs({Rational(1), Rational(1)})},
    };
    for (const Case& c : cases) {
        const SmoothToricWeight w = fubini_study_weight(c.n, c.d);
        const LegendreValue lv = legendre_transform(w, c.s);
        CHECK(lv.slope_class != SlopeClass::outside);
        CHECK(lv.value == doctest::Approx(fs_conjugate(c.s, c.d)).epsilon(1e-8));
    }
}

TEST_CASE("conjugates match a brute-force grid scan") {
    {
        const SmoothToricWeight w = fubini_study_weight(1, 1);
        for (const Rational& s : {Rational(1, 3), Rational(7, 10)}) {
            const double lib = legendre_transform(w, rs({s})).value;
            CHECK(lib == doctest::Approx(dense_conjugate_1d(w, to_double(s))).epsilon(1e-6));
        }
    }
    {
        const SmoothToricWeight w = fubini_study_weight(2, 1);
        const double lib =
            legendre_transform(w, rs({Rational(1, 4), Rational(1, 2)})).value;
        CHECK(lib == doctest::Approx(dense_conjugate_2d(w, 0.25, 0.5)).epsilon(1e-6));
    }
}

TEST_CASE("the default conjugate box is already saturated") {
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    CHECK(std::abs(legendre_box_drift(w, rs({Rational(1, 2)}))) < 1e-9);
    CHECK(std::abs(legendre_box_drift(w, rs({Rational(0)}))) < 1e-8);
}

TEST_CASE("the closed form is self-dual on a dense slope grid") {
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    for (double t : {-1.0, 0.0, 0.7}) {
        double sup = -1e300;
        for (int i = 1; i < 100000; ++i) {
            const double s = i * 1e-5;
            sup = std::max(sup, s * t - fs_conjugate(std::vector<double>{s}, 1));
        }
        CHECK(sup == doctest::Approx(w.value({t})).epsilon(1e-6));
    }
}

// ---- level envelopes --------------------------------------------------

TEST_CASE("the first two level envelopes of the full degree-one series") {
    const MonomialSeries w = complete_series(1, 1);
    const SmoothToricWeight phi = fubini_study_weight(1, 1);
    EnvelopeBuilder builder(w, phi);

    const PLConvexFunction f1 = builder.level(1);
    REQUIRE(f1.pieces().size() == 2);
    CHECK(f1.pieces()[0].slope == rs({Rational(0)}));
    CHECK(f1.pieces()[1].slope == rs({Rational(1)}));
    for (double t : {-3.0, -1.0, 0.0, 1.0, 3.0})
        CHECK(f1.value({t}) == doctest::Approx(std::max(0.0, t)).epsilon(1e-8));
    CHECK(builder.cache().size() == 2);

    const PLConvexFunction f2 = builder.level(2);
    REQUIRE(f2.pieces().size() == 3);
    CHECK(f2.pieces()[1].slope == rs({Rational(1, 2)}));
    CHECK(f2.pieces()[1].intercept == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(f2.value({0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(f2.value({0.0}) >= f1.value({0.0}));
    // Levels 1 and 2 share the endpoint slopes, so only one new conjugate.
    CHECK(builder.cache().size() == 3);
}

TEST_CASE("single-slope series give affine envelopes") {
    const SmoothToricWeight phi = fubini_study_weight(1, 1);
    {
        const MonomialSeries w = series_from_generators(1, 1, {{1, {0}}});
        EnvelopeBuilder builder(w, phi);
        const PLConvexFunction f = builder.level(5);
        REQUIRE(f.pieces().size() == 1);
        for (double t : {-2.0, 0.0, 2.0})
            CHECK(std::abs(f.value({t})) < 1e-8);
    }
    {
        const MonomialSeries w = series_from_generators(1, 1, {{1, {1}}});
        EnvelopeBuilder builder(w, phi);
        const PLConvexFunction f = builder.level(4);
        REQUIRE(f.pieces().size() == 1);
        for (double t : {-2.0, 0.0, 2.0})
            CHECK(f.value({t}) == doctest::Approx(t).epsilon(1e-8));
    }
}

TEST_CASE("level envelopes stay below the weight") {
    const MonomialSeries w = complete_series(1, 2);
    const SmoothToricWeight phi = fubini_study_weight(1, 2);
    EnvelopeBuilder builder(w, phi);
    for (int k : {1, 2, 4}) {
        const PLConvexFunction f = builder.level(k);
        for (int i = 0; i <= 200; ++i) {
            const double t = -5.0 + i * 0.05;
            CHECK(f.value({t}) <= phi.value({t}) + 1e-8);
        }
    }
}

TEST_CASE("envelopes grow along divisible level jumps") {
    {
        const MonomialSeries w = complete_series(1, 2);
        const SmoothToricWeight phi = fubini_study_weight(1, 2);
        EnvelopeBuilder builder(w, phi);
        for (int m : {2, 3}) {
            const PLConvexFunction lo = builder.level(2);
            const PLConvexFunction hi = builder.level(2 * m);
            for (int i = 0; i <= 100; ++i) {
                const double t = -5.0 + i * 0.1;
                CHECK(lo.value({t}) <= hi.value({t}) + 1e-9);
            }
        }
    }
    {
        const MonomialSeries ex = example36_series();
        const SmoothToricWeight phi2 = fubini_study_weight(2, 1);
        EnvelopeBuilder builder(ex, phi2);
        const PLConvexFunction lo = builder.level(2);
        const PLConvexFunction hi = builder.level(4);
        for (int i = -8; i <= 8; ++i)
            for (int j = -8; j <= 8; ++j) {
                const std::vector<double> t{i * 0.5, j * 0.5};
                CHECK(lo.value(t) <= hi.value(t) + 1e-9);
            }
    }
}

TEST_CASE("an empty graded piece is rejected by the builder") {
    const MonomialSeries w = truncate(complete_series(1, 1), 2);
    const SmoothToricWeight phi = fubini_study_weight(1, 1);
    EnvelopeBuilder builder(w, phi);
    CHECK_THROWS_AS((void)builder.level(3), ValidationError);
    CHECK(builder.level(2).pieces().size() == 3);
}

// ---- equilibrium symbols ----------------------------------------------

TEST_CASE("a depth-one schedule reproduces its level envelope") {
    const MonomialSeries w = complete_series(1, 1);
    const SmoothToricWeight phi = fubini_study_weight(1, 1);
    EnvelopeBuilder builder(w, phi);
    const SymbolResult r = equilibrium_symbol(builder, {1});
    CHECK(r.schedule == std::vector<int>{1});
    CHECK(r.levels.size() == 1);
    CHECK(r.last_gap == 0.0);
    for (double t : {-4.0, -0.5, 0.0, 0.5, 4.0})
        CHECK(r.symbol.value({t}) == doctest::Approx(std::max(0.0, t)).epsilon(1e-8));
}

TEST_CASE("symbol refinement is monotone and dominated by the weight") {
    const MonomialSeries w = complete_series(1, 1);
    const SmoothToricWeight phi = fubini_study_weight(1, 1);
    EnvelopeBuilder builder(w, phi);
    const SymbolResult shallow = equilibrium_symbol(builder, {1, 2});
    const SymbolResult deep = equilibrium_symbol(builder, {1, 2, 4, 8});
    for (int i = 0; i <= 200; ++i) {
        const double t = -5.0 + i * 0.05;
        CHECK(shallow.symbol.value({t}) <= deep.symbol.value({t}) + 1e-12);
        CHECK(deep.symbol.value({t}) <= phi.value({t}) + 1e-8);
    }
}

TEST_CASE("schedule gaps match a direct envelope comparison and shrink") {
    const MonomialSeries w = complete_series(1, 1);
    const SmoothToricWeight phi = fubini_study_weight(1, 1);
    EnvelopeBuilder builder(w, phi);

    const SymbolResult r12 = equilibrium_symbol(builder, {1, 2});
    CHECK(r12.last_gap == doctest::Approx(std::log(2.0)).epsilon(1e-6));

    const SymbolResult r124 = equilibrium_symbol(builder, {1, 2, 4});
    // Oracle: rebuild both envelopes from the closed-form conjugate and take
    // the sup of their difference over the same probe points.
    auto closed_level = [&](int k, double t) {
        double best = -1e300;
        for (int a = 0; a <= k; ++a) {
            const double s = double(a) / k;
            best = std::max(best, s * t - fs_conjugate(std::vector<double>{s}, 1));
        }
        return best;
    };
    double sup = 0.0;
    for (int i = 0; i < 1001; ++i) {
        const double t = r124.probe.coord(0, i);
        sup = std::max(sup, closed_level(4, t) - closed_level(2, t));
    }
    CHECK(r124.last_gap == doctest::Approx(sup).epsilon(1e-6));
    CHECK(r124.last_gap > 0.0);
    CHECK(r124.last_gap < r12.last_gap);

    const SymbolResult r1248 = equilibrium_symbol(builder, {1, 2, 4, 8});
    CHECK(r1248.last_gap < r124.last_gap);
}

TEST_CASE("the even subseries symbol reaches two log two at the origin") {
    const MonomialSeries w = series_from_generators(1, 2, {{1, {0}}, {1, {2}}});
    const SmoothToricWeight phi = fubini_study_weight(1, 2);
    EnvelopeBuilder builder(w, phi);

    const PLConvexFunction f1 = builder.level(1);
    REQUIRE(f1.pieces().size() == 2);
    for (double t : {-2.0, 0.0, 2.0})
        CHECK(f1.value({t}) == doctest::Approx(std::max(0.0, 2.0 * t)).epsilon(1e-8));

    const SymbolResult r = equilibrium_symbol(builder, {1, 2, 4, 8});
    // Slope one enters at level two and its tangent touches the weight at the
    // origin, so the symbol value there is exactly the weight value 2 log 2.
    CHECK(r.symbol.value({0.0}) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
    CHECK(phi.value({0.0}) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("symbols are convex and keep slopes inside the dilated simplex") {
    const MonomialSeries ex = example36_series();
    const SmoothToricWeight phi = fubini_study_weight(2, 1);
    EnvelopeBuilder builder(ex, phi);
    const SymbolResult r = equilibrium_symbol(builder, {1, 2, 4});
    for (const PLPiece& p : r.symbol.pieces())
        CHECK(classify_slope(p.slope, 1) != SlopeClass::outside);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pick(-4.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<double> a{pick(rng), pick(rng)};
        const std::vector<double> b{pick(rng), pick(rng)};
        const std::vector<double> mid{(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0};
        CHECK(r.symbol.value(mid) <=
              (r.symbol.value(a) + r.symbol.value(b)) / 2.0 + 1e-10);
    }
}

// ---- schedules --------------------------------------------------------

TEST_CASE("schedule validation enforces divisible growth") {
    CHECK_THROWS_AS(validate_schedule({}), ValidationError);
    CHECK_THROWS_AS(validate_schedule({0, 2}), ValidationError);
    CHECK_THROWS_AS(validate_schedule({2, 1}), ValidationError);
    CHECK_THROWS_AS(validate_schedule({2, 3}), ValidationError);
    CHECK_THROWS_AS(validate_schedule({2, 2}), ValidationError);
    CHECK_NOTHROW(validate_schedule({1, 3}));
    CHECK_NOTHROW(validate_schedule({3, 6, 12}));
    CHECK_NOTHROW(validate_schedule({5}));
}

TEST_CASE("doubling schedules cap at the requested level") {
    CHECK(doubling_schedule(1, 8) == std::vector<int>{1, 2, 4, 8});
    CHECK(doubling_schedule(3, 24) == std::vector<int>{3, 6, 12, 24});
    CHECK(doubling_schedule(5, 9) == std::vector<int>{5});
    CHECK(doubling_schedule(2, 2) == std::vector<int>{2});
    CHECK_THROWS_AS(doubling_schedule(0, 8), ValidationError);
    CHECK_THROWS_AS(doubling_schedule(4, 3), ValidationError);
}

TEST_CASE("the first populated level respects truncation and triviality") {
    CHECK(first_nonempty_level(complete_series(1, 1), 10) == 1);
    CHECK(first_nonempty_level(truncate(example36_series(), 2), 10) == 2);
    CHECK(first_nonempty_level(series_from_generators(1, 1, {}), 5) == 0);
}

// ---- grids and smoothing ----------------------------------------------

TEST_CASE("grid evaluation runs in row-major order with exact coordinates") {
    const GridSpec s1 = GridSpec::cube(1, 2.0, 5);
    CHECK(s1.coord(0, 0) == -2.0);
    CHECK(s1.coord(0, 4) == 2.0);
    CHECK(s1.point_count() == 5);
    const GridField f =
        evaluate_on_grid([](const std::vector<double>& t) { return std::max(0.0, t[0]); }, s1);
    CHECK(f.values == std::vector<double>{0.0, 0.0, 0.0, 1.0, 2.0});

    const GridSpec s2 = GridSpec::cube(2, 1.0, 3);
    const GridField g = evaluate_on_grid(
        [](const std::vector<double>& t) { return 10.0 * t[0] + t[1]; }, s2);
    CHECK(g.values == std::vector<double>{-11.0, -10.0, -9.0, -1.0, 0.0, 1.0, 9.0, 10.0, 11.0});
    CHECK(g.at({2, 0}) == 9.0);
    CHECK(g.flat_index({1, 2}) == 5);

    const GridField serial = evaluate_on_grid_serial(
        [](const std::vector<double>& t) { return std::exp(t[0]) + t[1]; }, s2);
    const GridField parallel = evaluate_on_grid(
        [](const std::vector<double>& t) { return std::exp(t[0]) + t[1]; }, s2);
    CHECK(serial.values == parallel.values);
}

TEST_CASE("grid specs reject degenerate resolutions") {
    GridSpec bad = GridSpec::cube(1, 1.0, 3);
    bad.resolution = 1;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("grid smoothing lower-bounds the input and tracks the minimum") {
    const GridSpec spec = GridSpec::cube(1, 5.0, 101);
    CHECK(default_moreau_eps(spec) == doctest::Approx(0.2).epsilon(1e-12));
    const GridField f = evaluate_on_grid(
        [](const std::vector<double>& t) { return t[0] * t[0]; }, spec);
    const GridField m = moreau_envelope(f, 0.3);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(m.values[i] <= f.values[i] + 1e-12);
    CHECK(m.values[50] == 0.0);
    const GridField ms = moreau_envelope_serial(f, 0.3);
    CHECK(m.values == ms.values);
}

// ---- piecewise-linear representation ----------------------------------

TEST_CASE("piece lists are sorted, deduplicated, and round-trip as text") {
    std::vector<PLPiece> pieces{
        {rs({Rational(1)}), 1.0},
        {rs({Rational(1, 3)}), -2.5},
        {rs({Rational(0)}), 0.125},
        {rs({Rational(1, 3)}), -2.5},
    };
    const PLConvexFunction f(1, pieces);
    REQUIRE(f.pieces().size() == 3);
    CHECK(f.pieces()[0].slope == rs({Rational(0)}));
    CHECK(f.pieces()[1].slope == rs({Rational(1, 3)}));
    CHECK(f.pieces()[2].slope == rs({Rational(1)}));

    std::stringstream ss;
    f.serialize(ss);
    const PLConvexFunction back = PLConvexFunction::deserialize(ss);
    REQUIRE(back.pieces().size() == f.pieces().size());
    for (std::size_t i = 0; i < back.pieces().size(); ++i) {
        CHECK(back.pieces()[i].slope == f.pieces()[i].slope);
        CHECK(back.pieces()[i].intercept == f.pieces()[i].intercept);
    }
}

TEST_CASE("active pieces and discrete gradients follow the max") {
    const PLConvexFunction f(
        1, {{rs({Rational(0)}), 0.0}, {rs({Rational(1)}), 0.0}});
    CHECK(f.active_index({-1.0}) == 0);
    CHECK(f.active_index({1.0}) == 1);
    CHECK(f.active_index({0.0}) == 0);
    CHECK(f.discrete_gradient({-2.0}) == std::vector<double>{0.0});
    CHECK(f.discrete_gradient({2.0}) == std::vector<double>{1.0});

    const GridFunction g = f.as_grid_function();
    CHECK(g({1.5}) == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(PLConvexFunction(1, {}), ValidationError);
}

} // namespace
