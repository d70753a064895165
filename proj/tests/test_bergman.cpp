#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "glsvol/bergman.hpp"
#include "glsvol/envelope.hpp"
#include "glsvol/errors.hpp"
#include "glsvol/series.hpp"
#include "glsvol/weight.hpp"

using namespace gls;

namespace {

// ---- oracles ----------------------------------------------------------

// For the degree-d torus-symmetric weight the level-k monomial norm is a
// Dirichlet integral with integer parameters:
//   N_a = (prod_i a_i!) * (k*d - |a|)! / (k*d + n)!
// evaluated here through lgamma so large levels stay in range.
double closed_log_norm(const Exponent& a, int k, int n, int d) {
    double out = 0.0;
    std::int64_t total = 0;
    for (std::int64_t ai : a) {
        out += std::lgamma(double(ai) + 1.0);
        total += ai;
    }
    out += std::lgamma(double(k) * d - double(total) + 1.0);
    out -= std::lgamma(double(k) * d + n + 1.0);
    return out;
}

// Fixed-grid trapezoid integral of exp(a t - k phi) * density, written
// independently of the adaptive quadrature under test.
double brute_log_norm_1d(std::int64_t a, int k, const SmoothToricWeight& w) {
    const double B = 50.0;
    const int m = 20000;
    const double h = 2.0 * B / m;
    double sum = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double t = -B + i * h;
        const double weight = (i == 0 || i == m) ? 0.5 : 1.0;
        sum += weight * std::exp(double(a) * t - double(k) * w.value({t}) +
                                 w.log_density({t}));
    }
    return std::log(sum * h);
}

double xlogx(double x) { return x <= 0.0 ? 0.0 : x * std::log(x); }

double fs_conjugate(const std::vector<double>& s, int d) {
    double total = 0.0;
    double out = 0.0;
    for (double si : s) {
        out += xlogx(si);
        total += si;
    }
    return out + xlogx(double(d) - total) - double(d) * std::log(double(d));
}

// ---- monomial norms ---------------------------------------------------

TEST_CASE("the constant monomial at the first level has norm one half") {
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    CHECK(monomial_norm({0}, 1, w) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("norms match the factorial closed form in one dimension") {
    for (int d : {1, 2}) {
        const SmoothToricWeight w = fubini_study_weight(1, d);
        for (int k : {1, 2, 4, 8}) {
            for (std::int64_t a = 0; a <= std::int64_t(k) * d; ++a) {
                const double lib = log_monomial_norm({a}, k, w);
                CHECK(lib ==
                      doctest::Approx(closed_log_norm({a}, k, 1, d)).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("norms match the factorial closed form in two dimensions") {
    const SmoothToricWeight w = fubini_study_weight(2, 1);
    for (int k : {1, 2, 4}) {
        for (std::int64_t a = 0; a <= k; ++a)
            for (std::int64_t b = 0; a + b <= k; ++b) {
                const double lib = log_monomial_norm({a, b}, k, w);
                CHECK(lib ==
                      doctest::Approx(closed_log_norm({a, b}, k, 2, 1)).epsilon(1e-6));
            }
    }
}

TEST_CASE("norms match a brute-force trapezoid integral") {
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    for (int k : {2, 5}) {
        for (std::int64_t a : {std::int64_t(0), std::int64_t(k / 2), std::int64_t(k)}) {
            CHECK(log_monomial_norm({a}, k, w) ==
                  doctest::Approx(brute_log_norm_1d(a, k, w)).epsilon(1e-6));
        }
    }
}

TEST_CASE("norms are symmetric under the simplex symmetries") {
    const SmoothToricWeight w1 = fubini_study_weight(1, 1);
    for (std::int64_t a = 0; a <= 6; ++a)
        CHECK(log_monomial_norm({a}, 6, w1) ==
              doctest::Approx(log_monomial_norm({6 - a}, 6, w1)).epsilon(1e-8));
    const SmoothToricWeight w2 = fubini_study_weight(2, 1);
    CHECK(log_monomial_norm({1, 3}, 5, w2) ==
          doctest::Approx(log_monomial_norm({3, 1}, 5, w2)).epsilon(1e-7));
}

TEST_CASE("the extreme vertex norm dominates the interior norms") {
    // N_k = 1/(k+1) while the middle norm decays exponentially, so sections
    // concentrated on the hull vertex are the heaviest ones.
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    for (int k : {4, 8}) {
        const double vertex = log_monomial_norm({std::int64_t(k)}, k, w);
        const double middle = log_monomial_norm({std::int64_t(k / 2)}, k, w);
        CHECK(vertex == doctest::Approx(-std::log(double(k + 1))).epsilon(1e-8));
        CHECK(vertex > middle);
    }
}

TEST_CASE("norm validation rejects malformed exponents") {
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    CHECK_THROWS_AS((void)log_monomial_norm({0, 0}, 1, w), ValidationError);
    CHECK_THROWS_AS((void)log_monomial_norm({-1}, 1, w), ValidationError);
    CHECK_THROWS_AS((void)log_monomial_norm({3}, 2, w), ValidationError);
    CHECK_THROWS_AS((void)log_monomial_norm({0}, 0, w), ValidationError);
}

TEST_CASE("a capped quadrature box reports the uncaptured tail") {
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    QuadratureParams q;
    q.box_half_width = 1.0;
    q.box_cap = 2.0;
    CHECK_THROWS_WITH_AS((void)log_monomial_norm({1}, 2, w, q), "tail not captured",
                         NumericError);
}

TEST_CASE("distinct monomials are numerically orthogonal") {
    const SmoothToricWeight w1 = fubini_study_weight(1, 1);
    CHECK(gram_offdiagonal({0}, {2}, 2, w1) <= 1e-8);
    CHECK(gram_offdiagonal({1}, {2}, 2, w1) <= 1e-8);
    const SmoothToricWeight w2 = fubini_study_weight(2, 1);
    CHECK(gram_offdiagonal({1, 0}, {0, 1}, 2, w2) <= 1e-8);
}

// ---- level weights ----------------------------------------------------

TEST_CASE("level weights expose their norms consistently") {
    const MonomialSeries W = complete_series(1, 1);
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    const BergmanLevel level = bergman_weight(W, 2, w);
    CHECK(level.k == 2);
    REQUIRE(level.exponents.size() == 3);
    REQUIRE(level.log_norms.size() == 3);
    CHECK(level.exponents == graded_piece(W, 2).exponents);
    const std::vector<double> t{0.7};
    double sum = 0.0;
    for (std::size_t i = 0; i < level.exponents.size(); ++i)
        sum += std::exp(double(level.exponents[i][0]) * t[0] - level.log_norms[i]);
    CHECK(level.value(t) == doctest::Approx(std::log(sum) / 2.0).epsilon(1e-12));
    CHECK(level.as_grid_function()(t) == level.value(t));
}

TEST_CASE("full-series level weights shift the weight by log(k+1)/k") {
    const MonomialSeries W = complete_series(1, 1);
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    for (int k : {1, 2, 4, 8}) {
        const BergmanLevel level = bergman_weight(W, k, w);
        const double shift = std::log(double(k + 1)) / k;
        for (int i = -12; i <= 12; ++i) {
            const double t = i * 0.25;
            CHECK(level.value({t}) ==
                  doctest::Approx(w.value({t}) + shift).epsilon(1e-7));
        }
    }
    // At the origin and first level that value is exactly log 4.
    const BergmanLevel first = bergman_weight(W, 1, w);
    CHECK(first.value({0.0}) == doctest::Approx(std::log(4.0)).epsilon(1e-8));
}

TEST_CASE("planar full-series level weights shift by log((k+1)(k+2))/k") {
    const MonomialSeries W = complete_series(2, 1);
    const SmoothToricWeight w = fubini_study_weight(2, 1);
    for (int k : {1, 2, 4}) {
        const BergmanLevel level = bergman_weight(W, k, w);
        const double shift = std::log(double(k + 1) * double(k + 2)) / k;
        for (double x : {-2.0, 0.0, 1.5})
            for (double y : {-1.0, 0.5}) {
                CHECK(level.value({x, y}) ==
                      doctest::Approx(w.value({x, y}) + shift).epsilon(1e-6));
            }
    }
}

TEST_CASE("a single-monomial level weight is affine") {
    const MonomialSeries W = series_from_generators(1, 1, {{1, {1}}});
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    const BergmanLevel level = bergman_weight(W, 3, w);
    REQUIRE(level.exponents.size() == 1);
    const double at0 = level.value({0.0});
    for (double t : {-2.0, 1.0, 3.0})
        CHECK(level.value({t}) == doctest::Approx(t + at0).epsilon(1e-10));
}

TEST_CASE("level weights are convex along the line") {
    const MonomialSeries W = complete_series(1, 2);
    const SmoothToricWeight w = fubini_study_weight(1, 2);
    const BergmanLevel level = bergman_weight(W, 4, w);
    for (int i = -10; i < 10; ++i) {
        const double a = i * 0.4;
        const double b = a + 0.8;
        CHECK(level.value({(a + b) / 2.0}) <=
              (level.value({a}) + level.value({b})) / 2.0 + 1e-10);
    }
}

TEST_CASE("level weights dominate the level envelopes by log(n!)/k") {
    // Each norm is at most exp(k conj(a/k)) / n!, which turns into the
    // pointwise bound u_k >= envelope_k + log(n!)/k.
    {
        const MonomialSeries W = complete_series(1, 2);
        const SmoothToricWeight w = fubini_study_weight(1, 2);
        for (int k : {1, 2, 4}) {
            const BergmanLevel level = bergman_weight(W, k, w);
            const GradedPiece piece = graded_piece(W, k);
            for (int i = -8; i <= 8; ++i) {
                const double t = i * 0.5;
                double env = -1e300;
                for (const Exponent& a : piece.exponents) {
                    const double s = double(a[0]) / k;
                    env = std::max(env, s * t - fs_conjugate({s}, 2));
                }
                CHECK(level.value({t}) >= env - 1e-9);
            }
        }
    }
    {
        const MonomialSeries W = example36_series();
        const SmoothToricWeight w = fubini_study_weight(2, 1);
        const int k = 4;
        const BergmanLevel level = bergman_weight(W, k, w);
        const GradedPiece piece = graded_piece(W, k);
        const double shift = std::log(2.0) / k;
        for (double x : {-2.0, 0.0, 2.0})
            for (double y : {-2.0, 0.0, 2.0}) {
                double env = -1e300;
                for (const Exponent& a : piece.exponents) {
                    const std::vector<double> s{double(a[0]) / k, double(a[1]) / k};
                    env = std::max(env, s[0] * x + s[1] * y - fs_conjugate(s, 1));
                }
                CHECK(level.value({x, y}) >= env + shift - 1e-9);
            }
    }
}

TEST_CASE("an empty level cannot carry a level weight") {
    const MonomialSeries W = truncate(complete_series(1, 1), 2);
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    CHECK_THROWS_AS((void)bergman_weight(W, 3, w), ValidationError);
}

// ---- sandwich reports -------------------------------------------------

TEST_CASE("sandwich gaps safely exceed the exact norm constants") {
    const MonomialSeries W = complete_series(1, 1);
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    EnvelopeBuilder builder(W, w);
    const SymbolResult sym = equilibrium_symbol(builder, {1, 2, 4, 8, 16, 32});
    const GridSpec box = GridSpec::cube(1, 3.0, 301);
    const SandwichReport rep = sandwich_report(W, w, sym.symbol, {4, 8}, box);
    REQUIRE(rep.rows.size() == 2);
    for (const SandwichRow& row : rep.rows) {
        const double floor = std::log(double(row.k + 1)) / row.k;
        CHECK(row.sup_gap >= floor - 1e-9);
        CHECK(row.sup_gap <= floor + 0.15);
    }
    CHECK(rep.rows[1].sup_gap < rep.rows[0].sup_gap);
    CHECK(rep.monotone);
    CHECK(rep.fitted_C > 0.0);
    CHECK(rep.fitted_C < 5.0);
    CHECK(rep.box.resolution == 301);
}

TEST_CASE("sandwich reports serialize rows and fit") {
    const MonomialSeries W = complete_series(1, 1);
    const SmoothToricWeight w = fubini_study_weight(1, 1);
    EnvelopeBuilder builder(W, w);
    const SymbolResult sym = equilibrium_symbol(builder, {1, 2, 4});
    const GridSpec box = GridSpec::cube(1, 2.0, 101);
    const SandwichReport rep = sandwich_report(W, w, sym.symbol, {2, 4}, box);

    std::ostringstream csv;
    sandwich_csv(csv, rep);
    const std::string text = csv.str();
    CHECK(text.rfind("k,sup_gap,fitted_C\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);

    const std::string json = sandwich_json(rep);
    CHECK(json.find("\"fitted_C\"") != std::string::npos);
    CHECK(json.find("\"sup_gap\"") != std::string::npos);
    CHECK(json.find("\"monotone\"") != std::string::npos);

    CHECK_THROWS_AS(
        (void)sandwich_report(W, w, sym.symbol, {}, box), ValidationError);
}

TEST_CASE("sandwich gaps shrink for the planar example series") {
    const MonomialSeries W = example36_series();
    const SmoothToricWeight w = fubini_study_weight(2, 1);
    EnvelopeBuilder builder(W, w);
    const SymbolResult sym = equilibrium_symbol(builder, {1, 2, 4, 8});
    const GridSpec box = GridSpec::cube(2, 3.0, 41);
    const SandwichReport rep = sandwich_report(W, w, sym.symbol, {1, 2, 4}, box);
    REQUIRE(rep.rows.size() == 3);
    for (const SandwichRow& row : rep.rows) CHECK(row.sup_gap > 0.0);
    CHECK(rep.rows[2].sup_gap < rep.rows[0].sup_gap);
}

} // namespace
