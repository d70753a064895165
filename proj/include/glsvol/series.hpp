#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "glsvol/exponents.hpp"
#include "glsvol/lattice.hpp"

namespace gls {

// Default cap on the number of exponents a single level may enumerate.
constexpr std::size_t kEnumerationCap = 10'000'000;

struct GeneratorTerm {
    int degree = 1;       // level the generator lives in
    Exponent exponent;    // its chart exponent
};

class MonomialSeries;

struct CompleteRule {};
struct GeneratorRule {
    std::vector<GeneratorTerm> generators;
};
struct NewtonRule {
    std::vector<Exponent> ideal_generators;
};
// Built-in multiplicative family on the n=2, d=1 chart: exponents (a, b) with
// a + b <= k, where b > 0 forces a >= 1. Base-point free and birational, yet
// not finitely generated; its slope hulls stay strictly inside the simplex.
struct Example36Rule {};
struct TruncationRule {
    int level = 1;
    std::shared_ptr<const MonomialSeries> base;
};

using SeriesRule = std::variant<CompleteRule, GeneratorRule, NewtonRule, Example36Rule, TruncationRule>;

// A multiplicative graded family of monomial subspaces of the degree-d
// homogeneous pieces on the chart torus: A_j + A_k is contained in A_{j+k}.
class MonomialSeries {
  public:
    MonomialSeries(int n, int d, SeriesRule rule, std::string description);

    int n() const { return n_; }
    int d() const { return d_; }
    const SeriesRule& rule() const { return rule_; }
    const std::string& description() const { return description_; }

  private:
    int n_;
    int d_;
    SeriesRule rule_;
    std::string description_;
};

MonomialSeries complete_series(int n, int d);
MonomialSeries series_from_generators(int n, int d, std::vector<GeneratorTerm> gens);
// Levels are the lattice points of the dilated Newton region of a monomial
// ideal, intersected with the degree simplex. Requires a nonempty level 1.
MonomialSeries ideal_series(int n, int d, std::vector<Exponent> ideal_gens);
MonomialSeries example36_series();
// Level k*l of the result is the (k)-fold sumset of the base's level l;
// levels not divisible by l are empty.
MonomialSeries truncate(const MonomialSeries& w, int level);

GradedPiece graded_piece(const MonomialSeries& w, int k, std::size_t cap = kEnumerationCap);

struct BirationalityReport {
    bool birational = false;
    std::optional<Int> lattice_index; // empty means the differences do not span
};

// Do the pairwise differences within A_k generate the full lattice?
BirationalityReport is_birational_at(const MonomialSeries& w, int k);

struct VolumeEstimate {
    std::vector<std::pair<int, Rational>> samples; // (k, n! dim A_k / k^n)
    Rational extrapolated_exact;                   // fit value v of v + c/k
    double extrapolated = 0.0;
    double slope = 0.0;                            // fit value c
    int divisibility = 1;
};

struct LimitFit {
    Rational value; // v
    Rational slope; // c
};

// Exact least-squares fit of y = v + c/k over the largest half of the
// samples (all of them when fewer than four). Sequences that are exactly
// affine in 1/k produce their true limit with no rounding.
LimitFit limit_fit(const std::vector<std::pair<int, Rational>>& samples);

// Samples normalized dimension counts on multiples of `divisibility` up to
// k_max and extrapolates with a least-squares v + c/k fit over the largest
// half of the sampled levels.
VolumeEstimate estimate_volume(const MonomialSeries& w, int k_max, int divisibility,
                               std::size_t cap = kEnumerationCap);

} // namespace gls
