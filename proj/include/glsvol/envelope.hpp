#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "glsvol/grid.hpp"
#include "glsvol/rational.hpp"
#include "glsvol/series.hpp"
#include "glsvol/weight.hpp"

namespace gls {

// Position of a candidate slope relative to the dilated simplex d*Simplex,
// decided exactly in rational arithmetic.
enum class SlopeClass { outside, boundary, interior };

SlopeClass classify_slope(const RatVec& s, int d);

struct LegendreParams {
    double box_half_width = 40.0;
    int coarse_points = 64;
    int sweeps = 60;
    double tol = 1e-10;
};

struct LegendreValue {
    double value = 0.0;             // sup_t <s,t> - phi(t); +inf outside d*Simplex
    std::vector<double> argmax;     // best point found (empty when infinite)
    SlopeClass slope_class = SlopeClass::outside;
};

// Conjugate of the weight at a rational slope.  Interior and boundary slopes
// are both maximized directly over the params box: the objective is concave,
// so a coarse tensor scan followed by cyclic golden-section sweeps reaches
// the box optimum, and for boundary slopes the escaping tail beyond the box
// is exponentially small.  Slopes outside d*Simplex return +inf.
LegendreValue legendre_transform(const SmoothToricWeight& w, const RatVec& s,
                                 const LegendreParams& params = {});

// Same transform on a box grown by half; the value drift bounds the
// truncation error of the default box.
double legendre_box_drift(const SmoothToricWeight& w, const RatVec& s,
                          const LegendreParams& params = {});

struct PLPiece {
    RatVec slope;
    double intercept = 0.0;
};

// max over pieces of <slope,t> + intercept.  Pieces are stored sorted by
// (lex slope, intercept) with exact duplicates removed, so evaluation order
// and every derived quantity are reproducible.
class PLConvexFunction {
public:
    PLConvexFunction() = default;
    PLConvexFunction(int n, std::vector<PLPiece> pieces);

    int dim() const { return n_; }
    const std::vector<PLPiece>& pieces() const { return pieces_; }

    double value(const std::vector<double>& t) const;
    // Index into pieces() of the first piece attaining the max at t.
    std::size_t active_index(const std::vector<double>& t) const;
    std::vector<double> discrete_gradient(const std::vector<double>& t) const;

    GridFunction as_grid_function() const;

    void serialize(std::ostream& os) const;
    static PLConvexFunction deserialize(std::istream& is);

private:
    int n_ = 0;
    std::vector<PLPiece> pieces_;
    // Slopes mirrored as doubles; evaluation stays off the big-integer path.
    std::vector<std::vector<double>> dslopes_;
};

// Caches conjugate values per exact slope, so the same slope appearing at
// different levels gets a bitwise-identical intercept.
class EnvelopeBuilder {
public:
    EnvelopeBuilder(const MonomialSeries& series, const SmoothToricWeight& weight,
                    LegendreParams params = {});

    // max_{a in A_k} <a/k, t> - conj(a/k); throws on an empty level.
    PLConvexFunction level(int k);

    const MonomialSeries& series() const { return *series_; }
    const SmoothToricWeight& weight() const { return *weight_; }
    const std::map<RatVec, LegendreValue>& cache() const { return cache_; }

private:
    const MonomialSeries* series_;
    const SmoothToricWeight* weight_;
    LegendreParams params_;
    std::map<RatVec, LegendreValue> cache_;
};

// Levels must be positive, strictly increasing, and each must divide the
// next; that ordering makes the level envelopes pointwise non-decreasing.
void validate_schedule(const std::vector<int>& levels);

struct SymbolResult {
    PLConvexFunction symbol;        // union of the level pieces, deduplicated
    std::vector<int> schedule;
    std::vector<PLConvexFunction> levels;
    double last_gap = 0.0;          // sup over the probe box of (last - previous)
    GridSpec probe;
};

// Limit object of the level envelopes along the schedule.  The pointwise sup
// over the schedule is itself a finite max of affine pieces, so the union of
// pieces represents it with no separate regularization step.
SymbolResult equilibrium_symbol(EnvelopeBuilder& builder,
                                const std::vector<int>& schedule,
                                const GridSpec& probe);
SymbolResult equilibrium_symbol(EnvelopeBuilder& builder,
                                const std::vector<int>& schedule);

// Smallest k <= limit with a nonempty graded piece; 0 when none exists.
int first_nonempty_level(const MonomialSeries& series, int limit);

// {start, 2*start, ...} capped by k_max.
std::vector<int> doubling_schedule(int start, int k_max);

} // namespace gls
