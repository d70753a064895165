#include "glsvol/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "glsvol/errors.hpp"
#include "json.hpp"

namespace gls {

namespace {

using LogDensity = std::function<double(const std::vector<double>&)>;

// log of the trapezoid sum over the tensor grid with N panels per axis.
double log_trapezoid(const LogDensity& loglike, int n, double B, int N) {
    const double h = 2.0 * B / N;
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(std::pow(N + 1.0, n)));
    std::vector<int> idx(n, 0);
    std::vector<double> t(n);
    double peak = -std::numeric_limits<double>::infinity();
    for (;;) {
        double logw = 0.0;
        for (int a = 0; a < n; ++a) {
            t[a] = -B + h * idx[a];
            if (idx[a] == 0 || idx[a] == N) logw += std::log(0.5);
        }
        double v = loglike(t) + logw;
        samples.push_back(v);
        peak = std::max(peak, v);
        int axis = n - 1;
        while (axis >= 0 && ++idx[axis] == N + 1) idx[axis--] = 0;
        if (axis < 0) break;
    }
    double s = 0.0;
    for (double v : samples) s += std::exp(v - peak);
    return peak + std::log(s) + n * std::log(h);
}

// Grows the box until the integrand on the faces is negligible, then
// refines the trapezoid until the log integral stabilizes.
double log_integral(const LogDensity& loglike, int n, const QuadratureParams& q) {
    double B = q.box_half_width;
    const double drop = std::log(q.tail_rel);
    bool sized = false;
    while (B <= q.box_cap) {
        // Coarse peak and face scan.
        const int m = n == 1 ? 129 : 65;
        double peak = -std::numeric_limits<double>::infinity();
        double face = -std::numeric_limits<double>::infinity();
        std::vector<int> idx(n, 0);
        std::vector<double> t(n);
        for (;;) {
            bool on_face = false;
            for (int a = 0; a < n; ++a) {
                t[a] = -B + 2.0 * B * idx[a] / (m - 1);
                if (idx[a] == 0 || idx[a] == m - 1) on_face = true;
            }
            double v = loglike(t);
            peak = std::max(peak, v);
            if (on_face) face = std::max(face, v);
            int axis = n - 1;
            while (axis >= 0 && ++idx[axis] == m) idx[axis--] = 0;
            if (axis < 0) break;
        }
        if (face <= peak + drop) {
            sized = true;
            break;
        }
        B *= 1.5;
    }
    if (!sized) throw NumericError("tail not captured");

    const int cap = n == 1 ? q.max_nodes_1d : q.max_nodes_2d;
    int N = std::min(q.initial_nodes, cap);
    double prev = log_trapezoid(loglike, n, B, N);
    while (N < cap) {
        N *= 2;
        double cur = log_trapezoid(loglike, n, B, N);
        double diff = std::fabs(cur - prev);
        prev = cur;
        if (diff <= q.refine_rel) break;
    }
    return prev;
}

LogDensity norm_integrand(const std::vector<double>& a, int k,
                          const SmoothToricWeight& w) {
    return [a, k, &w](const std::vector<double>& t) {
        double v = -k * w.value(t) + w.log_density(t);
        for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * t[i];
        return v;
    };
}

void validate_exponent(const Exponent& a, int k, const SmoothToricWeight& w) {
    if (static_cast<int>(a.size()) != w.n)
        throw ValidationError("a", "exponent dimension mismatch");
    if (k < 1) throw ValidationError("k", "level must be positive");
    std::int64_t sum = 0;
    for (std::int64_t ai : a) {
        if (ai < 0) throw ValidationError("a", "negative exponent");
        sum += ai;
    }
    if (sum > static_cast<std::int64_t>(k) * w.d)
        throw ValidationError("a", "exponent outside the level simplex");
}

} // namespace

double log_monomial_norm(const Exponent& a, int k, const SmoothToricWeight& w,
                         const QuadratureParams& q) {
    validate_exponent(a, k, w);
    std::vector<double> ad(a.begin(), a.end());
    if (w.n > 2) throw CapError("quadrature supports n <= 2");
    return log_integral(norm_integrand(ad, k, w), w.n, q);
}

double monomial_norm(const Exponent& a, int k, const SmoothToricWeight& w,
                     const QuadratureParams& q) {
    return std::exp(log_monomial_norm(a, k, w, q));
}

double gram_offdiagonal(const Exponent& a, const Exponent& b, int k,
                        const SmoothToricWeight& w, const QuadratureParams& q) {
    validate_exponent(a, k, w);
    validate_exponent(b, k, w);
    // Angular averages: one circle integral per axis; integer frequencies
    // average to zero, frequency zero to one.
    double angular = 1.0;
    const int N = 256;
    const double two_pi = 8.0 * std::atan(1.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        double freq = static_cast<double>(a[i] - b[i]);
        double s = 0.0;
        for (int j = 0; j < N; ++j)
            s += std::cos(freq * two_pi * j / N);
        angular *= s / N;
    }
    std::vector<double> mid(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
    double log_radial = log_integral(norm_integrand(mid, k, w), w.n, q);
    double log_na = log_monomial_norm(a, k, w, q);
    double log_nb = log_monomial_norm(b, k, w, q);
    return std::fabs(angular) *
           std::exp(log_radial - 0.5 * log_na - 0.5 * log_nb);
}

double BergmanLevel::value(const std::vector<double>& t) const {
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        double v = -log_norms[i];
        for (std::size_t j = 0; j < t.size(); ++j)
            v += static_cast<double>(exponents[i][j]) * t[j];
        terms[i] = v;
        peak = std::max(peak, v);
    }
    double s = 0.0;
    for (double v : terms) s += std::exp(v - peak);
    return (peak + std::log(s)) / k;
}

GridFunction BergmanLevel::as_grid_function() const {
    return [this](const std::vector<double>& t) { return value(t); };
}

BergmanLevel bergman_weight(const MonomialSeries& W, int k,
                            const SmoothToricWeight& w,
                            const QuadratureParams& q) {
    GradedPiece piece = graded_piece(W, k);
    if (piece.empty())
        throw ValidationError("k", "empty graded piece at level " + std::to_string(k));
    BergmanLevel out;
    out.k = k;
    out.exponents = piece.exponents;
    out.log_norms.resize(out.exponents.size());
    const std::int64_t total = static_cast<std::int64_t>(out.exponents.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < total; ++i)
        out.log_norms[static_cast<std::size_t>(i)] =
            log_monomial_norm(out.exponents[static_cast<std::size_t>(i)], k, w, q);
    return out;
}

SandwichReport sandwich_report(const MonomialSeries& W,
                               const SmoothToricWeight& w,
                               const PLConvexFunction& limit_symbol,
                               const std::vector<int>& ks, const GridSpec& box,
                               const QuadratureParams& q) {
    if (ks.empty()) throw ValidationError("ks", "no levels requested");
    SandwichReport rep;
    rep.box = box;
    GridField ref = evaluate_on_grid(limit_symbol.as_grid_function(), box);
    for (int k : ks) {
        BergmanLevel level = bergman_weight(W, k, w, q);
        GridField u = evaluate_on_grid(level.as_grid_function(), box);
        double gap = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i)
            gap = std::max(gap, std::fabs(u.values[i] - ref.values[i]));
        rep.rows.push_back(SandwichRow{k, gap});
    }
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].sup_gap > rep.rows[i - 1].sup_gap) rep.monotone = false;

    // gap ~ C/k through the origin over the largest three levels.
    std::size_t first = rep.rows.size() > 3 ? rep.rows.size() - 3 : 0;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = first; i < rep.rows.size(); ++i) {
        double x = 1.0 / rep.rows[i].k;
        sxy += rep.rows[i].sup_gap * x;
        sxx += x * x;
    }
    rep.fitted_C = sxx > 0.0 ? sxy / sxx : 0.0;
    return rep;
}

void sandwich_csv(std::ostream& os, const SandwichReport& r) {
    os << "k,sup_gap,fitted_C\n";
    char buf[64];
    for (const SandwichRow& row : r.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g", row.k, row.sup_gap,
                      r.fitted_C);
        os << buf << "\n";
    }
}

std::string sandwich_json(const SandwichReport& r) {
    nlohmann::json j;
    j["fitted_C"] = r.fitted_C;
    j["monotone"] = r.monotone;
    j["box"] = {{"lo", r.box.lo}, {"hi", r.box.hi},
                {"resolution", r.box.resolution}};
    j["rows"] = nlohmann::json::array();
    for (const SandwichRow& row : r.rows)
        j["rows"].push_back({{"k", row.k}, {"sup_gap", row.sup_gap}});
    return j.dump(2);
}

} // namespace gls
