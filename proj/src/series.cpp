#include "glsvol/series.hpp"

#include <algorithm>
#include <set>

#include "glsvol/lp.hpp"

namespace gls {

namespace {

void check_cap(std::size_t count, std::size_t cap, int k) {
    if (count > cap)
        throw CapError("level " + std::to_string(k) + " would enumerate more than " +
                       std::to_string(cap) + " exponents");
}

// All componentwise-nonnegative integer vectors with coordinate sum <= bound.
void enumerate_simplex(int n, std::int64_t bound, std::vector<Exponent>& out, std::size_t cap, int k) {
    Exponent cur(n, 0);
    std::int64_t used = 0;
    // Recursion keeps the output lexicographic by construction.
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            out.push_back(cur);
            check_cap(out.size(), cap, k);
            return;
        }
        for (std::int64_t v = 0; v <= bound - used; ++v) {
            cur[i] = v;
            used += v;
            self(self, i + 1);
            used -= v;
        }
        cur[i] = 0;
    };
    rec(rec, 0);
}

std::vector<Exponent> sumset(const std::vector<Exponent>& a, const std::vector<Exponent>& b,
                             std::size_t cap, int k) {
    std::set<Exponent> acc;
    for (const auto& x : a) {
        for (const auto& y : b) {
            Exponent s(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
            acc.insert(std::move(s));
            check_cap(acc.size(), cap, k);
        }
    }
    return {acc.begin(), acc.end()};
}

std::vector<Exponent> generator_piece(const GeneratorRule& rule, int n, int k, std::size_t cap) {
    // pieces[j] = exponents reachable by generator products of total degree j.
    std::vector<std::vector<Exponent>> pieces(k + 1);
    pieces[0] = {Exponent(n, 0)};
    for (int j = 1; j <= k; ++j) {
        std::set<Exponent> acc;
        for (const auto& g : rule.generators) {
            if (g.degree > j) continue;
            for (const auto& base : pieces[j - g.degree]) {
                Exponent s(base);
                for (int i = 0; i < n; ++i) s[i] += g.exponent[i];
                acc.insert(std::move(s));
                check_cap(acc.size(), cap, j);
            }
        }
        pieces[j].assign(acc.begin(), acc.end());
    }
    return pieces[k];
}

// Membership in the k-fold dilated Newton region: alpha lies in
// k * (conv(gens) + positive orthant) iff lambda >= 0 with sum k and
// sum lambda_i g_i <= alpha exists. Decided exactly.
bool in_dilated_newton(const Exponent& alpha, const std::vector<Exponent>& gens, int n, int k) {
    const int m = static_cast<int>(gens.size());
    // Equality form: sum_i lambda_i g_i + s = alpha, sum_i lambda_i = k.
    std::vector<RatVec> rows(n + 1, RatVec(m + n, Rational(0)));
    RatVec rhs(n + 1);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < n; ++r) rows[r][c] = Rational(gens[c][r]);
    for (int r = 0; r < n; ++r) rows[r][m + r] = 1;
    for (int c = 0; c < m; ++c) rows[n][c] = 1;
    for (int r = 0; r < n; ++r) rhs[r] = Rational(alpha[r]);
    rhs[n] = Rational(k);
    return eq_nonneg_feasible(rows, rhs);
}

std::vector<Exponent> newton_piece(const NewtonRule& rule, int n, int d, int k, std::size_t cap) {
    std::vector<Exponent> simplex;
    enumerate_simplex(n, static_cast<std::int64_t>(k) * d, simplex, cap, k);
    std::vector<Exponent> out;
    for (const auto& alpha : simplex) {
        if (in_dilated_newton(alpha, rule.ideal_generators, n, k)) {
            out.push_back(alpha);
            check_cap(out.size(), cap, k);
        }
    }
    return out;
}

std::vector<Exponent> example36_piece(int k, std::size_t cap) {
    std::vector<Exponent> out;
    for (std::int64_t a = 0; a <= k; ++a) {
        for (std::int64_t b = 0; a + b <= k; ++b) {
            if (b > 0 && a < 1) continue;
            out.push_back({a, b});
            check_cap(out.size(), cap, k);
        }
    }
    return out;
}

std::vector<Exponent> truncation_piece(const TruncationRule& rule, int k, std::size_t cap);

std::vector<Exponent> piece_for(const MonomialSeries& w, int k, std::size_t cap) {
    return std::visit(
        [&](const auto& rule) -> std::vector<Exponent> {
            using T = std::decay_t<decltype(rule)>;
            if constexpr (std::is_same_v<T, CompleteRule>) {
                std::vector<Exponent> out;
                enumerate_simplex(w.n(), static_cast<std::int64_t>(k) * w.d(), out, cap, k);
                return out;
            } else if constexpr (std::is_same_v<T, GeneratorRule>) {
                return generator_piece(rule, w.n(), k, cap);
            } else if constexpr (std::is_same_v<T, NewtonRule>) {
                return newton_piece(rule, w.n(), w.d(), k, cap);
            } else if constexpr (std::is_same_v<T, Example36Rule>) {
                return example36_piece(k, cap);
            } else {
                return truncation_piece(rule, k, cap);
            }
        },
        w.rule());
}

std::vector<Exponent> truncation_piece(const TruncationRule& rule, int k, std::size_t cap) {
    if (k % rule.level != 0) return {};
    const int m = k / rule.level;
    std::vector<Exponent> base = piece_for(*rule.base, rule.level, cap);
    if (base.empty()) return {};
    // m-fold sumset by binary powering.
    std::vector<Exponent> acc = {Exponent(base[0].size(), 0)};
    std::vector<Exponent> pow = base;
    int rem = m;
    while (rem > 0) {
        if (rem & 1) acc = sumset(acc, pow, cap, k);
        rem >>= 1;
        if (rem > 0) pow = sumset(pow, pow, cap, k);
    }
    return acc;
}

} // namespace

MonomialSeries::MonomialSeries(int n, int d, SeriesRule rule, std::string description)
    : n_(n), d_(d), rule_(std::move(rule)), description_(std::move(description)) {
    if (n_ < 1) throw ValidationError("n", "torus dimension must be at least 1");
    if (d_ < 1) throw ValidationError("d", "degree must be at least 1");
}

MonomialSeries complete_series(int n, int d) {
    return MonomialSeries(n, d, CompleteRule{}, "complete(" + std::to_string(n) + "," + std::to_string(d) + ")");
}

MonomialSeries series_from_generators(int n, int d, std::vector<GeneratorTerm> gens) {
    for (const auto& g : gens) {
        if (g.degree < 1) throw ValidationError("generators", "generator degree must be positive");
        if (static_cast<int>(g.exponent.size()) != n)
            throw ValidationError("generators", "generator arity differs from n");
        for (auto x : g.exponent)
            if (x < 0) throw ValidationError("generators", "negative exponent entry");
        if (degree_sum(g.exponent) > static_cast<std::int64_t>(g.degree) * d)
            throw ValidationError("generators", "generator " + format_exponent(g.exponent) +
                                                    " violates the simplex bound for degree " +
                                                    std::to_string(g.degree));
    }
    // An empty generator list is a valid trivial series.
    return MonomialSeries(n, d, GeneratorRule{std::move(gens)}, "generators(" + std::to_string(n) + "," + std::to_string(d) + ")");
}

MonomialSeries ideal_series(int n, int d, std::vector<Exponent> ideal_gens) {
    if (ideal_gens.empty()) throw ValidationError("ideal_generators", "empty ideal generator list");
    for (const auto& g : ideal_gens) {
        if (static_cast<int>(g.size()) != n)
            throw ValidationError("ideal_generators", "generator arity differs from n");
        for (auto x : g)
            if (x < 0) throw ValidationError("ideal_generators", "negative exponent entry");
    }
    MonomialSeries w(n, d, NewtonRule{std::move(ideal_gens)}, "ideal(" + std::to_string(n) + "," + std::to_string(d) + ")");
    if (graded_piece(w, 1).empty())
        throw ValidationError("d", "degree too small: level 1 of the ideal series is empty");
    return w;
}

MonomialSeries example36_series() {
    return MonomialSeries(2, 1, Example36Rule{}, "example36");
}

MonomialSeries truncate(const MonomialSeries& w, int level) {
    if (level < 1) throw ValidationError("level", "truncation level must be positive");
    auto base = std::make_shared<MonomialSeries>(w);
    return MonomialSeries(w.n(), w.d(), TruncationRule{level, base},
                          w.description() + " truncated at " + std::to_string(level));
}

GradedPiece graded_piece(const MonomialSeries& w, int k, std::size_t cap) {
    if (k < 1) throw ValidationError("k", "level must be at least 1");
    return GradedPiece(k, w.d(), piece_for(w, k, cap));
}

BirationalityReport is_birational_at(const MonomialSeries& w, int k) {
    GradedPiece piece = graded_piece(w, k);
    if (piece.empty())
        throw ValidationError("k", "series trivial at level " + std::to_string(k));
    std::vector<Exponent> diffs;
    const Exponent& base = piece.exponents.front();
    for (std::size_t i = 1; i < piece.exponents.size(); ++i) {
        Exponent d(base.size());
        for (std::size_t j = 0; j < base.size(); ++j) d[j] = piece.exponents[i][j] - base[j];
        diffs.push_back(std::move(d));
    }
    auto idx = sublattice_index(diffs, w.n());
    BirationalityReport out;
    out.lattice_index = idx.index;
    out.birational = idx.index.has_value() && *idx.index == 1;
    return out;
}

VolumeEstimate estimate_volume(const MonomialSeries& w, int k_max, int divisibility, std::size_t cap) {
    if (divisibility < 1) throw ValidationError("divisibility", "must be positive");
    if (k_max < divisibility)
        throw ValidationError("k_max", "must be at least the divisibility step");
    VolumeEstimate out;
    out.divisibility = divisibility;
    Rational nfact = 1;
    for (int i = 2; i <= w.n(); ++i) nfact *= i;
    for (int k = divisibility; k <= k_max; k += divisibility) {
        GradedPiece piece = graded_piece(w, k, cap);
        Rational kn = 1;
        for (int i = 0; i < w.n(); ++i) kn *= k;
        out.samples.emplace_back(k, nfact * Rational(piece.dimension()) / kn);
    }
    LimitFit fit = limit_fit(out.samples);
    out.extrapolated_exact = fit.value;
    out.extrapolated = to_double(fit.value);
    out.slope = to_double(fit.slope);
    return out;
}

LimitFit limit_fit(const std::vector<std::pair<int, Rational>>& samples) {
    if (samples.empty()) throw ValidationError("samples", "nothing to fit");
    const std::size_t m = samples.size();
    const std::size_t start = m < 4 ? 0 : m / 2;
    Rational sx = 0, sy = 0, sxx = 0, sxy = 0;
    Rational cnt = 0;
    for (std::size_t i = start; i < m; ++i) {
        const Rational x = Rational(1, samples[i].first);
        const Rational& y = samples[i].second;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        cnt += 1;
    }
    LimitFit fit;
    const Rational det = cnt * sxx - sx * sx;
    if (det == 0) {
        // One sample, or repeated levels: no slope information.
        fit.value = samples.back().second;
        fit.slope = 0;
    } else {
        fit.value = (sy * sxx - sx * sxy) / det;
        fit.slope = (cnt * sxy - sx * sy) / det;
    }
    return fit;
}

} // namespace gls
