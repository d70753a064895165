#include "glsvol/weight.hpp"

#include <cmath>
#include <stdexcept>

#include "glsvol/errors.hpp"

namespace gls {

double SmoothToricWeight::density(const std::vector<double>& t) const {
    return std::exp(log_density(t));
}

namespace {

// log(1 + sum_i e^{t_i}) evaluated without overflow for large |t_i|.
double log_one_plus_sum_exp(const std::vector<double>& t) {
    double m = 0.0;
    for (double ti : t) m = std::max(m, ti);
    double s = std::exp(-m);
    for (double ti : t) s += std::exp(ti - m);
    return m + std::log(s);
}

} // namespace

SmoothToricWeight fubini_study_weight(int n, int d) {
    if (n < 1) throw ValidationError("n", "dimension must be at least 1");
    if (d < 1) throw ValidationError("d", "degree must be at least 1");

    SmoothToricWeight w;
    w.n = n;
    w.d = d;
    w.name = "fubini-study(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")";

    w.value = [n, d](const std::vector<double>& t) {
        if (static_cast<int>(t.size()) != n)
            throw ValidationError("t", "point dimension mismatch");
        return static_cast<double>(d) * log_one_plus_sum_exp(t);
    };

    w.gradient = [n, d](const std::vector<double>& t) {
        if (static_cast<int>(t.size()) != n)
            throw ValidationError("t", "point dimension mismatch");
        double m = 0.0;
        for (double ti : t) m = std::max(m, ti);
        double denom = std::exp(-m);
        for (double ti : t) denom += std::exp(ti - m);
        std::vector<double> g(t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            g[i] = static_cast<double>(d) * std::exp(t[i] - m) / denom;
        return g;
    };

    w.log_density = [n](const std::vector<double>& t) {
        if (static_cast<int>(t.size()) != n)
            throw ValidationError("t", "point dimension mismatch");
        double s = 0.0;
        for (double ti : t) s += ti;
        return s - static_cast<double>(n + 1) * log_one_plus_sum_exp(t);
    };

    return w;
}

} // namespace gls
