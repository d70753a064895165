#include "glsvol/exponents.hpp"

#include <algorithm>

namespace gls {

std::int64_t degree_sum(const Exponent& e) {
    std::int64_t s = 0;
    for (auto x : e) s += x;
    return s;
}

std::string format_exponent(const Exponent& e) {
    std::string out = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(e[i]);
    }
    return out + ")";
}

void canonicalize(std::vector<Exponent>& exps, int k, int d) {
    for (const auto& e : exps) {
        for (auto x : e) {
            if (x < 0)
                throw ValidationError("exponent", "negative entry in " + format_exponent(e));
        }
        if (degree_sum(e) > static_cast<std::int64_t>(k) * d)
            throw ValidationError("exponent", format_exponent(e) + " violates the simplex bound at level " +
                                                  std::to_string(k) + " with degree " + std::to_string(d));
    }
    std::sort(exps.begin(), exps.end());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
}

GradedPiece::GradedPiece(int k, int d, std::vector<Exponent> exps) : k(k), d(d), exponents(std::move(exps)) {
    if (k < 0) throw ValidationError("level", "negative level");
    canonicalize(exponents, k, d);
}

bool GradedPiece::contains(const Exponent& e) const {
    return std::binary_search(exponents.begin(), exponents.end(), e);
}

} // namespace gls
