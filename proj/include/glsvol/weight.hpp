#pragma once

#include <functional>
#include <string>
#include <vector>

#include "glsvol/rational.hpp"

namespace gls {

// A smooth convex weight on the chart torus, written in the log coordinates
// t_i = log |z_i|^2, together with the log of its reference volume density.
// Convexity in t and gradient range inside d * (unit simplex) are contracts
// of the constructor, spot-checked by the test suite rather than at runtime.
struct SmoothToricWeight {
    int n = 1;
    int d = 1;
    std::string name;
    std::function<double(const std::vector<double>&)> value;
    std::function<std::vector<double>(const std::vector<double>&)> gradient;
    std::function<double(const std::vector<double>&)> log_density;

    double density(const std::vector<double>& t) const;
};

// The degree-d torus-symmetric weight d*log(1 + sum_i e^{t_i}) with its
// rotation-invariant volume density e^{sum t_i} / (1 + sum_i e^{t_i})^{n+1}.
// The density is normalized with constant 1, so its total mass is 1/n!.
SmoothToricWeight fubini_study_weight(int n, int d);

} // namespace gls
