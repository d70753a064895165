#pragma once

#include <optional>
#include <vector>

#include "glsvol/exponents.hpp"
#include "glsvol/rational.hpp"

namespace gls {

// Index of the subgroup of Z^n generated by a list of integer vectors:
// rank, and the product of elementary divisors when the rank is full.
struct SublatticeIndex {
    int rank = 0;
    std::optional<Int> index; // empty when rank < n
};

SublatticeIndex sublattice_index(const std::vector<Exponent>& generators, int n);

} // namespace gls
