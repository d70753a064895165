#pragma once

#include <string>
#include <vector>

#include "glsvol/exponents.hpp"
#include "glsvol/rational.hpp"
#include "glsvol/series.hpp"

namespace gls {

// normal . x <= offset
struct Halfspace {
    RatVec normal;
    Rational offset;
};

// normal . x == offset
struct Hyperplane {
    RatVec normal;
    Rational offset;
};

// A convex polytope carrying both exact representations. The vertex and
// halfspace descriptions are cross-validated on construction: every vertex
// satisfies every halfspace and lies on at least dim() facets, every facet
// carries at least dim() vertices, and every input point is inside.
class RationalPolytope {
  public:
    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return dim_; }
    const std::vector<RatVec>& vertices() const { return vertices_; }
    const std::vector<Halfspace>& facets() const { return facets_; }
    const std::vector<Hyperplane>& span_equalities() const { return span_; }
    const std::vector<std::vector<int>>& facet_vertices() const { return facet_vertices_; }

    bool contains(const RatVec& p) const;

  private:
    friend RationalPolytope convex_hull(const std::vector<RatVec>&);
    int ambient_dim_ = 0;
    int dim_ = 0;
    std::vector<RatVec> vertices_;
    std::vector<Halfspace> facets_;
    std::vector<Hyperplane> span_;
    std::vector<std::vector<int>> facet_vertices_;
};

// Exact convex hull. Dimensions 1 and 2 use direct sweeps; dimension 3 and
// above filter extreme points with exact LPs and enumerate supporting
// hyperplanes, which is only intended for small inputs (caps documented in
// the implementation).
RationalPolytope convex_hull(const std::vector<RatVec>& points);

// Exact Lebesgue volume in the ambient space; 0 for lower-dimensional sets.
Rational volume(const RationalPolytope& p);

// All integer points inside, canonically ordered.
std::vector<Exponent> lattice_points(const RationalPolytope& p, std::size_t cap = kEnumerationCap);

// n! times the volume of the convex hull of level k. The normalized values
// n! vol(conv A_k) / k^n climb toward the volume of the series.
Rational mk_self_intersection(const MonomialSeries& w, int k);

std::string serialize_vrep(const RationalPolytope& p);
std::vector<RatVec> parse_vrep(const std::string& text);

} // namespace gls
