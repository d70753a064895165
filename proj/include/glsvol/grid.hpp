#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gls {

// Uniform tensor grid over a box in the log coordinates.  Axis i carries
// resolution points from lo[i] to hi[i] inclusive; resolution >= 2.
struct GridSpec {
    std::vector<double> lo;
    std::vector<double> hi;
    int resolution = 0;

    int dim() const { return static_cast<int>(lo.size()); }
    double coord(int axis, int index) const;
    std::size_t point_count() const;
    void validate() const;

    static GridSpec cube(int n, double half_width, int resolution);
};

// Scalar samples over a GridSpec, row-major with the last axis fastest.
struct GridField {
    GridSpec spec;
    std::vector<double> values;

    std::size_t flat_index(const std::vector<int>& idx) const;
    double at(const std::vector<int>& idx) const;
};

using GridFunction = std::function<double(const std::vector<double>&)>;

// Samples f at every grid point.  The parallel variant splits the flat index
// range across threads; values land at fixed indices, so the result is
// bit-identical to the serial variant at any thread count.
GridField evaluate_on_grid_serial(const GridFunction& f, const GridSpec& spec);
GridField evaluate_on_grid(const GridFunction& f, const GridSpec& spec);

// CSV with one coordinate column per axis, then one column per field, in
// row-major point order.  Field names supply the header.
void write_fields_csv(std::ostream& os,
                      const std::vector<std::string>& names,
                      const std::vector<const GridField*>& fields);

} // namespace gls
