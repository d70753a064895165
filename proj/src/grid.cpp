#include "glsvol/grid.hpp"

#include <cstdio>
#include <ostream>

#include "glsvol/errors.hpp"

namespace gls {

double GridSpec::coord(int axis, int index) const {
    double a = lo[axis];
    double b = hi[axis];
    return a + (b - a) * static_cast<double>(index) /
                   static_cast<double>(resolution - 1);
}

std::size_t GridSpec::point_count() const {
    std::size_t c = 1;
    for (int i = 0; i < dim(); ++i) c *= static_cast<std::size_t>(resolution);
    return c;
}

void GridSpec::validate() const {
    if (lo.size() != hi.size())
        throw ValidationError("grid", "lo/hi dimension mismatch");
    if (lo.empty()) throw ValidationError("grid", "empty grid box");
    if (resolution < 2)
        throw ValidationError("grid.resolution", "resolution must be at least 2");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i]))
            throw ValidationError("grid", "box bounds must satisfy lo < hi");
}

GridSpec GridSpec::cube(int n, double half_width, int resolution) {
    GridSpec s;
    s.lo.assign(n, -half_width);
    s.hi.assign(n, half_width);
    s.resolution = resolution;
    s.validate();
    return s;
}

std::size_t GridField::flat_index(const std::vector<int>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < spec.dim(); ++a)
        flat = flat * static_cast<std::size_t>(spec.resolution) +
               static_cast<std::size_t>(idx[a]);
    return flat;
}

double GridField::at(const std::vector<int>& idx) const {
    return values[flat_index(idx)];
}

namespace {

void decode_point(const GridSpec& spec, std::size_t flat, std::vector<double>& t) {
    int n = spec.dim();
    for (int a = n - 1; a >= 0; --a) {
        int idx = static_cast<int>(flat % static_cast<std::size_t>(spec.resolution));
        flat /= static_cast<std::size_t>(spec.resolution);
        t[a] = spec.coord(a, idx);
    }
}

} // namespace

GridField evaluate_on_grid_serial(const GridFunction& f, const GridSpec& spec) {
    spec.validate();
    GridField out;
    out.spec = spec;
    out.values.resize(spec.point_count());
    std::vector<double> t(spec.dim());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        decode_point(spec, i, t);
        out.values[i] = f(t);
    }
    return out;
}

GridField evaluate_on_grid(const GridFunction& f, const GridSpec& spec) {
    spec.validate();
    GridField out;
    out.spec = spec;
    out.values.resize(spec.point_count());
    const std::int64_t total = static_cast<std::int64_t>(out.values.size());
#pragma omp parallel
    {
        std::vector<double> t(spec.dim());
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            decode_point(spec, static_cast<std::size_t>(i), t);
            out.values[static_cast<std::size_t>(i)] = f(t);
        }
    }
    return out;
}

void write_fields_csv(std::ostream& os,
                      const std::vector<std::string>& names,
                      const std::vector<const GridField*>& fields) {
    if (fields.empty()) throw ValidationError("csv", "no fields to write");
    if (names.size() != fields.size())
        throw ValidationError("csv", "one name per field required");
    const GridSpec& spec = fields[0]->spec;
    for (const GridField* f : fields)
        if (f->spec.resolution != spec.resolution || f->spec.dim() != spec.dim())
            throw ValidationError("csv", "fields sampled on different grids");

    for (int a = 0; a < spec.dim(); ++a) os << "t" << a << ",";
    for (std::size_t j = 0; j < names.size(); ++j) {
        os << names[j];
        os << (j + 1 < names.size() ? ',' : '\n');
    }

    char buf[64];
    std::vector<double> t(spec.dim());
    for (std::size_t i = 0; i < fields[0]->values.size(); ++i) {
        decode_point(spec, i, t);
        for (int a = 0; a < spec.dim(); ++a) {
            std::snprintf(buf, sizeof(buf), "%.17g", t[a]);
            os << buf << ',';
        }
        for (std::size_t j = 0; j < fields.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", fields[j]->values[i]);
            os << buf;
            os << (j + 1 < fields.size() ? ',' : '\n');
        }
    }
}

} // namespace gls
