#include "glsvol/moreau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "glsvol/errors.hpp"

namespace gls {

namespace {

// Lower envelope of the parabolas j ↦ g[j] + c*(i-j)^2, evaluated at every
// integer i in [0, m).  Linear time in m.
void parabola_envelope(const double* g, int m, double c, double* out,
                       int* v, double* z) {
    const double inf = std::numeric_limits<double>::infinity();
    int k = 0;
    v[0] = 0;
    z[0] = -inf;
    z[1] = inf;
    for (int q = 1; q < m; ++q) {
        for (;;) {
            double s = ((g[q] + c * q * q) - (g[v[k]] + c * v[k] * v[k])) /
                       (2.0 * c * (q - v[k]));
            if (s <= z[k]) {
                --k;
                continue;
            }
            ++k;
            v[k] = q;
            z[k] = s;
            z[k + 1] = inf;
            break;
        }
    }
    k = 0;
    for (int q = 0; q < m; ++q) {
        while (z[k + 1] < q) ++k;
        double dq = static_cast<double>(q - v[k]);
        out[q] = g[v[k]] + c * dq * dq;
    }
}

template <bool Parallel>
GridField moreau_impl(const GridField& f, double eps) {
    if (!(eps > 0.0)) throw ValidationError("eps", "smoothing width must be positive");
    f.spec.validate();
    GridField cur = f;
    const int n = f.spec.dim();
    const int m = f.spec.resolution;
    const std::size_t total = f.values.size();

    for (int axis = 0; axis < n; ++axis) {
        std::size_t stride = 1;
        for (int a = axis + 1; a < n; ++a)
            stride *= static_cast<std::size_t>(m);
        double h = (f.spec.hi[axis] - f.spec.lo[axis]) / (m - 1);
        double c = h * h / (2.0 * eps);

        GridField next = cur;
        const std::int64_t lines = static_cast<std::int64_t>(total / m);
#pragma omp parallel if (Parallel)
        {
            std::vector<double> g(m), out(m), z(m + 1);
            std::vector<int> v(m);
#pragma omp for schedule(static)
            for (std::int64_t line = 0; line < lines; ++line) {
                // Base index of this line: insert a zero digit at `axis`.
                std::size_t block = static_cast<std::size_t>(line) / stride;
                std::size_t rem = static_cast<std::size_t>(line) % stride;
                std::size_t base = block * stride * m + rem;
                for (int i = 0; i < m; ++i) g[i] = cur.values[base + i * stride];
                parabola_envelope(g.data(), m, c, out.data(), v.data(), z.data());
                for (int i = 0; i < m; ++i) next.values[base + i * stride] = out[i];
            }
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace

GridField moreau_envelope_serial(const GridField& f, double eps) {
    return moreau_impl<false>(f, eps);
}

GridField moreau_envelope(const GridField& f, double eps) {
    return moreau_impl<true>(f, eps);
}

double default_moreau_eps(const GridSpec& spec) {
    double h = 0.0;
    for (int a = 0; a < spec.dim(); ++a)
        h = std::max(h, (spec.hi[a] - spec.lo[a]) / (spec.resolution - 1));
    return 2.0 * h;
}

} // namespace gls
