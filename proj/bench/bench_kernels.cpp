// Times the serial kernels against their parallel twins on a fixed workload
// and checks that the results agree bit for bit.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "glsvol/envelope.hpp"
#include "glsvol/grid.hpp"
#include "glsvol/mass.hpp"
#include "glsvol/moreau.hpp"

using namespace gls;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PLConvexFunction random_pl(int n, int pieces, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 6);
    std::vector<PLPiece> out;
    for (int i = 0; i < pieces; ++i) {
        PLPiece p;
        p.slope.resize(n);
        for (int a = 0; a < n; ++a) p.slope[a] = Rational(num(rng), den(rng));
        p.intercept = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
        out.push_back(p);
    }
    return PLConvexFunction(n, out);
}

} // namespace

int main() {
    const PLConvexFunction f = random_pl(2, 400, 20240817u);
    const GridSpec spec = GridSpec::cube(2, 20.0, 512);

    auto t0 = std::chrono::steady_clock::now();
    const GridField serial_field = evaluate_on_grid_serial(f.as_grid_function(), spec);
    const double t_eval_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const GridField par_field = evaluate_on_grid(f.as_grid_function(), spec);
    const double t_eval_par = seconds_since(t0);

    bool eval_same = serial_field.values == par_field.values;

    const double eps = default_moreau_eps(spec);
    t0 = std::chrono::steady_clock::now();
    const GridField serial_smooth = moreau_envelope_serial(serial_field, eps);
    const double t_moreau_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const GridField par_smooth = moreau_envelope(par_field, eps);
    const double t_moreau_par = seconds_since(t0);

    bool moreau_same = serial_smooth.values == par_smooth.values;

    double neg_serial = 0.0, neg_par = 0.0;
    t0 = std::chrono::steady_clock::now();
    const double mass_serial = hessian_det_sum_serial(serial_smooth, &neg_serial);
    const double t_mass_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const double mass_par = hessian_det_sum_omp(par_smooth, &neg_par);
    const double t_mass_par = seconds_since(t0);

    bool mass_same = mass_serial == mass_par && neg_serial == neg_par;

    std::printf("%-18s %10s %10s %8s %s\n", "kernel", "serial", "parallel", "speedup",
                "identical");
    std::printf("%-18s %9.3fs %9.3fs %7.2fx %s\n", "grid evaluate", t_eval_serial,
                t_eval_par, t_eval_serial / t_eval_par, eval_same ? "yes" : "NO");
    std::printf("%-18s %9.3fs %9.3fs %7.2fx %s\n", "moreau smooth", t_moreau_serial,
                t_moreau_par, t_moreau_serial / t_moreau_par, moreau_same ? "yes" : "NO");
    std::printf("%-18s %9.3fs %9.3fs %7.2fx %s\n", "hessian mass", t_mass_serial,
                t_mass_par, t_mass_serial / t_mass_par, mass_same ? "yes" : "NO");
    std::printf("mass = %.12g (clamped negative part %.3g)\n", mass_par, neg_par);
    return (eval_same && moreau_same && mass_same) ? 0 : 1;
}
