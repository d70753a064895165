#include "glsvol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glsvol/envelope.hpp"
#include "glsvol/errors.hpp"
#include "json.hpp"

namespace gls {
namespace {

double rel_gap(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-12});
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

} // namespace

void apply_verdict(VerificationReport& r) {
    const double counting = to_double(r.counting.extrapolated_exact);
    const double mk = to_double(r.mk_limit_exact);
    const double ma = to_double(r.ma_limit_exact);

    r.pairs.clear();
    auto add = [&](const char* a, const char* b, double va, double vb) {
        PairCheck p;
        p.a = a;
        p.b = b;
        p.discrepancy = rel_gap(va, vb);
        p.ok = p.discrepancy <= r.tolerance;
        r.pairs.push_back(p);
    };
    add("vol_counting", "vol_mk_limit", counting, mk);
    add("vol_counting", "vol_ma_exact", counting, ma);
    add("vol_mk_limit", "vol_ma_exact", mk, ma);

    r.remark_branch = !r.birational.birational;
    r.remark_discrepancy.reset();
    bool ok = false;
    if (!r.remark_branch) {
        ok = r.pairs[0].ok && r.pairs[1].ok && r.pairs[2].ok;
    } else {
        // The level maps cover their image with degree = lattice index, and
        // the mass picks that factor up; the combinatorial pair must still
        // agree, but counting is compared through the index instead.
        ok = r.pairs[2].ok;
        if (r.birational.lattice_index) {
            const Rational expected =
                Rational(*r.birational.lattice_index) * r.counting.extrapolated_exact;
            const double disc = rel_gap(ma, to_double(expected));
            r.remark_discrepancy = disc;
            ok = ok && disc <= r.tolerance;
        } else {
            // differences span a rank-deficient lattice: volume 0 territory
            ok = ok && std::fabs(ma) <= r.tolerance && std::fabs(counting) <= r.tolerance;
        }
    }
    r.pass = ok && r.exact_final_identity;
}

VerificationReport run_verify(const ExperimentConfig& cfg) {
    VerificationReport r;
    r.tolerance = cfg.joint_tolerance;

    const MonomialSeries series = build_series(cfg);
    const SmoothToricWeight weight = build_weight(cfg);
    r.series_description = series.description();
    r.n = series.n();
    r.d = series.d();

    const int step = resolve_counting_step(cfg, series);
    const int k_max = std::max(cfg.counting_kmax, step);
    r.counting = estimate_volume(series, k_max, step);

    r.schedule = resolve_envelope_schedule(cfg, series);
    EnvelopeBuilder builder(series, weight);
    r.masses = analytic_mass_limit(builder, r.schedule);

    std::vector<std::pair<int, Rational>> mk_samples, ma_samples;
    for (std::size_t i = 0; i < r.masses.levels.size(); ++i) {
        mk_samples.emplace_back(r.masses.levels[i], r.masses.normalized_mk[i]);
        ma_samples.emplace_back(r.masses.levels[i], r.masses.masses[i]);
    }
    r.mk_limit_exact = limit_fit(mk_samples).value;
    r.ma_limit_exact = limit_fit(ma_samples).value;
    r.final_level_mass = r.masses.final_mass;
    r.exact_final_identity =
        r.masses.masses.back() == r.masses.normalized_mk.back();

    SymbolResult symbol = equilibrium_symbol(builder, r.schedule, envelope_grid(cfg, r.n));
    r.envelope_last_gap = symbol.last_gap;

    if (r.n <= 2) {
        GridMassParams params = default_grid_mass_params(r.n);
        params.grid = mass_grid(cfg, r.n);
        params.coverage_delta = cfg.coverage_delta;
        MassReport report;
        ma_mass_grid(symbol.symbol, params, &report);
        r.grid = report;
    }

    r.birational = is_birational_at(series, r.schedule.back());

    if (r.n <= 2) {
        const std::vector<int> bks = resolve_bergman_schedule(cfg, series);
        r.bergman = sandwich_report(series, weight, symbol.symbol, bks,
                                    bergman_grid(cfg, r.n));
    }

    apply_verdict(r);
    return r;
}

std::string render_report_json(const VerificationReport& r) {
    nlohmann::json j;
    j["series"] = r.series_description;
    j["n"] = r.n;
    j["d"] = r.d;
    j["tolerance"] = r.tolerance;

    nlohmann::json counting;
    counting["extrapolated"] = r.counting.extrapolated;
    counting["extrapolated_exact"] = format_rational(r.counting.extrapolated_exact);
    counting["slope"] = r.counting.slope;
    counting["divisibility"] = r.counting.divisibility;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [k, v] : r.counting.samples)
        samples.push_back({{"k", k}, {"value", to_double(v)}, {"exact", format_rational(v)}});
    counting["samples"] = samples;
    j["counting"] = counting;

    j["vol_counting"] = to_double(r.counting.extrapolated_exact);
    j["vol_mk_limit"] = to_double(r.mk_limit_exact);
    j["vol_mk_limit_exact"] = format_rational(r.mk_limit_exact);
    j["vol_ma_exact"] = format_rational(r.ma_limit_exact);
    j["vol_ma_exact_value"] = to_double(r.ma_limit_exact);
    j["vol_ma_grid"] = r.grid ? nlohmann::json(r.grid->grid_mass) : nlohmann::json();

    nlohmann::json masses = nlohmann::json::array();
    for (std::size_t i = 0; i < r.masses.levels.size(); ++i)
        masses.push_back({{"k", r.masses.levels[i]},
                          {"mass", format_rational(r.masses.masses[i])},
                          {"mass_value", to_double(r.masses.masses[i])},
                          {"mk_normalized", format_rational(r.masses.normalized_mk[i])}});
    j["schedule"] = r.schedule;
    j["masses"] = masses;
    j["final_level_mass"] = format_rational(r.final_level_mass);
    j["envelope_last_gap"] = r.envelope_last_gap;

    if (r.grid) {
        nlohmann::json g;
        g["grid_mass"] = r.grid->grid_mass;
        g["exact_mass"] = r.grid->exact_mass
                              ? nlohmann::json(format_rational(*r.grid->exact_mass))
                              : nlohmann::json();
        g["discrepancy"] = r.grid->discrepancy;
        g["moreau_eps"] = r.grid->moreau_eps;
        g["active_slope_count"] = r.grid->active_slope_count;
        g["negative_mass"] = r.grid->negative_mass;
        g["boundary_deficit"] = r.grid->boundary_deficit;
        j["grid"] = g;
    } else {
        j["grid"] = nlohmann::json();
    }

    nlohmann::json bir;
    bir["flag"] = r.birational.birational;
    bir["lattice_index"] = r.birational.lattice_index
                               ? nlohmann::json(r.birational.lattice_index->convert_to<long long>())
                               : nlohmann::json();
    j["birational"] = bir;

    if (r.bergman) {
        nlohmann::json rows = nlohmann::json::array();
        for (const SandwichRow& row : r.bergman->rows)
            rows.push_back({{"k", row.k}, {"sup_gap", row.sup_gap}});
        j["bergman"] = {{"rows", rows},
                        {"fitted_C", r.bergman->fitted_C},
                        {"monotone", r.bergman->monotone}};
    } else {
        j["bergman"] = nlohmann::json();
    }

    nlohmann::json pairs = nlohmann::json::array();
    for (const PairCheck& p : r.pairs)
        pairs.push_back({{"a", p.a}, {"b", p.b}, {"discrepancy", p.discrepancy}, {"ok", p.ok}});
    j["pairs"] = pairs;
    j["exact_final_identity"] = r.exact_final_identity;
    j["remark_branch"] = r.remark_branch;
    j["remark_discrepancy"] =
        r.remark_discrepancy ? nlohmann::json(*r.remark_discrepancy) : nlohmann::json();
    j["verdict"] = r.pass ? "pass" : "fail";
    return j.dump(2) + "\n";
}

std::string render_summary(const VerificationReport& r) {
    std::ostringstream os;
    os << "series: " << r.series_description << "  (n = " << r.n << ", d = " << r.d << ")\n";
    os << "volumes\n";
    os << "  counting extrapolation  " << fmt6(to_double(r.counting.extrapolated_exact))
       << "  (" << format_rational(r.counting.extrapolated_exact) << ")\n";
    os << "  hull self-intersection  " << fmt6(to_double(r.mk_limit_exact)) << "  ("
       << format_rational(r.mk_limit_exact) << ")\n";
    os << "  envelope mass limit     " << fmt6(to_double(r.ma_limit_exact)) << "  ("
       << format_rational(r.ma_limit_exact) << ")\n";
    if (r.grid)
        os << "  grid mass (level sup)   " << fmt6(r.grid->grid_mass) << "  (discrepancy "
           << fmt6(r.grid->discrepancy) << ")\n";
    else
        os << "  grid mass               skipped (dimension > 2)\n";
    os << "mass schedule\n";
    for (std::size_t i = 0; i < r.masses.levels.size(); ++i)
        os << "  k = " << r.masses.levels[i] << "  mass "
           << format_rational(r.masses.masses[i]) << " = "
           << fmt6(to_double(r.masses.masses[i])) << "\n";
    os << "envelope last gap: " << fmt6(r.envelope_last_gap) << "\n";
    os << "birational: " << (r.birational.birational ? "yes" : "no");
    if (r.birational.lattice_index)
        os << "  (lattice index " << *r.birational.lattice_index << ")";
    os << "\n";
    if (r.bergman) {
        os << "bergman gaps\n";
        for (const SandwichRow& row : r.bergman->rows)
            os << "  k = " << row.k << "  sup gap " << fmt6(row.sup_gap) << "\n";
        os << "  fitted C " << fmt6(r.bergman->fitted_C)
           << (r.bergman->monotone ? "  (non-increasing)" : "  (not monotone)") << "\n";
    }
    os << "checks\n";
    for (const PairCheck& p : r.pairs)
        os << "  " << p.a << " vs " << p.b << "  discrepancy " << fmt6(p.discrepancy)
           << "  " << (p.ok ? "ok" : "exceeds tolerance") << "\n";
    os << "  exact mass = hull self-intersection at final level: "
       << (r.exact_final_identity ? "yes" : "NO") << "\n";
    if (r.remark_branch) {
        os << "  non-birational branch: mass vs index * counting";
        if (r.remark_discrepancy) os << "  discrepancy " << fmt6(*r.remark_discrepancy);
        os << "\n";
    }
    os << "verdict: " << (r.pass ? "pass" : "fail") << "\n";
    return os.str();
}

void emit_report(const VerificationReport& r, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(dir) / "tables");

    {
        std::ofstream out(fs::path(dir) / "report.json");
        if (!out) throw Error("cannot write report.json under '" + dir + "'");
        out << render_report_json(r);
    }
    {
        std::ofstream out(fs::path(dir) / "summary.txt");
        if (!out) throw Error("cannot write summary.txt under '" + dir + "'");
        out << render_summary(r);
    }
    {
        std::ofstream out(fs::path(dir) / "tables" / "volume_samples.csv");
        out << "k,normalized_dim,exact\n";
        for (const auto& [k, v] : r.counting.samples)
            out << k << "," << fmt(to_double(v)) << "," << format_rational(v) << "\n";
    }
    {
        std::ofstream out(fs::path(dir) / "tables" / "masses.csv");
        out << "k,mass,mass_exact,mk_normalized\n";
        for (std::size_t i = 0; i < r.masses.levels.size(); ++i)
            out << r.masses.levels[i] << "," << fmt(to_double(r.masses.masses[i])) << ","
                << format_rational(r.masses.masses[i]) << ","
                << format_rational(r.masses.normalized_mk[i]) << "\n";
    }
    {
        std::ofstream out(fs::path(dir) / "tables" / "sandwich.csv");
        out << "k,sup_gap,fitted_C\n";
        if (r.bergman)
            for (const SandwichRow& row : r.bergman->rows)
                out << row.k << "," << fmt(row.sup_gap) << "," << fmt(r.bergman->fitted_C)
                    << "\n";
    }
    {
        std::ofstream out(fs::path(dir) / "tables" / "grid_mass.csv");
        out << "grid_mass,exact_mass,discrepancy,moreau_eps,active_slopes\n";
        if (r.grid)
            out << fmt(r.grid->grid_mass) << ","
                << (r.grid->exact_mass ? format_rational(*r.grid->exact_mass) : std::string())
                << "," << fmt(r.grid->discrepancy) << "," << fmt(r.grid->moreau_eps) << ","
                << r.grid->active_slope_count << "\n";
        else
            out << ",,,,\n";
    }
}

} // namespace gls
