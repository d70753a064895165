// Command-line front end: volume, envelope, ma-mass, bergman, verify.
// Flags mirror the config file keys; when both are given, the file wins.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "glsvol/bergman.hpp"
#include "glsvol/config.hpp"
#include "glsvol/envelope.hpp"
#include "glsvol/errors.hpp"
#include "glsvol/mass.hpp"
#include "glsvol/series.hpp"
#include "glsvol/verify.hpp"
#include "json.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::string kind = "complete";
    int n = 1;
    int d = 1;
    std::string generators;
    std::string ideal;
    int truncation = 0;
    std::string weight_name = "fubini-study";
    int weight_degree = 0;
    std::string envelope_schedule;
    std::string bergman_schedule;
    int counting_kmax = 64;
    int counting_step = 1;
    double envelope_box = 5.0;
    int envelope_resolution = 0;
    double mass_box = 20.0;
    int mass_resolution = 0;
    double bergman_box = 3.0;
    int bergman_resolution = 0;
    double joint_tolerance = 0.05;
    double coverage_delta = 0.05;
    std::string output_dir = "out";
};

void add_common_options(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config_path, "config file; its values override flags");
    sub->add_option("--kind", f.kind, "series kind: complete, generators, ideal, example36");
    sub->add_option("--n", f.n, "torus dimension");
    sub->add_option("--d", f.d, "degree");
    sub->add_option("--generators", f.generators, "generator list, e.g. \"(0)@1 (1)@2\"");
    sub->add_option("--ideal", f.ideal, "monomial ideal generators, e.g. \"(1,0) (0,2)\"");
    sub->add_option("--truncation", f.truncation, "replace the series by its level-l truncation");
    sub->add_option("--weight-name", f.weight_name, "weight family name");
    sub->add_option("--weight-degree", f.weight_degree, "weight degree (0 = series degree)");
    sub->add_option("--envelope-schedule", f.envelope_schedule, "levels, e.g. \"1,2,4,8\"");
    sub->add_option("--bergman-schedule", f.bergman_schedule, "levels for the sandwich table");
    sub->add_option("--counting-kmax", f.counting_kmax, "largest counting level");
    sub->add_option("--counting-step", f.counting_step, "counting level step");
    sub->add_option("--envelope-box", f.envelope_box, "envelope probe half-width");
    sub->add_option("--envelope-resolution", f.envelope_resolution, "probe points per axis");
    sub->add_option("--mass-box", f.mass_box, "mass grid half-width");
    sub->add_option("--mass-resolution", f.mass_resolution, "mass grid points per axis");
    sub->add_option("--bergman-box", f.bergman_box, "sandwich box half-width");
    sub->add_option("--bergman-resolution", f.bergman_resolution, "sandwich points per axis");
    sub->add_option("--joint-tolerance", f.joint_tolerance, "volume agreement tolerance");
    sub->add_option("--coverage-delta", f.coverage_delta, "allowed hull coverage slack");
    sub->add_option("--output-dir", f.output_dir, "where verify writes its files");
}

gls::ExperimentConfig make_config(const CLI::App& sub, const Flags& f) {
    gls::ExperimentConfig cfg;
    if (sub.count("--kind")) cfg.series.kind = f.kind;
    if (sub.count("--n")) cfg.series.n = f.n;
    if (sub.count("--d")) cfg.series.d = f.d;
    if (sub.count("--generators")) cfg.series.generators = gls::parse_generator_list(f.generators);
    if (sub.count("--ideal")) cfg.series.ideal = gls::parse_exponent_list(f.ideal);
    if (sub.count("--truncation")) cfg.series.truncation = f.truncation;
    if (sub.count("--weight-name")) cfg.weight.name = f.weight_name;
    if (sub.count("--weight-degree")) cfg.weight.degree = f.weight_degree;
    if (sub.count("--envelope-schedule"))
        cfg.envelope_schedule = gls::parse_int_list(f.envelope_schedule);
    if (sub.count("--bergman-schedule"))
        cfg.bergman_schedule = gls::parse_int_list(f.bergman_schedule);
    if (sub.count("--counting-kmax")) cfg.counting_kmax = f.counting_kmax;
    if (sub.count("--counting-step")) cfg.counting_step = f.counting_step;
    if (sub.count("--envelope-box")) cfg.envelope_box = f.envelope_box;
    if (sub.count("--envelope-resolution")) cfg.envelope_resolution = f.envelope_resolution;
    if (sub.count("--mass-box")) cfg.mass_box = f.mass_box;
    if (sub.count("--mass-resolution")) cfg.mass_resolution = f.mass_resolution;
    if (sub.count("--bergman-box")) cfg.bergman_box = f.bergman_box;
    if (sub.count("--bergman-resolution")) cfg.bergman_resolution = f.bergman_resolution;
    if (sub.count("--joint-tolerance")) cfg.joint_tolerance = f.joint_tolerance;
    if (sub.count("--coverage-delta")) cfg.coverage_delta = f.coverage_delta;
    if (sub.count("--output-dir")) cfg.output_dir = f.output_dir;
    if (sub.count("--config")) return gls::load_config(f.config_path, cfg);
    gls::finalize_config(cfg);
    return cfg;
}

int run_volume(const gls::ExperimentConfig& cfg) {
    const gls::MonomialSeries series = gls::build_series(cfg);
    const int step = gls::resolve_counting_step(cfg, series);
    const gls::VolumeEstimate est =
        gls::estimate_volume(series, std::max(cfg.counting_kmax, step), step);
    nlohmann::json j;
    j["series"] = series.description();
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [k, v] : est.samples)
        samples.push_back({{"k", k},
                           {"value", gls::to_double(v)},
                           {"exact", gls::format_rational(v)}});
    j["samples"] = samples;
    j["extrapolated"] = est.extrapolated;
    j["extrapolated_exact"] = gls::format_rational(est.extrapolated_exact);
    j["slope"] = est.slope;
    j["divisibility"] = est.divisibility;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_envelope(const gls::ExperimentConfig& cfg, int level, const std::string& grid_csv) {
    const gls::MonomialSeries series = gls::build_series(cfg);
    const gls::SmoothToricWeight weight = gls::build_weight(cfg);
    gls::EnvelopeBuilder builder(series, weight);
    const std::vector<int> schedule = gls::resolve_envelope_schedule(cfg, series);
    const int k = level > 0 ? level : schedule.back();
    const gls::PLConvexFunction f = builder.level(k);
    f.serialize(std::cout);
    if (!grid_csv.empty()) {
        const gls::GridSpec spec = gls::envelope_grid(cfg, series.n());
        const gls::GridField field = gls::evaluate_on_grid(f.as_grid_function(), spec);
        std::ofstream out(grid_csv);
        if (!out) throw gls::Error("cannot write '" + grid_csv + "'");
        gls::write_fields_csv(out, {"envelope"}, {&field});
    }
    return 0;
}

int run_ma_mass(const gls::ExperimentConfig& cfg, int level, bool no_grid, bool serial) {
    const gls::MonomialSeries series = gls::build_series(cfg);
    const gls::SmoothToricWeight weight = gls::build_weight(cfg);
    gls::EnvelopeBuilder builder(series, weight);
    const std::vector<int> schedule = gls::resolve_envelope_schedule(cfg, series);
    const int k = level > 0 ? level : schedule.back();
    const gls::PLConvexFunction f = builder.level(k);
    gls::MassReport rep;
    if (!no_grid && series.n() <= 2) {
        gls::GridMassParams params = gls::default_grid_mass_params(series.n());
        params.grid = gls::mass_grid(cfg, series.n());
        params.coverage_delta = cfg.coverage_delta;
        params.parallel = !serial;
        gls::ma_mass_grid(f, params, &rep);
    } else {
        rep.exact_mass = gls::ma_mass_pl(f);
        rep.active_slope_count = static_cast<int>(gls::active_slopes(f).size());
    }
    std::cout << gls::mass_report_json(rep) << "\n";
    return 0;
}

int run_bergman(const gls::ExperimentConfig& cfg, const std::string& csv_path) {
    const gls::MonomialSeries series = gls::build_series(cfg);
    const gls::SmoothToricWeight weight = gls::build_weight(cfg);
    gls::EnvelopeBuilder builder(series, weight);
    const std::vector<int> schedule = gls::resolve_envelope_schedule(cfg, series);
    const gls::SymbolResult symbol = gls::equilibrium_symbol(builder, schedule);
    const std::vector<int> bks = gls::resolve_bergman_schedule(cfg, series);
    const gls::SandwichReport rep = gls::sandwich_report(
        series, weight, symbol.symbol, bks, gls::bergman_grid(cfg, series.n()));
    std::cout << gls::sandwich_json(rep) << "\n";
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw gls::Error("cannot write '" + csv_path + "'");
        gls::sandwich_csv(out, rep);
    }
    return 0;
}

int run_verify_cmd(const gls::ExperimentConfig& cfg, const std::string& out_dir) {
    const gls::VerificationReport r = gls::run_verify(cfg);
    const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;
    gls::emit_report(r, dir);
    std::cout << gls::render_summary(r);
    std::cout << "written: " << dir << "/report.json\n";
    return r.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded linear series: volumes, envelopes, and mass checks"};
    app.require_subcommand(1);

    Flags f;
    int level = 0;
    std::string grid_csv, sandwich_csv_path, out_dir;
    bool no_grid = false;
    bool serial = false;

    CLI::App* volume = app.add_subcommand("volume", "normalized dimension counts and their limit");
    add_common_options(volume, f);

    CLI::App* envelope = app.add_subcommand("envelope", "piecewise-linear level envelope");
    add_common_options(envelope, f);
    envelope->add_option("--level", level, "level k (default: last schedule entry)");
    envelope->add_option("--grid-csv", grid_csv, "also sample the envelope to a CSV file");

    CLI::App* ma = app.add_subcommand("ma-mass", "exact and grid mass of a level envelope");
    add_common_options(ma, f);
    ma->add_option("--level", level, "level k (default: last schedule entry)");
    ma->add_flag("--no-grid", no_grid, "skip the grid estimate");
    ma->add_flag("--serial", serial, "force the serial integration kernel");

    CLI::App* bergman = app.add_subcommand("bergman", "sandwich gaps against the limit symbol");
    add_common_options(bergman, f);
    bergman->add_option("--csv", sandwich_csv_path, "also write the rows as CSV");

    CLI::App* verify = app.add_subcommand("verify", "full pipeline with report files");
    add_common_options(verify, f);
    verify->add_option("--out", out_dir, "output directory (overrides the config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (volume->parsed()) return run_volume(make_config(*volume, f));
        if (envelope->parsed()) return run_envelope(make_config(*envelope, f), level, grid_csv);
        if (ma->parsed()) return run_ma_mass(make_config(*ma, f), level, no_grid, serial);
        if (bergman->parsed()) return run_bergman(make_config(*bergman, f), sandwich_csv_path);
        if (verify->parsed()) return run_verify_cmd(make_config(*verify, f), out_dir);
    } catch (const gls::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
