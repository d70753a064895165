#include "glsvol/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "glsvol/envelope.hpp"
#include "glsvol/errors.hpp"
#include "glsvol/mass.hpp"

namespace gls {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

int to_int(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ValidationError("value", "empty integer");
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(t, &used);
    } catch (const std::exception&) {
        throw ValidationError("value", "not an integer: '" + t + "'");
    }
    if (used != t.size()) throw ValidationError("value", "not an integer: '" + t + "'");
    if (v < -1000000000L || v > 1000000000L)
        throw ValidationError("value", "integer out of range: '" + t + "'");
    return static_cast<int>(v);
}

double to_double(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ValidationError("value", "empty number");
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ValidationError("value", "not a number: '" + t + "'");
    }
    if (used != t.size()) throw ValidationError("value", "not a number: '" + t + "'");
    return v;
}

// Splits "(...)"-delimited groups out of a list such as "(1,0) (0,2)".
std::vector<std::string> paren_groups(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            continue;
        }
        if (c != '(')
            throw ValidationError("value", std::string("expected '(' but found '") + c + "'");
        const std::size_t close = text.find(')', i);
        if (close == std::string::npos)
            throw ValidationError("value", "unterminated '(' in list");
        std::size_t end = close + 1;
        // keep a trailing "@degree" token attached to its group
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
               text[end] != ',' && text[end] != '(')
            ++end;
        out.push_back(text.substr(i, end - i));
        i = end;
    }
    return out;
}

Exponent exponent_from_group(const std::string& group) {
    const std::size_t close = group.find(')');
    const std::string inner = group.substr(1, close - 1);
    if (close + 1 != group.size())
        throw ValidationError("value", "unexpected text after ')': '" + group + "'");
    Exponent a;
    std::stringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ','))
        a.push_back(to_int(part));
    if (a.empty()) throw ValidationError("value", "empty exponent '()'");
    return a;
}

} // namespace

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string token;
    for (char c : text + ",") {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!trim(token).empty()) out.push_back(to_int(token));
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    return out;
}

std::vector<Exponent> parse_exponent_list(const std::string& text) {
    std::vector<Exponent> out;
    for (const std::string& g : paren_groups(text))
        out.push_back(exponent_from_group(g));
    return out;
}

std::vector<GeneratorTerm> parse_generator_list(const std::string& text) {
    std::vector<GeneratorTerm> out;
    for (const std::string& g : paren_groups(text)) {
        const std::size_t at = g.find('@');
        GeneratorTerm term;
        if (at == std::string::npos) {
            term.exponent = exponent_from_group(g);
            term.degree = 1;
        } else {
            term.exponent = exponent_from_group(g.substr(0, at));
            term.degree = to_int(g.substr(at + 1));
        }
        if (term.degree < 1)
            throw ValidationError("value", "generator degree must be positive");
        out.push_back(term);
    }
    return out;
}

namespace {

void apply_assignment(ExperimentConfig& cfg, const std::string& section,
                      const std::string& key, const std::string& value) {
    const std::string full = section + "." + key;
    if (section == "series") {
        if (key == "kind") cfg.series.kind = trim(value);
        else if (key == "n") cfg.series.n = to_int(value);
        else if (key == "d") cfg.series.d = to_int(value);
        else if (key == "generators") cfg.series.generators = parse_generator_list(value);
        else if (key == "ideal") cfg.series.ideal = parse_exponent_list(value);
        else if (key == "truncation") cfg.series.truncation = to_int(value);
        else throw ValidationError(full, "unknown key");
    } else if (section == "weight") {
        if (key == "name") cfg.weight.name = trim(value);
        else if (key == "degree") cfg.weight.degree = to_int(value);
        else throw ValidationError(full, "unknown key");
    } else if (section == "schedules") {
        if (key == "envelope") cfg.envelope_schedule = parse_int_list(value);
        else if (key == "bergman") cfg.bergman_schedule = parse_int_list(value);
        else if (key == "counting_kmax") cfg.counting_kmax = to_int(value);
        else if (key == "counting_step") cfg.counting_step = to_int(value);
        else throw ValidationError(full, "unknown key");
    } else if (section == "grids") {
        if (key == "envelope_box") cfg.envelope_box = to_double(value);
        else if (key == "envelope_resolution") cfg.envelope_resolution = to_int(value);
        else if (key == "mass_box") cfg.mass_box = to_double(value);
        else if (key == "mass_resolution") cfg.mass_resolution = to_int(value);
        else if (key == "bergman_box") cfg.bergman_box = to_double(value);
        else if (key == "bergman_resolution") cfg.bergman_resolution = to_int(value);
        else throw ValidationError(full, "unknown key");
    } else if (section == "tolerances") {
        if (key == "joint") cfg.joint_tolerance = to_double(value);
        else if (key == "coverage") cfg.coverage_delta = to_double(value);
        else throw ValidationError(full, "unknown key");
    } else if (section == "output") {
        if (key == "dir") cfg.output_dir = trim(value);
        else throw ValidationError(full, "unknown key");
    } else {
        throw ValidationError(section, "unknown section");
    }
}

} // namespace

void finalize_config(ExperimentConfig& cfg) {
    const std::set<std::string> kinds = {"complete", "generators", "ideal", "example36"};
    if (!kinds.count(cfg.series.kind))
        throw ValidationError("series.kind", "unknown kind '" + cfg.series.kind + "'");
    if (cfg.series.kind == "example36") {
        // pinned family: n = 2, d = 1 (1 is also accepted as "left default")
        if (cfg.series.n != 1 && cfg.series.n != 2)
            throw ValidationError("series.n", "this family is fixed at n = 2");
        if (cfg.series.d != 1)
            throw ValidationError("series.d", "this family is fixed at d = 1");
        cfg.series.n = 2;
        cfg.series.d = 1;
    }
    if (cfg.series.n < 1) throw ValidationError("series.n", "must be at least 1");
    if (cfg.series.d < 1) throw ValidationError("series.d", "must be at least 1");
    if (cfg.series.truncation < 0)
        throw ValidationError("series.truncation", "must be nonnegative");
    if (cfg.series.kind == "ideal" && cfg.series.ideal.empty())
        throw ValidationError("series.ideal", "kind = ideal requires ideal generators");
    if (cfg.series.kind == "generators" && cfg.series.generators.empty())
        throw ValidationError("series.generators", "kind = generators requires generators");
    for (const GeneratorTerm& g : cfg.series.generators)
        if (static_cast<int>(g.exponent.size()) != cfg.series.n)
            throw ValidationError("series.generators", "exponent length must equal n");
    for (const Exponent& a : cfg.series.ideal)
        if (static_cast<int>(a.size()) != cfg.series.n)
            throw ValidationError("series.ideal", "exponent length must equal n");

    if (cfg.weight.name != "fubini-study")
        throw ValidationError("weight.name", "unknown weight '" + cfg.weight.name + "'");
    if (cfg.weight.degree == 0) cfg.weight.degree = cfg.series.d;
    if (cfg.weight.degree != cfg.series.d)
        throw ValidationError("weight.degree", "must match the series degree");

    if (!cfg.envelope_schedule.empty()) validate_schedule(cfg.envelope_schedule);
    if (!cfg.bergman_schedule.empty()) validate_schedule(cfg.bergman_schedule);
    if (cfg.counting_step < 1)
        throw ValidationError("schedules.counting_step", "must be positive");
    if (cfg.counting_kmax < cfg.counting_step)
        throw ValidationError("schedules.counting_kmax", "must be at least the step");

    if (cfg.envelope_box <= 0) throw ValidationError("grids.envelope_box", "must be positive");
    if (cfg.mass_box <= 0) throw ValidationError("grids.mass_box", "must be positive");
    if (cfg.bergman_box <= 0) throw ValidationError("grids.bergman_box", "must be positive");
    if (cfg.envelope_resolution < 0 || cfg.envelope_resolution == 1)
        throw ValidationError("grids.envelope_resolution", "needs at least 2 points per axis");
    if (cfg.mass_resolution < 0 || (cfg.mass_resolution > 0 && cfg.mass_resolution < 8))
        throw ValidationError("grids.mass_resolution", "needs at least 8 points per axis");
    if (cfg.bergman_resolution < 0 || cfg.bergman_resolution == 1)
        throw ValidationError("grids.bergman_resolution", "needs at least 2 points per axis");

    if (cfg.joint_tolerance <= 0) throw ValidationError("tolerances.joint", "must be positive");
    if (cfg.coverage_delta <= 0) throw ValidationError("tolerances.coverage", "must be positive");
    if (cfg.output_dir.empty()) throw ValidationError("output.dir", "must be nonempty");
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
    ExperimentConfig cfg = std::move(base);
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(line_no, static_cast<int>(line.size()),
                                  "expected ']' to close the section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(line_no, 1, "empty section name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, 1, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(line_no, 1, "empty key before '='");
        if (section.empty())
            throw ConfigError(line_no, 1, "assignment before any [section] header");
        const int col = static_cast<int>(raw.find(key.front()) + 1);
        try {
            apply_assignment(cfg, section, key, value);
        } catch (const ValidationError& e) {
            throw ConfigError(line_no, col, e.what());
        }
    }
    finalize_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, 0, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

MonomialSeries build_series(const ExperimentConfig& cfg) {
    const SeriesSpec& s = cfg.series;
    auto base = [&]() -> MonomialSeries {
        if (s.kind == "complete") return complete_series(s.n, s.d);
        if (s.kind == "generators") return series_from_generators(s.n, s.d, s.generators);
        if (s.kind == "ideal") return ideal_series(s.n, s.d, s.ideal);
        return example36_series();
    }();
    if (s.truncation > 0) return truncate(base, s.truncation);
    return base;
}

SmoothToricWeight build_weight(const ExperimentConfig& cfg) {
    return fubini_study_weight(cfg.series.n, cfg.weight.degree);
}

std::vector<int> resolve_envelope_schedule(const ExperimentConfig& cfg,
                                           const MonomialSeries& series) {
    if (!cfg.envelope_schedule.empty()) return cfg.envelope_schedule;
    const int start = first_nonempty_level(series, 64);
    return doubling_schedule(start, 8 * start);
}

std::vector<int> resolve_bergman_schedule(const ExperimentConfig& cfg,
                                          const MonomialSeries& series) {
    if (!cfg.bergman_schedule.empty()) return cfg.bergman_schedule;
    return resolve_envelope_schedule(cfg, series);
}

int resolve_counting_step(const ExperimentConfig& cfg, const MonomialSeries& series) {
    const int start = first_nonempty_level(series, 64);
    // keep every sampled level on the series' nonempty sublattice
    return cfg.counting_step * start;
}

GridSpec envelope_grid(const ExperimentConfig& cfg, int n) {
    int res = cfg.envelope_resolution;
    if (res == 0) res = n == 1 ? 1001 : 65;
    return GridSpec::cube(n, cfg.envelope_box, res);
}

GridSpec mass_grid(const ExperimentConfig& cfg, int n) {
    GridMassParams base = default_grid_mass_params(n);
    int res = cfg.mass_resolution;
    if (res == 0) res = base.grid.resolution;
    return GridSpec::cube(n, cfg.mass_box, res);
}

GridSpec bergman_grid(const ExperimentConfig& cfg, int n) {
    int res = cfg.bergman_resolution;
    if (res == 0) res = n == 1 ? 601 : 41;
    return GridSpec::cube(n, cfg.bergman_box, res);
}

} // namespace gls
