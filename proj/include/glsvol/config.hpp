#pragma once

#include <string>
#include <vector>

#include "glsvol/grid.hpp"
#include "glsvol/series.hpp"
#include "glsvol/weight.hpp"

namespace gls {

struct SeriesSpec {
    std::string kind = "complete"; // complete | generators | ideal | example36
    int n = 1;
    int d = 1;
    std::vector<GeneratorTerm> generators; // kind = generators
    std::vector<Exponent> ideal;           // kind = ideal
    int truncation = 0;                    // > 0: replace by the level-l truncation
};

struct WeightSpec {
    std::string name = "fubini-study";
    int degree = 0; // 0 = follow the series degree
};

struct ExperimentConfig {
    SeriesSpec series;
    WeightSpec weight;
    std::vector<int> envelope_schedule; // empty = doubling default
    std::vector<int> bergman_schedule;  // empty = envelope schedule
    int counting_kmax = 64;
    int counting_step = 1;
    double envelope_box = 5.0;
    int envelope_resolution = 0; // 0 = dimension default
    double mass_box = 20.0;
    int mass_resolution = 0;
    double bergman_box = 3.0;
    int bergman_resolution = 0;
    double joint_tolerance = 0.05;
    double coverage_delta = 0.05;
    std::string output_dir = "out";
};

// Key-value text with [section] headers, '#' comments, and '=' assignments;
// the exact grammar is documented in the README.  Assignments land on top of
// `base`, so a file can override flag-provided values.  Unknown sections or
// keys, malformed lines, and invalid values raise ConfigError with the line
// and column; semantic violations raise ValidationError naming the field.
ExperimentConfig parse_config(const std::string& text,
                              ExperimentConfig base = ExperimentConfig());
ExperimentConfig load_config(const std::string& path,
                             ExperimentConfig base = ExperimentConfig());

// Semantic validation and default completion; parse_config ends with this.
// Callers assembling a config directly (CLI flags) run it themselves.
void finalize_config(ExperimentConfig& cfg);

// Value parsers shared by the config file and the CLI flag mirrors.
std::vector<int> parse_int_list(const std::string& text);
std::vector<Exponent> parse_exponent_list(const std::string& text);
std::vector<GeneratorTerm> parse_generator_list(const std::string& text);

MonomialSeries build_series(const ExperimentConfig& cfg);
SmoothToricWeight build_weight(const ExperimentConfig& cfg);

// Schedule and grid defaults that depend on the series.
std::vector<int> resolve_envelope_schedule(const ExperimentConfig& cfg,
                                           const MonomialSeries& series);
std::vector<int> resolve_bergman_schedule(const ExperimentConfig& cfg,
                                          const MonomialSeries& series);
int resolve_counting_step(const ExperimentConfig& cfg,
                          const MonomialSeries& series);
GridSpec envelope_grid(const ExperimentConfig& cfg, int n);
GridSpec mass_grid(const ExperimentConfig& cfg, int n);
GridSpec bergman_grid(const ExperimentConfig& cfg, int n);

} // namespace gls
