#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glsvol/bergman.hpp"
#include "glsvol/config.hpp"
#include "glsvol/mass.hpp"
#include "glsvol/series.hpp"

namespace gls {

struct PairCheck {
    std::string a;
    std::string b;
    double discrepancy = 0.0;
    bool ok = false;
};

struct VerificationReport {
    std::string series_description;
    int n = 1;
    int d = 1;
    double tolerance = 0.05;

    VolumeEstimate counting;

    std::vector<int> schedule;
    MassSequence masses;
    Rational mk_limit_exact;   // limit fit of the normalized self-intersections
    Rational ma_limit_exact;   // limit fit of the envelope-level masses
    Rational final_level_mass; // envelope mass at the last schedule level
    double envelope_last_gap = 0.0;

    std::optional<MassReport> grid;        // final level; absent when n > 2
    BirationalityReport birational;        // at the last schedule level
    std::optional<SandwichReport> bergman; // absent when n > 2

    std::vector<PairCheck> pairs;          // counting vs mk vs ma, extrapolated
    bool exact_final_identity = false;     // ma(k_last) == mk/k^n as rationals
    bool remark_branch = false;            // verdict routed through the index factor
    std::optional<double> remark_discrepancy;
    bool pass = false;
};

// Full pipeline: counting estimate, envelope schedule with exact mass
// sequence, grid mass at the final level, birationality, Bergman sandwich,
// then the verdict. Deterministic for a fixed config.
VerificationReport run_verify(const ExperimentConfig& cfg);

// Verdict in isolation, for synthetic reports: fills pairs, remark fields, and
// pass from the volume trio, the birationality report, and the exact identity
// flag already present in `r`.
void apply_verdict(VerificationReport& r);

std::string render_report_json(const VerificationReport& r);
std::string render_summary(const VerificationReport& r);

// Writes report.json, summary.txt, and tables/*.csv under `dir`.
void emit_report(const VerificationReport& r, const std::string& dir);

} // namespace gls
