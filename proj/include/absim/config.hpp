#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "absim/errors.hpp"

namespace absim {

enum class Scenario { DoubleWell, SingleMzi, DoubleMzi, KickedQubit, LatticeCheck };

std::string scenario_name(Scenario s);

/// Parsed and validated run configuration. Defaults: g0=0.1, delta=1.0,
/// flux=0, v0=pi, trials=10000, repetitions_per_trial=1, seed=0,
/// postselect/cut per scenario, outputs=all sections.
struct ScenarioConfig {
    Scenario scenario = Scenario::DoubleWell;
    double g0 = 0.1;
    double delta = 1.0;
    double flux = 0.0;
    double v0 = 3.14159265358979323846;
    long trials = 10000;
    long repetitions_per_trial = 1;
    uint64_t seed = 0;
    std::string postselect;            // "L", "R", "x+", "x-" (scenario dependent)
    std::string cut;                   // "well", "mid1", "mid2"
    std::vector<std::string> outputs;  // subset of report section names
};

/// Parse the line-oriented `key = value` format ('#' comments, blank lines
/// allowed). Unknown or duplicate keys and out-of-range values raise
/// ConfigError; malformed syntax raises ParseError with line and column.
ScenarioConfig parse_config(const std::string &text);

/// Validation used by parse_config and by programmatic configs.
void validate_config(ScenarioConfig &cfg);

/// Angle values accept plain radians plus the symbolic forms "pi",
/// "<real>pi" and "pi/<real>" (optionally signed).
double parse_angle(const std::string &text);

inline const std::vector<std::string> kReportSections = {"postselection", "observables", "flips",
                                                         "outcomes", "lattice"};

}  // namespace absim
