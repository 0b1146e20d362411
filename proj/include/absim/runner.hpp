#pragma once

#include <string>
#include <vector>

#include "absim/config.hpp"
#include "absim/hilbert.hpp"
#include "absim/rng.hpp"

namespace absim {

/// One pointer readout inside a trial.
struct ReadoutEvent {
    int observable;  // index into the scenario's observable list
    double q0;
    bool sign_flip;  // post-readout <sigma_x> went negative
    bool born_flip;  // strong sigma_x check sampled |x-> (double_well only)
};

struct TrialRecord {
    bool postselected = false;
    int outcome = 0;              // kicked_qubit: strong sigma_x result (+1/-1)
    bool forbidden_arm = false;   // double_mzi: sampled in arm L2 before exit
    std::vector<ReadoutEvent> readouts;
};

struct RunOutput {
    ScenarioConfig config;
    std::string report_json;
    std::vector<TrialRecord> trials;
};

/// Run the configured Monte Carlo scenario. Per-trial RNG streams derive
/// from (seed, trial_index), and aggregation is an ordered reduction, so the
/// report is byte-identical for any thread count.
/// Throws ZeroPostselectionError when no trial postselects.
RunOutput run_scenario(const ScenarioConfig &cfg, int threads = 1);

/// Per-arm pointer totals accumulated over the repetitions of each
/// postselected trial (double_mzi only).
struct ShiftTotal {
    std::string label;
    double total_mean;
    double total_standard_error;
    double predicted_total;
    long postselected_trials;
};
std::vector<ShiftTotal> accumulated_shift(const ScenarioConfig &cfg, int threads = 1);

/// Survival-scaling experiment: for each N, set delta = sqrt(N), run N weak
/// couplings per trial with a strong sigma_x verification after every
/// readout, and count trials with zero flips. The verification collapse
/// makes the steps independent, so the analytic no-flip probability is the
/// product (1 - p)^N with p = flip_probability(g0, sqrt(N)).
struct SurvivalRow {
    long n;
    double delta;
    double no_flip_fraction;
    double standard_error;
    double analytic_product;
    double reference_exp_minus_g0_squared;
};
struct SurvivalTable {
    double g0;
    long trials;
    uint64_t seed;
    std::vector<SurvivalRow> rows;

    std::string to_json() const;
    std::string to_text() const;
};
SurvivalTable survival_scaling(double g0, const std::vector<long> &n_values, long trials, uint64_t seed);

/// Lean Monte Carlo flip-rate estimate: `readouts` independent weak
/// measurements of sigma_z on |x+>, each followed by a strong sigma_x
/// verification sample. Returns (rate, standard error).
std::pair<double, double> flip_rate_experiment(double g0, double delta, long readouts, uint64_t seed);

/// CSV with one row per trial: trial_index, postselected, q0 list
/// (semicolon separated, readout order).
std::string trials_to_csv(const RunOutput &out);

/// Exact-identity suite behind `absim check`: lattice commutator sweep,
/// kicked-qubit Heisenberg rotation, translation-vs-exponential consistency
/// and network unitarity. Returns a human-readable report; `ok` reflects
/// every check passing.
struct CheckResult {
    bool ok;
    std::string text;
};
CheckResult run_exact_checks();

}  // namespace absim
