#include "absim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "absim/interferometer.hpp"
#include "absim/modular.hpp"
#include "absim/pointer.hpp"
#include "absim/report.hpp"
#include "absim/tsvf.hpp"

namespace absim {

namespace {

struct ObservableSpec {
    std::string label;
    LinOp op;
    EigenSystem basis;
    bool weak_defined = false;
    cdouble weak = 0.0;
    bool exact_defined = false;
    double predicted_mean_exact = 0.0;
};

// Everything precomputed once per run; trials only touch const data.
struct ScenarioContext {
    Ket initial;    // system state at the measurement cut
    LinOp u_rest;   // cut -> selection basis
    Ket post_vec;   // postselection vector at the end
    std::vector<ObservableSpec> observables;
    std::string geometry;
    double rate_zero_coupling = 0.0;
    double rate_with_backaction = 0.0;
    bool has_forbidden_arm = false;     // double_mzi
    LinOp u_to_mid2;                    // cut -> mid2 (forbidden-arm check)
    double forbidden_arm_analytic = 0.0;
    double kicked_minus_probability = 0.0;  // kicked_qubit
};

double clamp01(double p) {
    return std::min(1.0, std::max(0.0, p));
}

bool sample_event(double probability, RngStream &rng) {
    return rng.uniform() < clamp01(probability);
}

// Closed-form statistics of the chained diagonal couplings. Every built-in
// scenario couples operators that are diagonal in the preparation basis, so
// the joint system+pointers state keeps the exact product form
//   sum_b c_b |b> prod_k Phi(q_k - shift_k(b)).
// `slot_shifts[k][b]` is the pointer-k Gaussian center on branch b.
struct DiagonalChain {
    std::vector<cdouble> branch_amp;               // c_b
    std::vector<std::vector<double>> slot_shifts;  // [slot][branch]
    double delta;
};

// Pairwise decoherence kernel K_ij = prod_k exp(-(s_k(i)-s_k(j))^2 / 8 d^2).
std::vector<std::vector<double>> chain_kernel(const DiagonalChain &chain) {
    const size_t nb = chain.branch_amp.size();
    std::vector<std::vector<double>> k(nb, std::vector<double>(nb, 1.0));
    for (const auto &shifts : chain.slot_shifts) {
        for (size_t i = 0; i < nb; ++i) {
            for (size_t j = 0; j < nb; ++j) {
                k[i][j] *= gaussian_overlap(shifts[i], shifts[j], chain.delta);
            }
        }
    }
    return k;
}

double chain_select_probability(const DiagonalChain &chain, const std::vector<cdouble> &post_amp) {
    const size_t nb = chain.branch_amp.size();
    const auto k = chain_kernel(chain);
    double p = 0.0;
    for (size_t i = 0; i < nb; ++i) {
        for (size_t j = 0; j < nb; ++j) {
            const cdouble wi = chain.branch_amp[i] * std::conj(post_amp[i]);
            const cdouble wj = chain.branch_amp[j] * std::conj(post_amp[j]);
            p += (std::conj(wi) * wj).real() * k[i][j];
        }
    }
    return p;
}

// E[q_slot | postselection], exact for the product-form chain.
bool chain_conditional_mean(const DiagonalChain &chain, const std::vector<cdouble> &post_amp, size_t slot,
                            double &mean_out) {
    const size_t nb = chain.branch_amp.size();
    const auto k = chain_kernel(chain);
    double num = 0.0;
    double den = 0.0;
    for (size_t i = 0; i < nb; ++i) {
        for (size_t j = 0; j < nb; ++j) {
            const cdouble wi = chain.branch_amp[i] * std::conj(post_amp[i]);
            const cdouble wj = chain.branch_amp[j] * std::conj(post_amp[j]);
            const double cross = (std::conj(wi) * wj).real() * k[i][j];
            den += cross;
            num += cross * 0.5 * (chain.slot_shifts[slot][i] + chain.slot_shifts[slot][j]);
        }
    }
    if (den <= 1e-20) {
        return false;
    }
    mean_out = num / den;
    return true;
}

Ket postselect_vector_double_well(const std::string &label) {
    if (label == "L") {
        return ket_L();
    }
    if (label == "R") {
        return ket_R();
    }
    if (label == "x+") {
        return ket_x_plus();
    }
    return ket_x_minus();
}

// Builds the diagonal-chain description used for the analytic columns.
DiagonalChain make_chain(const ScenarioContext &ctx, const ScenarioConfig &cfg) {
    DiagonalChain chain;
    chain.delta = cfg.delta;
    chain.branch_amp = ctx.initial.amps;
    const long reps = cfg.repetitions_per_trial;
    for (long r = 0; r < reps; ++r) {
        for (const auto &obs : ctx.observables) {
            std::vector<double> shifts(chain.branch_amp.size());
            for (size_t b = 0; b < shifts.size(); ++b) {
                shifts[b] = cfg.g0 * obs.op.at(static_cast<int>(b), static_cast<int>(b)).real();
            }
            chain.slot_shifts.push_back(std::move(shifts));
        }
    }
    return chain;
}

std::vector<cdouble> back_projected_amplitudes(const ScenarioContext &ctx) {
    // <post| U_rest |b> for each basis branch b.
    const Ket back = apply(adjoint(ctx.u_rest), ctx.post_vec);
    std::vector<cdouble> amp(back.amps.size());
    for (size_t b = 0; b < amp.size(); ++b) {
        amp[b] = back.amps[b];
    }
    return amp;
}

ScenarioContext build_context(const ScenarioConfig &cfg) {
    ScenarioContext ctx;
    switch (cfg.scenario) {
        case Scenario::DoubleWell: {
            ctx.initial = ket_x_plus();
            ctx.u_rest = identity_op(2);
            ctx.post_vec = postselect_vector_double_well(cfg.postselect);
            ObservableSpec obs;
            obs.label = "sigma_z";
            obs.op = pauli_z();
            obs.basis = eigh(obs.op);
            ctx.observables.push_back(std::move(obs));
            break;
        }
        case Scenario::SingleMzi:
        case Scenario::DoubleMzi: {
            const Network net = cfg.scenario == Scenario::SingleMzi ? build_single_mzi(cfg.flux)
                                                                    : build_double_mzi(cfg.flux);
            ctx.geometry = net.describe();
            ctx.initial = apply(net.transfer("source", cfg.cut), standard_input());
            ctx.u_rest = net.transfer(cfg.cut, "output");
            ctx.post_vec = net.rail_of(cfg.postselect) == 0 ? ket_L() : ket_R();
            const std::string left = cfg.cut == "mid2" ? "L2" : "L1";
            const std::string right = cfg.cut == "mid2" ? "R2" : "R1";
            for (const std::string &label : {left, right}) {
                ObservableSpec obs;
                obs.label = label;
                obs.op = arm_projector(net, label);
                obs.basis = eigh(obs.op);
                ctx.observables.push_back(std::move(obs));
            }
            if (cfg.scenario == Scenario::DoubleMzi) {
                ctx.has_forbidden_arm = true;
                ctx.u_to_mid2 = cfg.cut == "mid2" ? identity_op(2) : net.transfer("mid1", "mid2");
            }
            break;
        }
        case Scenario::KickedQubit: {
            ctx.initial = apply(kicked_qubit_evolution(cfg.v0), ket_x_plus());
            ctx.u_rest = identity_op(2);
            ctx.post_vec = ket_x_plus();  // unused for selection
            ctx.kicked_minus_probability = std::norm(inner(ket_x_minus(), ctx.initial));
            return ctx;
        }
        case Scenario::LatticeCheck:
            return ctx;
    }

    // Analytic columns shared by the pointer scenarios.
    ctx.rate_zero_coupling = postselect_probability(ctx.initial, ctx.u_rest, ctx.post_vec);
    const DiagonalChain chain = make_chain(ctx, cfg);
    const std::vector<cdouble> post_amp = back_projected_amplitudes(ctx);
    ctx.rate_with_backaction = clamp01(chain_select_probability(chain, post_amp));

    const TwoStateVector tsv =
        tsv_from_states(ctx.initial, apply(adjoint(ctx.u_rest), ctx.post_vec));
    for (size_t o = 0; o < ctx.observables.size(); ++o) {
        auto &obs = ctx.observables[o];
        if (std::abs(tsv.overlap) > kOverlapEpsilon) {
            obs.weak_defined = true;
            obs.weak = weak_value(tsv, obs.op);
        }
        if (cfg.repetitions_per_trial > 0) {
            double mean = 0.0;
            if (chain_conditional_mean(chain, post_amp, o, mean)) {
                obs.exact_defined = true;
                obs.predicted_mean_exact = mean;
            }
        }
    }

    if (ctx.has_forbidden_arm) {
        // P(found in L2 after the chain), exact for the product form.
        std::vector<cdouble> l2_amp(2);
        for (int b = 0; b < 2; ++b) {
            l2_amp[b] = std::conj(ctx.u_to_mid2.at(0, b));
        }
        ctx.forbidden_arm_analytic = clamp01(chain_select_probability(chain, l2_amp));
    }
    return ctx;
}

void run_pointer_trial(const ScenarioConfig &cfg, const ScenarioContext &ctx, uint64_t trial_index,
                       TrialRecord &rec) {
    RngStream rng = derive_stream(cfg.seed, trial_index);
    Ket state = ctx.initial;
    const GaussianPointer ptr(cfg.delta);
    const Ket xm = ket_x_minus();

    rec.readouts.reserve(static_cast<size_t>(cfg.repetitions_per_trial) * ctx.observables.size());
    for (long rep = 0; rep < cfg.repetitions_per_trial; ++rep) {
        for (size_t o = 0; o < ctx.observables.size(); ++o) {
            const PointerCoupledState coupled =
                couple_with_basis(state, ctx.observables[o].basis, cfg.g0, ptr);
            const ReadoutRecord r = readout(coupled, rng);
            state = r.post_system;
            ReadoutEvent ev;
            ev.observable = static_cast<int>(o);
            ev.q0 = r.q0;
            ev.sign_flip = r.flipped;
            ev.born_flip = false;
            if (cfg.scenario == Scenario::DoubleWell) {
                ev.born_flip = sample_event(std::norm(inner(xm, state)), rng);
            }
            rec.readouts.push_back(ev);
        }
    }

    if (ctx.has_forbidden_arm) {
        const Ket at_mid2 = apply(ctx.u_to_mid2, state);
        rec.forbidden_arm = sample_event(std::norm(at_mid2.amps[0]), rng);
    }

    const Ket final_state = apply(ctx.u_rest, state);
    rec.postselected = sample_event(std::norm(inner(ctx.post_vec, final_state)), rng);
}

void run_kicked_trial(const ScenarioConfig &cfg, const ScenarioContext &ctx, uint64_t trial_index,
                      TrialRecord &rec) {
    RngStream rng = derive_stream(cfg.seed, trial_index);
    rec.outcome = sample_event(ctx.kicked_minus_probability, rng) ? -1 : +1;
    rec.postselected = true;
}

struct MeanVar {
    long count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double x) {
        ++count;
        sum += x;
        sum_sq += x * x;
    }
    double mean() const {
        return count > 0 ? sum / count : 0.0;
    }
    double standard_error() const {
        if (count < 2) {
            return 0.0;
        }
        const double m = mean();
        double var = (sum_sq - sum * m) / (count - 1);
        var = std::max(var, 0.0);
        return std::sqrt(var / count);
    }
};

double rate_standard_error(double rate, long n) {
    return n > 0 ? std::sqrt(std::max(rate * (1.0 - rate), 0.0) / n) : 0.0;
}

bool section_wanted(const ScenarioConfig &cfg, const std::string &name) {
    if (cfg.outputs.empty()) {
        return true;
    }
    return std::find(cfg.outputs.begin(), cfg.outputs.end(), name) != cfg.outputs.end();
}

void write_config_echo(JsonWriter &w, const ScenarioConfig &cfg, const std::string &geometry) {
    w.key("config").begin_object();
    w.key("scenario").value(scenario_name(cfg.scenario));
    w.key("g0").value(cfg.g0);
    w.key("delta").value(cfg.delta);
    w.key("flux").value(cfg.flux);
    w.key("v0").value(cfg.v0);
    w.key("trials").value(cfg.trials);
    w.key("repetitions_per_trial").value(cfg.repetitions_per_trial);
    w.key("seed").value(cfg.seed);
    w.key("postselect").value(cfg.postselect);
    w.key("cut").value(cfg.cut);
    w.key("outputs").begin_array();
    for (const auto &o : cfg.outputs) {
        w.value(o);
    }
    w.end_array();
    if (!geometry.empty()) {
        w.key("geometry").value(geometry);
    }
    w.end_object();
}

std::string lattice_check_report(const ScenarioConfig &cfg) {
    // Fixed sweep: 50 random potentials cycling d in {8, 32, 128} and
    // steps in {1, d/4, d/2}; seeded, independent of `trials`.
    const int d_list[3] = {8, 32, 128};
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int d = d_list[i % 3];
        const int steps_choice[3] = {1, d / 4, d / 2};
        const int steps = steps_choice[(i / 3) % 3];
        RngStream rng = derive_stream(cfg.seed, static_cast<uint64_t>(i));
        LatticePotential v;
        v.values.resize(d);
        for (auto &x : v.values) {
            x = 2.0 * rng.uniform() - 1.0;
        }
        const CyclicLattice lat(d, 1.0, 1.0);
        worst = std::max(worst, modular_commutator_check(lat, v, steps));
    }

    JsonWriter w;
    w.begin_object();
    write_config_echo(w, cfg, "");
    if (section_wanted(cfg, "lattice")) {
        w.key("lattice").begin_object();
        w.key("potentials").value(50);
        w.key("max_deviation").value(worst);
        w.key("tolerance").value(1e-10);
        w.key("pass").value(worst <= 1e-10);
        w.end_object();
    }
    w.end_object();
    return w.str();
}

}  // namespace

RunOutput run_scenario(const ScenarioConfig &cfg_in, int threads) {
    ScenarioConfig cfg = cfg_in;
    validate_config(cfg);
    if (threads < 1) {
        threads = 1;
    }

    RunOutput out;
    out.config = cfg;

    if (cfg.scenario == Scenario::LatticeCheck) {
        out.report_json = lattice_check_report(cfg);
        return out;
    }

    const ScenarioContext ctx = build_context(cfg);
    out.trials.resize(static_cast<size_t>(cfg.trials));

    auto worker = [&](long begin, long end) {
        for (long t = begin; t < end; ++t) {
            if (cfg.scenario == Scenario::KickedQubit) {
                run_kicked_trial(cfg, ctx, static_cast<uint64_t>(t), out.trials[t]);
            } else {
                run_pointer_trial(cfg, ctx, static_cast<uint64_t>(t), out.trials[t]);
            }
        }
    };
    if (threads == 1 || cfg.trials < 2 * threads) {
        worker(0, cfg.trials);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (cfg.trials + threads - 1) / threads;
        for (int i = 0; i < threads; ++i) {
            const long b = i * chunk;
            const long e = std::min<long>(cfg.trials, b + chunk);
            if (b < e) {
                pool.emplace_back(worker, b, e);
            }
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    // Ordered reduction; identical bytes for every thread count.
    long selected = 0;
    long minus_outcomes = 0;
    long sign_flips = 0;
    long born_flips = 0;
    long readout_count = 0;
    long trials_without_born_flip = 0;
    long forbidden_count = 0;
    std::vector<MeanVar> pooled(ctx.observables.size());
    std::vector<MeanVar> totals(ctx.observables.size());
    for (long t = 0; t < cfg.trials; ++t) {
        const TrialRecord &rec = out.trials[t];
        if (rec.outcome == -1) {
            ++minus_outcomes;
        }
        readout_count += static_cast<long>(rec.readouts.size());
        long born_in_trial = 0;
        for (const auto &ev : rec.readouts) {
            if (ev.sign_flip) {
                ++sign_flips;
            }
            if (ev.born_flip) {
                ++born_flips;
                ++born_in_trial;
            }
        }
        if (born_in_trial == 0) {
            ++trials_without_born_flip;
        }
        if (rec.forbidden_arm) {
            ++forbidden_count;
        }
        if (!rec.postselected) {
            continue;
        }
        ++selected;
        std::vector<double> trial_total(ctx.observables.size(), 0.0);
        for (const auto &ev : rec.readouts) {
            pooled[ev.observable].add(ev.q0);
            trial_total[ev.observable] += ev.q0;
        }
        for (size_t o = 0; o < totals.size(); ++o) {
            totals[o].add(trial_total[o]);
        }
    }

    if (cfg.scenario != Scenario::KickedQubit && selected == 0) {
        throw ZeroPostselectionError("run_scenario: no trial postselected (analytic rate " +
                                     JsonWriter::format_double(ctx.rate_with_backaction) + ")");
    }

    JsonWriter w;
    w.begin_object();
    write_config_echo(w, cfg, ctx.geometry);

    if (cfg.scenario == Scenario::KickedQubit) {
        if (section_wanted(cfg, "outcomes")) {
            const double rate = static_cast<double>(minus_outcomes) / cfg.trials;
            w.key("outcomes").begin_object();
            w.key("trials").value(cfg.trials);
            w.key("sigma_x_minus_count").value(minus_outcomes);
            w.key("sigma_x_minus_rate").value(rate);
            w.key("sigma_x_minus_rate_standard_error").value(rate_standard_error(rate, cfg.trials));
            w.key("analytic_minus_probability").value(ctx.kicked_minus_probability);
            w.end_object();
        }
        w.end_object();
        out.report_json = w.str();
        return out;
    }

    if (section_wanted(cfg, "postselection")) {
        const double rate = static_cast<double>(selected) / cfg.trials;
        w.key("postselection").begin_object();
        w.key("trials").value(cfg.trials);
        w.key("selected").value(selected);
        w.key("rate").value(rate);
        w.key("standard_error").value(rate_standard_error(rate, cfg.trials));
        w.key("analytic_zero_coupling").value(ctx.rate_zero_coupling);
        w.key("analytic_with_backaction").value(ctx.rate_with_backaction);
        w.end_object();
    }

    if (section_wanted(cfg, "observables")) {
        w.key("observables").begin_array();
        for (size_t o = 0; o < ctx.observables.size(); ++o) {
            const auto &obs = ctx.observables[o];
            w.begin_object();
            w.key("cut").value(cfg.cut);
            w.key("label").value(obs.label);
            if (obs.weak_defined) {
                w.key("weak_value_re").value(obs.weak.real());
                w.key("weak_value_im").value(obs.weak.imag());
                w.key("predicted_mean_first_order").value(cfg.g0 * obs.weak.real());
            } else {
                w.key("weak_value_re").null_value();
                w.key("weak_value_im").null_value();
                w.key("predicted_mean_first_order").null_value();
            }
            if (obs.exact_defined) {
                w.key("predicted_mean_exact").value(obs.predicted_mean_exact);
                w.key("predicted_total_per_trial")
                    .value(obs.predicted_mean_exact * static_cast<double>(cfg.repetitions_per_trial));
            } else {
                w.key("predicted_mean_exact").null_value();
                w.key("predicted_total_per_trial").null_value();
            }
            w.key("readout_count").value(pooled[o].count);
            w.key("mean").value(pooled[o].mean());
            w.key("standard_error").value(pooled[o].standard_error());
            w.key("total_per_trial_mean").value(totals[o].mean());
            w.key("total_per_trial_standard_error").value(totals[o].standard_error());
            w.end_object();
        }
        w.end_array();
    }

    if (section_wanted(cfg, "flips")) {
        w.key("flips").begin_object();
        w.key("readouts").value(readout_count);
        w.key("sign_flips").value(sign_flips);
        w.key("sign_flip_rate")
            .value(readout_count > 0 ? static_cast<double>(sign_flips) / readout_count : 0.0);
        if (cfg.scenario == Scenario::DoubleWell) {
            const double rate = readout_count > 0 ? static_cast<double>(born_flips) / readout_count : 0.0;
            const double no_flip = static_cast<double>(trials_without_born_flip) / cfg.trials;
            w.key("verified_flips").value(born_flips);
            w.key("verified_flip_rate").value(rate);
            w.key("verified_flip_rate_standard_error").value(rate_standard_error(rate, readout_count));
            w.key("trials_without_verified_flip").value(trials_without_born_flip);
            w.key("no_flip_fraction").value(no_flip);
            w.key("no_flip_fraction_standard_error").value(rate_standard_error(no_flip, cfg.trials));
            w.key("analytic_flip_probability").value(flip_probability(cfg.g0, cfg.delta));
            w.key("no_flip_survival_reference").value(std::exp(-cfg.g0 * cfg.g0));
        }
        if (ctx.has_forbidden_arm) {
            const double rate = static_cast<double>(forbidden_count) / cfg.trials;
            w.key("forbidden_arm_samples").value(cfg.trials);
            w.key("forbidden_arm_count").value(forbidden_count);
            w.key("forbidden_arm_rate").value(rate);
            w.key("forbidden_arm_rate_standard_error").value(rate_standard_error(rate, cfg.trials));
            w.key("forbidden_arm_probability_analytic").value(ctx.forbidden_arm_analytic);
        }
        w.end_object();
    }

    w.end_object();
    out.report_json = w.str();
    return out;
}

std::vector<ShiftTotal> accumulated_shift(const ScenarioConfig &cfg_in, int threads) {
    ScenarioConfig cfg = cfg_in;
    validate_config(cfg);
    if (cfg.scenario != Scenario::DoubleMzi) {
        throw ConfigError("scenario", "accumulated_shift requires scenario=double_mzi");
    }

    const ScenarioContext ctx = build_context(cfg);
    const RunOutput out = run_scenario(cfg, threads);

    std::vector<MeanVar> totals(ctx.observables.size());
    for (const auto &rec : out.trials) {
        if (!rec.postselected) {
            continue;
        }
        std::vector<double> trial_total(ctx.observables.size(), 0.0);
        for (const auto &ev : rec.readouts) {
            trial_total[ev.observable] += ev.q0;
        }
        for (size_t o = 0; o < totals.size(); ++o) {
            totals[o].add(trial_total[o]);
        }
    }

    std::vector<ShiftTotal> result;
    for (size_t o = 0; o < ctx.observables.size(); ++o) {
        ShiftTotal st;
        st.label = ctx.observables[o].label;
        st.total_mean = totals[o].mean();
        st.total_standard_error = totals[o].standard_error();
        st.predicted_total = ctx.observables[o].exact_defined
                                 ? ctx.observables[o].predicted_mean_exact *
                                       static_cast<double>(cfg.repetitions_per_trial)
                                 : 0.0;
        st.postselected_trials = totals[o].count;
        result.push_back(std::move(st));
    }
    return result;
}

SurvivalTable survival_scaling(double g0, const std::vector<long> &n_values, long trials, uint64_t seed) {
    if (!(g0 >= 0.0) || g0 > 1.0) {
        throw ConfigError("g0", "survival_scaling expects 0 <= g0 <= 1");
    }
    if (n_values.empty()) {
        throw ConfigError("n", "need at least one ensemble size");
    }
    for (size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1 || (i > 0 && n_values[i] <= n_values[i - 1])) {
            throw ConfigError("n", "ensemble sizes must be positive and ascending");
        }
    }
    if (trials < 1) {
        throw ConfigError("trials", "must be >= 1");
    }

    SurvivalTable table;
    table.g0 = g0;
    table.trials = trials;
    table.seed = seed;

    const Ket xm = ket_x_minus();
    for (const long n : n_values) {
        const double delta = std::sqrt(static_cast<double>(n));
        const GaussianPointer ptr(delta);
        const PointerCoupledState coupled = couple(ket_x_plus(), pauli_z(), g0, ptr);
        const double p_step = flip_probability(g0, delta);
        const uint64_t row_seed = splitmix64(seed ^ splitmix64(static_cast<uint64_t>(n)));

        long survivors = 0;
        for (long t = 0; t < trials; ++t) {
            RngStream rng = derive_stream(row_seed, static_cast<uint64_t>(t));
            bool flipped = false;
            for (long k = 0; k < n; ++k) {
                const ReadoutRecord rec = readout(coupled, rng);
                // Strong sigma_x verification; on survival the state
                // collapses back to |x+>, so steps are independent.
                if (sample_event(std::norm(inner(xm, rec.post_system)), rng)) {
                    flipped = true;
                    break;
                }
            }
            if (!flipped) {
                ++survivors;
            }
        }

        SurvivalRow row;
        row.n = n;
        row.delta = delta;
        row.no_flip_fraction = static_cast<double>(survivors) / trials;
        row.standard_error = rate_standard_error(row.no_flip_fraction, trials);
        row.analytic_product = std::pow(1.0 - p_step, static_cast<double>(n));
        row.reference_exp_minus_g0_squared = std::exp(-g0 * g0);
        table.rows.push_back(row);
    }
    return table;
}

std::string SurvivalTable::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("g0").value(g0);
    w.key("trials").value(trials);
    w.key("seed").value(seed);
    w.key("rows").begin_array();
    for (const auto &r : rows) {
        w.begin_object();
        w.key("n").value(r.n);
        w.key("delta").value(r.delta);
        w.key("no_flip_fraction").value(r.no_flip_fraction);
        w.key("standard_error").value(r.standard_error);
        w.key("analytic_product").value(r.analytic_product);
        w.key("reference_exp_minus_g0_squared").value(r.reference_exp_minus_g0_squared);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string SurvivalTable::to_text() const {
    std::ostringstream os;
    os << "N\tdelta\tempirical_no_flip\tstd_err\tanalytic_product\texp(-g0^2)\n";
    for (const auto &r : rows) {
        os << r.n << '\t' << JsonWriter::format_double(r.delta) << '\t'
           << JsonWriter::format_double(r.no_flip_fraction) << '\t'
           << JsonWriter::format_double(r.standard_error) << '\t'
           << JsonWriter::format_double(r.analytic_product) << '\t'
           << JsonWriter::format_double(r.reference_exp_minus_g0_squared) << '\n';
    }
    return os.str();
}

std::pair<double, double> flip_rate_experiment(double g0, double delta, long readouts, uint64_t seed) {
    if (readouts < 1) {
        throw ConfigError("readouts", "must be >= 1");
    }
    const GaussianPointer ptr(delta);
    const PointerCoupledState coupled = couple(ket_x_plus(), pauli_z(), g0, ptr);
    const Ket xm = ket_x_minus();
    RngStream rng = derive_stream(seed, 0);
    long flips = 0;
    for (long r = 0; r < readouts; ++r) {
        const ReadoutRecord rec = readout(coupled, rng);
        if (sample_event(std::norm(inner(xm, rec.post_system)), rng)) {
            ++flips;
        }
    }
    const double rate = static_cast<double>(flips) / readouts;
    return {rate, rate_standard_error(rate, readouts)};
}

std::string trials_to_csv(const RunOutput &out) {
    std::string csv = "trial_index,postselected,q0_list\n";
    for (size_t t = 0; t < out.trials.size(); ++t) {
        csv += std::to_string(t);
        csv += ',';
        csv += out.trials[t].postselected ? '1' : '0';
        csv += ',';
        bool first = true;
        for (const auto &ev : out.trials[t].readouts) {
            if (!first) {
                csv += ';';
            }
            first = false;
            csv += JsonWriter::format_double(ev.q0);
        }
        csv += '\n';
    }
    return csv;
}

CheckResult run_exact_checks() {
    std::ostringstream os;
    bool ok = true;
    auto check = [&](const std::string &name, double deviation, double tol) {
        const bool pass = deviation <= tol;
        ok = ok && pass;
        os << (pass ? "[PASS] " : "[FAIL] ") << name << "  (deviation " << deviation << ", tolerance "
           << tol << ")\n";
    };

    // Lattice translation identity on random potentials.
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int d_list[3] = {8, 32, 128};
        const int d = d_list[i % 3];
        const int steps_choice[3] = {1, d / 4, d / 2};
        RngStream rng = derive_stream(12345, static_cast<uint64_t>(i));
        LatticePotential v;
        v.values.resize(d);
        for (auto &x : v.values) {
            x = 2.0 * rng.uniform() - 1.0;
        }
        worst = std::max(worst, modular_commutator_check(CyclicLattice(d, 1.0, 1.0), v,
                                                         steps_choice[(i / 3) % 3]));
    }
    check("lattice commutator identity (50 random potentials)", worst, 1e-10);

    // Translation equals the exponential of the lattice momentum.
    {
        const CyclicLattice lat(16, 0.5, 1.0);
        double dev = 0.0;
        for (int steps : {1, 4, 8}) {
            const LinOp t = translation_op(lat, steps);
            const LinOp expo =
                matrix_exponential(momentum_op(lat), cdouble(0.0, steps * lat.spacing));
            dev = std::max(dev, max_abs_diff(t, expo));
        }
        check("translation = exp(i P l) on the lattice", dev, 1e-10);
    }

    // Kicked qubit Heisenberg rotation.
    {
        double dev = 0.0;
        for (double v0 : {0.0, 0.25 * 3.14159265358979323846, 0.5 * 3.14159265358979323846,
                          3.14159265358979323846}) {
            const LinOp u = kicked_qubit_evolution(v0);
            const LinOp rotated = matmul(matmul(adjoint(u), pauli_x()), u);
            const LinOp expected =
                add(scale(pauli_x(), std::cos(v0)), scale(pauli_y(), std::sin(v0)));
            dev = std::max(dev, max_abs_diff(rotated, expected));
            dev = std::max(dev, max_abs_diff(matmul(matmul(adjoint(u), pauli_z()), u), pauli_z()));
        }
        check("kicked qubit U^dag sigma_x U rotation", dev, 1e-12);
    }

    // Network unitarity across flux values.
    {
        double dev = 0.0;
        for (double flux : {0.0, 1.0, 3.14159265358979323846}) {
            for (const Network &net : {build_single_mzi(flux), build_double_mzi(flux)}) {
                const LinOp u = net.end_to_end();
                dev = std::max(dev, max_abs_diff(matmul(u, adjoint(u)), identity_op(2)));
            }
        }
        check("interferometer end-to-end unitarity", dev, 1e-12);
    }

    CheckResult res;
    res.ok = ok;
    res.text = os.str();
    return res;
}

}  // namespace absim
