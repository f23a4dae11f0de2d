#include "qaae/driver.hpp"

#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "qaae/amplifier.hpp"
#include "qaae/errors.hpp"
#include "qaae/util.hpp"

namespace qaae {

namespace {

AnsatzSpec ansatz_from_config(const RunConfig& cfg, int num_qubits) {
    AnsatzSpec a;
    a.family = cfg.family;
    a.num_qubits = num_qubits;
    a.layers = cfg.layers;
    a.axes = cfg.axes;
    a.cnot_entangler = cfg.cnot_entangler;
    if (cfg.family == AnsatzFamily::Oracle) {
        if (cfg.oracle_init) {
            a.oracle_state = cfg.oracle_init;
        } else {
            a.oracle_state = std::make_shared<StateVector>(zero_state(num_qubits));
        }
    }
    return a;
}

// Full gate-level round: trial preparation, then inverse evolution,
// reflection, evolution, reflection.
Circuit compile_round_circuit(const AnsatzSpec& a, const Circuit& evolution) {
    const Circuit prep = build_circuit(a);
    const int q = a.num_qubits;

    Circuit round;
    round.num_qubits = q + 1;
    round.num_params = prep.num_params;
    round.add(make_gate(GateKind::H, {q}));
    for (const Gate& g : prep.gates) round.add(g);

    const Circuit refl = reflection_circuit(a);
    const Circuit ev_inv = inverse_circuit(evolution);
    for (const Gate& g : ev_inv.gates) round.add(g);
    for (const Gate& g : refl.gates) round.add(g);
    for (const Gate& g : evolution.gates) round.add(g);
    for (const Gate& g : refl.gates) round.add(g);
    return round;
}

int effective_nmax(const RunConfig& cfg, int round) {
    if (cfg.nmax_switch_round > 0 && round > cfg.nmax_switch_round &&
        cfg.nmax_late > 0)
        return cfg.nmax_late;
    return cfg.learn.n_max;
}

double sample_sd(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / (xs.size() - 1));
}

const char* model_name(ModelKind m) {
    switch (m) {
        case ModelKind::TwoLevel: return "two-level";
        case ModelKind::Ltfim: return "ltfim";
        case ModelKind::File: return "file";
    }
    return "?";
}

const char* family_name(AnsatzFamily f) {
    switch (f) {
        case AnsatzFamily::Single: return "single";
        case AnsatzFamily::HardwareEfficient: return "he";
        case AnsatzFamily::SuD: return "sud";
        case AnsatzFamily::Oracle: return "oracle";
    }
    return "?";
}

} // namespace

PauliHamiltonian build_model(const RunConfig& cfg) {
    PauliHamiltonian raw;
    switch (cfg.model) {
        case ModelKind::TwoLevel:
            raw = build_two_level(cfg.alpha, cfg.r);
            break;
        case ModelKind::Ltfim:
            raw = build_ltfim(cfg.n, cfg.g, cfg.h);
            break;
        case ModelKind::File:
            raw = parse_pauli_file(cfg.path);
            break;
    }
    switch (cfg.norm_mode) {
        case NormMode::Window:
            return normalize_affine(raw, cfg.norm_lo, cfg.norm_hi);
        case NormMode::FixedLtfim:
            return apply_affine(raw, 1.0 / 40.0, 0.5);
    }
    throw ConfigError("build_model: unknown normalization mode");
}

RunResult run_qaae(const RunConfig& cfg) {
    if (cfg.max_rounds < 1) throw ConfigError("run_qaae: max_rounds must be positive");
    if (!(cfg.eps_h > 0.0)) throw ConfigError("run_qaae: eps_h must be positive");
    if (cfg.shots < 0) throw ConfigError("run_qaae: negative shot count");
    if (cfg.shots > 0 && cfg.family != AnsatzFamily::Single)
        throw ConfigError("run_qaae: shot noise is confined to the one-qubit path");

    const PauliHamiltonian h = build_model(cfg);
    const int q = h.num_qubits;
    AnsatzSpec a = ansatz_from_config(cfg, q);

    RunResult res;
    res.seed = cfg.seed;
    res.norm = h.norm.value_or(NormRecord{});

    std::shared_ptr<const Spectrum> spec;
    if (q <= kMaxDenseQubits) {
        spec = std::make_shared<Spectrum>(spectrum(h));
        res.diagnostics = true;
        res.lambda0_norm = spec->values(0);
        res.lambda0_phys = (res.lambda0_norm - res.norm.b) / res.norm.a;
    }

    EvolutionOp evo;
    int depth_round = 0;
    const double omega = cfg.evolution.omega;
    if (cfg.evolution.backend == EvolutionBackend::Exact) {
        if (!spec)
            throw CapabilityError("run_qaae: exact backend needs the dense oracle");
        evo = make_exact_evolution(spec, omega, q);
    } else {
        EvolutionConfig ec = cfg.evolution;
        if (ec.target_eps) ec.steps = choose_trotter_steps(h, ec, *ec.target_eps);
        evo = make_trotter_evolution(h, ec);
        if (has_gate_form(a))
            depth_round = circuit_depth(compile_round_circuit(a, *evo.circuit));
    }

    if (res.diagnostics && spec->levels() > 1) {
        const double c0 = std::cos(M_PI / 4 - omega * spec->values(0));
        const double c1 = std::cos(M_PI / 4 - omega * spec->values(1));
        if (spec->values(1) - spec->values(0) > 1e-12)
            res.c_star = 4.0 * c0 * (4.0 * c0 * c0 - 1.0) * (c1 - c0);
    }

    Params theta;
    if (a.family != AnsatzFamily::Oracle) {
        theta = cfg.theta_init ? *cfg.theta_init : random_init(a, cfg.seed);
        if (static_cast<int>(theta.size()) != num_params(a))
            throw ConfigError("run_qaae: theta_init size mismatch");
    }

    CounterRng rng_anc(cfg.seed, rng_stream::kAncilla);
    CounterRng rng_shots(cfg.seed, rng_stream::kShots);
    MeasurePolicy policy{cfg.k_policy, &rng_anc};

    StateVector trial_next = prepare_trial(a, theta);
    double e_prev = expectation(h, trial_next);
    res.prep_count += 1;
    res.final_fidelity = spec ? ground_overlap(trial_next, *spec) : 0.0;
    res.final_energy_norm = e_prev;
    res.final_energy_phys = (e_prev - res.norm.b) / res.norm.a;

    std::optional<StateVector> prev_out;
    const bool exact_backend = cfg.evolution.backend == EvolutionBackend::Exact;

    for (int round = 1; round <= cfg.max_rounds; ++round) {
        const StateVector trial = prepare_trial(a, theta);
        res.prep_count += 1;

        RoundRecord rec;
        rec.round = round;
        rec.depth_round = depth_round;

        bool diag_valid = false;
        if (spec) {
            RoundDiagnostics diag = round_diagnostics(trial, *spec, omega);
            rec.gamma_before = diag.gamma_sq[0];
            rec.delta_predicted = diag.delta_predicted;
            diag_valid = diag.valid;
        }

        RoundOutput out = amplify_round_state(trial, evo, policy);
        rec.k = out.k;
        rec.p_k = out.p_k;
        if (exact_backend && std::abs(out.p_k - 0.5) > 1e-9)
            throw NumericError("run_qaae: branch probability drifted from 1/2");
        if (spec) {
            rec.gamma_after = ground_overlap(out.phi_out, *spec);
            rec.delta = rec.gamma_after - rec.gamma_before;
            if (exact_backend && diag_valid &&
                std::abs(rec.delta - rec.delta_predicted) > 1e-9)
                throw NumericError("run_qaae: measured gain deviates from prediction");
        }

        // learn the round output back into the ansatz
        if (a.family == AnsatzFamily::Single) {
            const double angle =
                cfg.shots > 0
                    ? bloch_angle_from_state(out.phi_out, cfg.shots, &rng_shots)
                    : bloch_angle_from_state(out.phi_out);
            theta = {angle};
            res.prep_count += cfg.shots > 0 ? 2L * cfg.shots : 2L;
            trial_next = prepare_trial(a, theta);
            rec.eps_r = trace_distance_pure(trial_next, out.phi_out);
        } else if (a.family == AnsatzFamily::Oracle) {
            a.oracle_state = std::make_shared<StateVector>(out.phi_out);
            trial_next = out.phi_out;
            rec.eps_r = 0.0;
        } else {
            LearnConfig lc = cfg.learn;
            lc.n_max = effective_nmax(cfg, round);
            LearnResult lr = learn_state(a, theta, out.phi_out, lc);
            theta = lr.theta;
            rec.learn_steps = lr.steps;
            rec.eps_r = lr.eps;
            res.prep_count += lr.prep_count;
            trial_next = prepare_trial(a, theta);
        }
        if (spec) learn_deviation(out.phi_out, trial_next, *spec);

        const double e = expectation(h, trial_next);
        res.prep_count += 1;
        rec.energy_norm = e;
        rec.energy_phys = (e - res.norm.b) / res.norm.a;

        bool halt = false;
        if (cfg.halt_mode == HaltMode::Energy) {
            halt = std::abs(e - e_prev) <= cfg.eps_h;
        } else if (prev_out) {
            halt = 1.0 - fidelity(out.phi_out, *prev_out) <= cfg.eps_h;
        }
        rec.halted = halt;
        res.records.push_back(rec);

        res.final_fidelity = spec ? ground_overlap(trial_next, *spec) : 0.0;
        res.final_energy_norm = e;
        res.final_energy_phys = rec.energy_phys;
        e_prev = e;
        prev_out = out.phi_out;
        if (halt) {
            res.halted = true;
            break;
        }
    }
    return res;
}

RecursionReport check_recursion(const RunResult& result) {
    if (!result.diagnostics)
        throw CapabilityError("check_recursion: spectral diagnostics unavailable");
    RecursionReport rep;
    auto audit = [&](const RoundRecord& cur, double g_next) {
        const double g = cur.gamma_before;
        const double guaranteed = result.c_star * g * (1.0 - g);
        ++rep.checked;
        if (g_next < g + guaranteed - cur.eps_r - 1e-9) ++rep.violations;
        if (cur.eps_r >= guaranteed) ++rep.flagged;
    };
    for (std::size_t i = 0; i + 1 < result.records.size(); ++i)
        audit(result.records[i], result.records[i + 1].gamma_before);
    // Final trial closes the last interval.
    if (!result.records.empty())
        audit(result.records.back(), result.final_fidelity);
    return rep;
}

DepthReport depth_report(const RunConfig& cfg) {
    if (cfg.evolution.backend != EvolutionBackend::Trotter)
        throw CapabilityError("depth_report: gate-level backend required");
    const PauliHamiltonian h = build_model(cfg);
    AnsatzSpec a = ansatz_from_config(cfg, h.num_qubits);
    if (!has_gate_form(a))
        throw CapabilityError("depth_report: ansatz has no gate-level form");

    EvolutionConfig ec = cfg.evolution;
    if (ec.target_eps) ec.steps = choose_trotter_steps(h, ec, *ec.target_eps);
    const Circuit u = build_controlled_trotter(h, ec);
    const Circuit prep = build_circuit(a);
    const Circuit refl = reflection_circuit(a);

    DepthReport rep;
    rep.q = h.num_qubits;
    rep.d_ansatz = circuit_depth(prep);
    rep.d_reflection = circuit_depth(refl);
    rep.d_evolution = circuit_depth(u);
    rep.d_round = circuit_depth(compile_round_circuit(a, u));
    const int mc_cost = 2 * (rep.q + 1) - 3;
    rep.bound_ok = rep.d_round <= rep.d_ansatz + 2 * (rep.d_reflection + rep.d_evolution) &&
                   rep.d_reflection <= 2 * rep.d_ansatz + mc_cost + 2;
    return rep;
}

SweepResult run_sweep(const RunConfig& cfg, std::uint64_t seed0, int count) {
    if (count < 1) throw ConfigError("run_sweep: need at least one seed");
    SweepResult sweep;
    sweep.runs.reserve(count);
    for (int i = 0; i < count; ++i) {
        RunConfig rc = cfg;
        rc.seed = seed0 + static_cast<std::uint64_t>(i);
        try {
            sweep.runs.push_back(run_qaae(rc));
        } catch (const std::exception& e) {
            // An aborted seed is logged and excluded from the aggregates.
            sweep.aborts.push_back("seed " + std::to_string(rc.seed) + ": " +
                                   e.what());
        }
    }
    if (sweep.runs.empty()) return sweep;

    int max_rounds = 0;
    for (const auto& r : sweep.runs) max_rounds = std::max(max_rounds, r.rounds());
    const double lambda0 = sweep.runs.front().lambda0_norm;
    const int done = static_cast<int>(sweep.runs.size());

    int successes = 0;
    for (const auto& r : sweep.runs)
        if (r.final_fidelity >= cfg.success_fidelity) ++successes;
    sweep.agg.success_fraction = static_cast<double>(successes) / count;

    for (int j = 0; j < max_rounds; ++j) {
        std::vector<double> errs, fids;
        for (const auto& r : sweep.runs) {
            // Runs that halted earlier hold their final value.
            const int idx = std::min<int>(j, r.rounds() - 1);
            errs.push_back(std::abs(r.records[idx].energy_norm - lambda0));
            const bool has_next = j + 1 < r.rounds();
            fids.push_back(has_next ? r.records[j + 1].gamma_before
                                    : r.final_fidelity);
        }
        double em = 0.0, fm = 0.0;
        for (double v : errs) em += v;
        for (double v : fids) fm += v;
        em /= done;
        fm /= done;
        sweep.agg.energy_err_mean.push_back(em);
        sweep.agg.energy_err_sd.push_back(sample_sd(errs, em));
        sweep.agg.fidelity_mean.push_back(fm);
        sweep.agg.fidelity_sd.push_back(sample_sd(fids, fm));
    }
    return sweep;
}

std::vector<VqeResult> run_vqe_sweep(const RunConfig& cfg, std::uint64_t seed0,
                                     int count, const std::vector<long>& budgets,
                                     const VqeConfig& vqe_cfg) {
    if (count < 1) throw ConfigError("run_vqe_sweep: need at least one seed");
    if (!budgets.empty() && static_cast<int>(budgets.size()) != count)
        throw ConfigError("run_vqe_sweep: budget list does not match seed count");
    const PauliHamiltonian h = build_model(cfg);
    AnsatzSpec a = ansatz_from_config(cfg, h.num_qubits);
    std::vector<VqeResult> runs;
    runs.reserve(count);
    for (int i = 0; i < count; ++i) {
        VqeConfig vc = vqe_cfg;
        vc.seed = seed0 + static_cast<std::uint64_t>(i);
        if (!budgets.empty()) vc.prep_budget = budgets[i];
        runs.push_back(run_vqe(h, a, vc));
    }
    return runs;
}

// --- emission -------------------------------------------------------------

const char* kRunCsvHeader =
    "run_id,seed,round,k,p_k,gamma_before,gamma_after,delta,delta_predicted,"
    "eps_r,energy_norm,energy_phys,learn_steps,halted";

const char* kVqeCsvHeader = "run_id,seed,iter,energy_norm,energy_phys,grad_norm,halted";

void emit_run_csv(std::ostream& os, const RunResult& result, int run_id,
                  bool with_header) {
    if (with_header) os << kRunCsvHeader << "\n";
    for (const auto& r : result.records) {
        os << run_id << ',' << result.seed << ',' << r.round << ',' << r.k << ','
           << format_real17(r.p_k) << ',' << format_real17(r.gamma_before) << ','
           << format_real17(r.gamma_after) << ',' << format_real17(r.delta) << ','
           << format_real17(r.delta_predicted) << ',' << format_real17(r.eps_r)
           << ',' << format_real17(r.energy_norm) << ','
           << format_real17(r.energy_phys) << ',' << r.learn_steps << ','
           << (r.halted ? 1 : 0) << "\n";
    }
}

void emit_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << kRunCsvHeader << "\n";
    for (std::size_t i = 0; i < sweep.runs.size(); ++i)
        emit_run_csv(os, sweep.runs[i], static_cast<int>(i), false);
}

void emit_vqe_csv(std::ostream& os, const std::vector<VqeResult>& runs) {
    os << kVqeCsvHeader << "\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (const auto& r : runs[i].records) {
            os << i << ',' << runs[i].seed << ',' << r.iter << ','
               << format_real17(r.energy_norm) << ','
               << format_real17(r.energy_phys) << ','
               << format_real17(r.grad_norm) << ',' << (r.halted ? 1 : 0) << "\n";
        }
    }
}

namespace {

nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["model"] = model_name(cfg.model);
    j["alpha"] = cfg.alpha;
    j["r"] = {cfg.r[0], cfg.r[1], cfg.r[2]};
    j["n"] = cfg.n;
    j["g"] = cfg.g;
    j["h"] = cfg.h;
    j["path"] = cfg.path;
    j["norm_mode"] = cfg.norm_mode == NormMode::Window ? "window" : "fixed-ltfim";
    j["norm_lo"] = cfg.norm_lo;
    j["norm_hi"] = cfg.norm_hi;
    j["ansatz"] = family_name(cfg.family);
    j["layers"] = cfg.layers;
    j["axes"] = cfg.axes;
    j["cnot_entangler"] = cfg.cnot_entangler;
    j["backend"] =
        cfg.evolution.backend == EvolutionBackend::Exact ? "exact" : "trotter";
    j["omega"] = cfg.evolution.omega;
    j["order"] = cfg.evolution.order;
    j["steps"] = cfg.evolution.steps;
    if (cfg.evolution.target_eps) j["target_eps"] = *cfg.evolution.target_eps;
    j["learning_rate"] = cfg.learn.learning_rate;
    j["n_max"] = cfg.learn.n_max;
    j["target_fidelity"] = cfg.learn.target_fidelity;
    j["grad_method"] = cfg.learn.grad_method == GradMethod::ParameterShift
                           ? "parameter-shift"
                           : "central-fd";
    j["fd_step"] = cfg.learn.fd_step;
    j["nmax_late"] = cfg.nmax_late;
    j["nmax_switch_round"] = cfg.nmax_switch_round;
    j["eps_h"] = cfg.eps_h;
    j["halt_mode"] = cfg.halt_mode == HaltMode::Energy ? "energy" : "overlap";
    j["max_rounds"] = cfg.max_rounds;
    j["seed"] = cfg.seed;
    j["k_policy"] = cfg.k_policy == KPolicy::K0
                        ? "k0"
                        : (cfg.k_policy == KPolicy::K1 ? "k1" : "sample");
    j["shots"] = cfg.shots;
    j["success_fidelity"] = cfg.success_fidelity;
    return j;
}

} // namespace

std::string summary_json(const RunConfig& cfg, const SweepResult& sweep) {
    nlohmann::json j;
    j["config"] = config_json(cfg);
    if (!sweep.runs.empty()) {
        const RunResult& first = sweep.runs.front();
        j["normalization"] = {{"a", first.norm.a}, {"b", first.norm.b}};
        j["lambda0"] = {{"norm", first.lambda0_norm}, {"phys", first.lambda0_phys}};
        j["c_star"] = first.c_star;
        j["diagnostics"] = first.diagnostics;
    }
    if (!sweep.aborts.empty()) j["aborts"] = sweep.aborts;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : sweep.runs) {
        runs.push_back({{"seed", r.seed},
                        {"rounds", r.rounds()},
                        {"halted", r.halted},
                        {"final_fidelity", r.final_fidelity},
                        {"final_energy_norm", r.final_energy_norm},
                        {"final_energy_phys", r.final_energy_phys},
                        {"prep_count", r.prep_count}});
    }
    j["runs"] = runs;
    j["aggregates"] = {{"energy_err_mean", sweep.agg.energy_err_mean},
                       {"energy_err_sd", sweep.agg.energy_err_sd},
                       {"fidelity_mean", sweep.agg.fidelity_mean},
                       {"fidelity_sd", sweep.agg.fidelity_sd},
                       {"success_fraction", sweep.agg.success_fraction}};
    return j.dump(2);
}

std::string vqe_summary_json(const RunConfig& cfg, const std::vector<VqeResult>& runs) {
    nlohmann::json j;
    j["config"] = config_json(cfg);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : runs) {
        arr.push_back({{"seed", r.seed},
                       {"iters", r.records.size()},
                       {"halted", r.halted},
                       {"final_energy_norm", r.final_energy_norm},
                       {"final_energy_phys", r.final_energy_phys},
                       {"prep_count", r.prep_count}});
    }
    j["runs"] = arr;
    return j.dump(2);
}

} // namespace qaae
