#include "qaae/learner.hpp"

#include <algorithm>
#include <cmath>

#include "qaae/amplifier.hpp"
#include "qaae/errors.hpp"
#include "qaae/simulator.hpp"

namespace qaae {

namespace {

// Fidelity floor implied by the trace-distance clamp at 1 - 1e-12.
constexpr double kFidelityFloor = 2e-12;

double objective_from_fidelity(double f) {
    f = std::max(f, kFidelityFloor);
    return (1.0 - f) - std::log(f);
}

double objective_slope(double f) {
    f = std::max(f, kFidelityFloor);
    return -1.0 - 1.0 / f;
}

// Exact derivative of the overlap amplitude for every rotation slot of a
// gate circuit via one backward sweep; together with the chain rule this
// reproduces the shift-rule gradient to rounding error.
void rotation_gradient(const Circuit& circ, const Params& theta,
                       const StateVector& target, double& f_out,
                       std::vector<double>& df_out) {
    StateVector psi = zero_state(circ.num_qubits);
    apply_circuit(psi, circ, theta);
    const cplx c = inner(target, psi);
    f_out = std::norm(c);
    df_out.assign(theta.size(), 0.0);

    StateVector phi = target;
    const std::vector<double> no_params;
    for (auto it = circ.gates.rbegin(); it != circ.gates.rend(); ++it) {
        const Gate& g = *it;
        if (g.param_slot >= 0) {
            // d/dtheta exp(-i theta scale P / 2) = (-i scale / 2) P (...)
            StateVector tmp = psi;
            Gate pg;
            pg.qubits = g.qubits;
            if (g.kind == GateKind::Rx) {
                pg.kind = GateKind::X;
                apply_gate(tmp, pg, no_params);
            } else if (g.kind == GateKind::Ry) {
                // Y = i X Z applied explicitly
                pg.kind = GateKind::Z;
                apply_gate(tmp, pg, no_params);
                pg.kind = GateKind::X;
                apply_gate(tmp, pg, no_params);
                for (auto& z : tmp.amps) z *= cplx{0.0, 1.0};
            } else {
                pg.kind = GateKind::Z;
                apply_gate(tmp, pg, no_params);
            }
            const cplx dc =
                cplx{0.0, -0.5 * g.param_scale} * inner(phi, tmp);
            df_out[g.param_slot] += 2.0 * (dc * std::conj(c)).real();
        }
        // Undo the gate on both sweeps.
        Gate ginv = g;
        switch (g.kind) {
            case GateKind::Rx:
            case GateKind::Ry:
            case GateKind::Rz:
                ginv.param_scale = -ginv.param_scale;
                ginv.fixed_angle = -ginv.fixed_angle;
                break;
            case GateKind::MCPhase:
                ginv.phase = -ginv.phase;
                break;
            default:
                break;
        }
        apply_gate(psi, ginv, theta);
        apply_gate(phi, ginv, theta);
    }
}

double fidelity_at(const AnsatzSpec& a, const Params& theta, const StateVector& target) {
    return fidelity(target, prepare_trial(a, theta));
}

// Central differences of the fidelity, step h.
void fd_gradient(const AnsatzSpec& a, const Params& theta, const StateVector& target,
                 double h, double& f_out, std::vector<double>& df_out) {
    f_out = fidelity_at(a, theta, target);
    df_out.assign(theta.size(), 0.0);
    Params probe = theta;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        probe[i] = theta[i] + h;
        const double fp = fidelity_at(a, probe, target);
        probe[i] = theta[i] - h;
        const double fm = fidelity_at(a, probe, target);
        probe[i] = theta[i];
        df_out[i] = (fp - fm) / (2.0 * h);
    }
}

bool use_shift_rule(const AnsatzSpec& a, const LearnConfig& cfg) {
    return cfg.grad_method == GradMethod::ParameterShift && has_gate_form(a);
}

// Objective gradient = slope(f) * df.
void objective_gradient(const AnsatzSpec& a, const Params& theta,
                        const StateVector& target, const LearnConfig& cfg,
                        double& f_out, std::vector<double>& grad_out) {
    std::vector<double> df;
    if (use_shift_rule(a, cfg)) {
        rotation_gradient(build_circuit(a), theta, target, f_out, df);
    } else {
        fd_gradient(a, theta, target, cfg.fd_step, f_out, df);
    }
    const double slope = objective_slope(f_out);
    grad_out.resize(df.size());
    for (std::size_t i = 0; i < df.size(); ++i) grad_out[i] = slope * df[i];
}

} // namespace

double trace_distance_pure(const StateVector& a, const StateVector& b) {
    return std::sqrt(std::max(0.0, 1.0 - fidelity(a, b)));
}

double objective_value(double trace_dist) {
    if (trace_dist < 0.0 || !std::isfinite(trace_dist))
        throw ConfigError("objective_value: distance must be a finite non-negative");
    const double d = std::min(trace_dist, 1.0 - 1e-12);
    return d * d - std::log(1.0 - d * d);
}

LearnResult learn_state(const AnsatzSpec& a, const Params& theta0,
                        const StateVector& target, const LearnConfig& cfg) {
    if (cfg.learning_rate <= 0.0) throw ConfigError("learn_state: rate must be positive");
    if (cfg.n_max < 0) throw ConfigError("learn_state: negative step cap");
    if (std::abs(norm(target) - 1.0) > 1e-9)
        throw ConfigError("learn_state: target is not normalized");

    LearnResult res;
    if (a.family == AnsatzFamily::Oracle) {
        res.state = target;
        res.final_fidelity = 1.0;
        res.eps = 0.0;
        res.converged = true;
        res.objective_trace.push_back(objective_value(0.0));
        return res;
    }

    const int k = num_params(a);
    if (static_cast<int>(theta0.size()) != k)
        throw ConfigError("learn_state: warm-start size mismatch");

    Params theta = theta0;
    double f = 0.0;
    std::vector<double> grad;
    for (int step = 0; step < cfg.n_max; ++step) {
        objective_gradient(a, theta, target, cfg, f, grad);
        res.objective_trace.push_back(objective_from_fidelity(f));
        res.prep_count += 1; // fidelity readout
        if (f >= cfg.target_fidelity) {
            res.converged = true;
            break;
        }
        if (k == 0) break; // identity circuit, nothing to adjust
        res.prep_count += 2 * k; // two shifted evaluations per slot
        for (int i = 0; i < k; ++i) theta[i] -= cfg.learning_rate * grad[i];
        res.steps = step + 1;
    }
    res.theta = std::move(theta);
    res.final_fidelity = fidelity_at(a, res.theta, target);
    res.prep_count += 1;
    if (res.final_fidelity >= cfg.target_fidelity) res.converged = true;
    res.eps = std::sqrt(std::max(0.0, 1.0 - res.final_fidelity));
    res.objective_trace.push_back(objective_from_fidelity(res.final_fidelity));
    return res;
}

double gradient_check(const AnsatzSpec& a, const Params& theta,
                      const StateVector& target, const LearnConfig& cfg) {
    const int k = num_params(a);
    if (k == 0) return 0.0;
    double f = 0.0;
    std::vector<double> grad;
    objective_gradient(a, theta, target, cfg, f, grad);

    // Independent oracle: central differences of the objective itself.
    const double h = 1e-5;
    double dev = 0.0;
    Params probe = theta;
    for (int i = 0; i < k; ++i) {
        probe[i] = theta[i] + h;
        const double op = objective_from_fidelity(fidelity_at(a, probe, target));
        probe[i] = theta[i] - h;
        const double om = objective_from_fidelity(fidelity_at(a, probe, target));
        probe[i] = theta[i];
        dev = std::max(dev, std::abs((op - om) / (2.0 * h) - grad[i]));
    }
    return dev;
}

double bloch_reencode(double cx, double cz) {
    const double len = std::hypot(cx, cz);
    if (len < 1e-12)
        throw NumericError("bloch_reencode: measured direction is numerically zero");
    return std::atan2(cx / len, cz / len);
}

double bloch_angle_from_state(const StateVector& phi, int shots, CounterRng* rng) {
    if (phi.num_qubits != 1)
        throw ConfigError("bloch_angle_from_state: one-qubit states only");
    const PauliTerm px = term_from_string(1.0, "X");
    const PauliTerm pz = term_from_string(1.0, "Z");
    double cx, cz;
    if (shots > 0) {
        if (!rng) throw ConfigError("bloch_angle_from_state: shots need an rng");
        cx = pauli_expectation(phi, px, shots, *rng);
        cz = pauli_expectation(phi, pz, shots, *rng);
    } else {
        cx = pauli_expectation(phi, px);
        cz = pauli_expectation(phi, pz);
    }
    return bloch_reencode(cx, cz);
}

DeviationReport learn_deviation(const StateVector& phi_out, const StateVector& trial,
                                const Spectrum& spec) {
    DeviationReport rep;
    rep.deviation = std::abs(ground_overlap(phi_out, spec) - ground_overlap(trial, spec));
    rep.bound = trace_distance_pure(phi_out, trial);
    if (rep.deviation > rep.bound + 1e-12)
        throw NumericError("learn_deviation: projector deviation exceeded its bound");
    return rep;
}

} // namespace qaae
