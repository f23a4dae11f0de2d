#include "qaae/vqe.hpp"

#include <cmath>

#include "qaae/errors.hpp"
#include "qaae/simulator.hpp"

namespace qaae {

namespace {

// Exact shift-rule gradient of the energy via one backward sweep over the
// gate list (same protocol cost accounting as the state learner).
void energy_gradient_gates(const PauliHamiltonian& h, const Circuit& circ,
                           const Params& theta, double& e_out,
                           std::vector<double>& de_out) {
    StateVector psi = zero_state(circ.num_qubits);
    apply_circuit(psi, circ, theta);
    StateVector phi = apply_hamiltonian(h, psi);
    e_out = inner(psi, phi).real();
    de_out.assign(theta.size(), 0.0);

    const std::vector<double> no_params;
    for (auto it = circ.gates.rbegin(); it != circ.gates.rend(); ++it) {
        const Gate& g = *it;
        if (g.param_slot >= 0) {
            StateVector tmp = psi;
            Gate pg;
            pg.qubits = g.qubits;
            if (g.kind == GateKind::Rx) {
                pg.kind = GateKind::X;
                apply_gate(tmp, pg, no_params);
            } else if (g.kind == GateKind::Ry) {
                pg.kind = GateKind::Z;
                apply_gate(tmp, pg, no_params);
                pg.kind = GateKind::X;
                apply_gate(tmp, pg, no_params);
                for (auto& z : tmp.amps) z *= cplx{0.0, 1.0};
            } else {
                pg.kind = GateKind::Z;
                apply_gate(tmp, pg, no_params);
            }
            const cplx dpsi = cplx{0.0, -0.5 * g.param_scale} * inner(phi, tmp);
            de_out[g.param_slot] += 2.0 * dpsi.real();
        }
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

void energy_gradient_fd(const PauliHamiltonian& h, const AnsatzSpec& a,
                        const Params& theta, double step, double& e_out,
                        std::vector<double>& de_out) {
    e_out = vqe_energy(h, a, theta);
    de_out.assign(theta.size(), 0.0);
    Params probe = theta;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        probe[i] = theta[i] + step;
        const double ep = vqe_energy(h, a, probe);
        probe[i] = theta[i] - step;
        const double em = vqe_energy(h, a, probe);
        probe[i] = theta[i];
        de_out[i] = (ep - em) / (2.0 * step);
    }
}

} // namespace

double vqe_energy(const PauliHamiltonian& h, const AnsatzSpec& a, const Params& theta) {
    return expectation(h, prepare_trial(a, theta));
}

VqeResult run_vqe(const PauliHamiltonian& h, const AnsatzSpec& a, const VqeConfig& cfg) {
    if (cfg.learning_rate <= 0.0) throw ConfigError("run_vqe: rate must be positive");
    if (cfg.max_iters < 1) throw ConfigError("run_vqe: max_iters must be positive");
    if (a.family == AnsatzFamily::Oracle)
        throw ConfigError("run_vqe: the oracle family has nothing to optimize");
    if (a.num_qubits != h.num_qubits)
        throw ConfigError("run_vqe: ansatz register does not match Hamiltonian");

    const NormRecord nr = h.norm.value_or(NormRecord{});
    const int k = num_params(a);
    const bool gates = has_gate_form(a);
    Circuit circ;
    if (gates) circ = build_circuit(a);

    VqeResult res;
    res.seed = cfg.seed;
    res.theta = random_init(a, cfg.seed);

    double e_prev = 0.0;
    std::vector<double> grad;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        double e = 0.0;
        if (gates) energy_gradient_gates(h, circ, res.theta, e, grad);
        else energy_gradient_fd(h, a, res.theta, cfg.fd_step, e, grad);
        res.prep_count += 1 + 2 * k;

        double gn = 0.0;
        for (double v : grad) gn += v * v;
        gn = std::sqrt(gn);

        VqeIterRecord rec;
        rec.iter = iter;
        rec.energy_norm = e;
        rec.energy_phys = (e - nr.b) / nr.a;
        rec.grad_norm = gn;

        const bool budget_out =
            cfg.prep_budget && res.prep_count >= *cfg.prep_budget;
        const bool plateau = iter > 0 && std::abs(e - e_prev) <= cfg.eps_h;
        rec.halted = plateau;
        res.records.push_back(rec);
        res.final_energy_norm = e;
        res.final_energy_phys = rec.energy_phys;
        e_prev = e;
        if (plateau || budget_out) {
            res.halted = plateau;
            break;
        }
        for (int i = 0; i < k; ++i) res.theta[i] -= cfg.learning_rate * grad[i];
    }
    return res;
}

} // namespace qaae
