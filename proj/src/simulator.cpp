#include "qaae/simulator.hpp"

#include <cmath>

#include "qaae/errors.hpp"

namespace qaae {

namespace {

// In-place 2x2 unitary on `target`: pairs (i, i | bit) with i running over
// indices where the target bit is clear.
void apply_single_qubit(StateVector& s, int target, cplx u00, cplx u01, cplx u10,
                        cplx u11) {
    const std::size_t bit = std::size_t{1} << target;
    const std::size_t d = s.dim();
    for (std::size_t i = 0; i < d; ++i) {
        if (i & bit) continue;
        const cplx a0 = s.amps[i];
        const cplx a1 = s.amps[i | bit];
        s.amps[i] = u00 * a0 + u01 * a1;
        s.amps[i | bit] = u10 * a0 + u11 * a1;
    }
}

void check_qubit(const StateVector& s, int q, const char* where) {
    if (q < 0 || q >= s.num_qubits)
        throw ConfigError(std::string(where) + ": qubit index out of range");
}

} // namespace

void apply_gate(StateVector& s, const Gate& g, const std::vector<double>& theta) {
    for (int q : g.qubits) check_qubit(s, q, "apply_gate");

    double angle = g.fixed_angle;
    if (g.param_slot >= 0) {
        if (g.param_slot >= static_cast<int>(theta.size()))
            throw ConfigError("apply_gate: parameter slot out of range");
        angle = theta[g.param_slot] * g.param_scale;
    }

    switch (g.kind) {
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            apply_single_qubit(s, g.qubits[0], r, r, r, -r);
            break;
        }
        case GateKind::X:
            apply_single_qubit(s, g.qubits[0], 0, 1, 1, 0);
            break;
        case GateKind::Z:
            apply_single_qubit(s, g.qubits[0], 1, 0, 0, -1);
            break;
        case GateKind::Rx: {
            const cplx c = std::cos(angle / 2), ms{0.0, -std::sin(angle / 2)};
            apply_single_qubit(s, g.qubits[0], c, ms, ms, c);
            break;
        }
        case GateKind::Ry: {
            const double c = std::cos(angle / 2), sn = std::sin(angle / 2);
            apply_single_qubit(s, g.qubits[0], c, -sn, sn, c);
            break;
        }
        case GateKind::Rz: {
            const cplx em = std::polar(1.0, -angle / 2), ep = std::polar(1.0, angle / 2);
            apply_single_qubit(s, g.qubits[0], em, 0, 0, ep);
            break;
        }
        case GateKind::CZ: {
            const std::size_t m = (std::size_t{1} << g.qubits[0]) |
                                  (std::size_t{1} << g.qubits[1]);
            for (std::size_t i = 0; i < s.dim(); ++i)
                if ((i & m) == m) s.amps[i] = -s.amps[i];
            break;
        }
        case GateKind::CNOT: {
            const std::size_t cbit = std::size_t{1} << g.qubits[0];
            const std::size_t tbit = std::size_t{1} << g.qubits[1];
            for (std::size_t i = 0; i < s.dim(); ++i)
                if ((i & cbit) && !(i & tbit))
                    std::swap(s.amps[i], s.amps[i | tbit]);
            break;
        }
        case GateKind::MCPhase: {
            std::size_t sel = 0, want = 0;
            for (std::size_t k = 0; k < g.qubits.size(); ++k) {
                sel |= std::size_t{1} << g.qubits[k];
                if ((g.pattern >> k) & 1) want |= std::size_t{1} << g.qubits[k];
            }
            const cplx ph = std::polar(1.0, g.phase);
            for (std::size_t i = 0; i < s.dim(); ++i)
                if ((i & sel) == want) s.amps[i] *= ph;
            break;
        }
        case GateKind::Opaque:
            if (g.opaque->num_qubits != s.num_qubits)
                throw ConfigError("apply_gate: opaque block register size mismatch");
            g.opaque->apply(s);
            break;
    }
}

void apply_circuit(StateVector& s, const Circuit& c, const std::vector<double>& theta) {
    if (s.num_qubits != c.num_qubits)
        throw ConfigError("apply_circuit: register size mismatch");
    if (static_cast<int>(theta.size()) != c.num_params)
        throw ConfigError("apply_circuit: parameter count mismatch");
    for (double v : theta)
        if (!std::isfinite(v)) throw ConfigError("apply_circuit: non-finite parameter");
    for (const Gate& g : c.gates) apply_gate(s, g, theta);
}

double pauli_expectation(const StateVector& s, const PauliTerm& t) {
    const cplx v = pauli_matrix_element(t, s);
    if (std::abs(v.imag()) > 1e-8)
        throw NumericError("pauli_expectation: non-real residue above 1e-8");
    return v.real();
}

double pauli_expectation(const StateVector& s, const PauliTerm& t, int shots,
                         CounterRng& rng) {
    if (shots < 1) throw ConfigError("pauli_expectation: shots must be positive");
    const double mean = pauli_expectation(s, t);
    // Outcomes are +-1 with P(+1) = (1 + <P>) / 2.
    const double p_plus = std::min(1.0, std::max(0.0, 0.5 * (1.0 + mean)));
    long plus = 0;
    for (int n = 0; n < shots; ++n)
        if (rng.next_double() < p_plus) ++plus;
    return 2.0 * static_cast<double>(plus) / shots - 1.0;
}

MeasureResult measure_ancilla(const StateVector& joint, int ancilla_index,
                              const MeasurePolicy& policy) {
    check_qubit(joint, ancilla_index, "measure_ancilla");
    const std::size_t bit = std::size_t{1} << ancilla_index;
    // Both branch weights measured directly. Probabilities are their ratio
    // and the kept branch is rescaled by its own norm, so round-off in the
    // joint state's norm is squeezed out here instead of compounding.
    double w[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < joint.dim(); ++i)
        w[(i & bit) ? 1 : 0] += std::norm(joint.amps[i]);
    const double total = w[0] + w[1];
    if (total <= 0.0)
        throw NumericError("measure_ancilla: zero-norm register");
    const double p[2] = {w[0] / total, w[1] / total};

    int k;
    switch (policy.kind) {
        case KPolicy::K0: k = 0; break;
        case KPolicy::K1: k = 1; break;
        case KPolicy::Sample:
            if (!policy.rng)
                throw ConfigError("measure_ancilla: Sample policy needs an rng");
            k = policy.rng->next_double() < p[1] ? 1 : 0;
            break;
        default:
            throw ConfigError("measure_ancilla: unknown policy");
    }
    if (policy.kind != KPolicy::Sample && p[k] < 1e-14)
        throw ZeroBranchError("measure_ancilla: requested branch has zero probability");

    MeasureResult res;
    res.k = k;
    res.p_k = p[k];
    res.system = StateVector(joint.num_qubits - 1);
    const double scale = 1.0 / std::sqrt(w[k]);
    // Gather the matching half, dropping the measured bit from the index.
    const std::size_t want = k ? bit : 0;
    std::size_t out = 0;
    for (std::size_t i = 0; i < joint.dim(); ++i) {
        if ((i & bit) != want) continue;
        res.system.amps[out++] = joint.amps[i] * scale;
    }
    return res;
}

} // namespace qaae
