#include "qaae/ansatz.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qaae/errors.hpp"
#include "qaae/rng.hpp"
#include "qaae/simulator.hpp"

namespace qaae {

namespace {

void check_spec(const AnsatzSpec& spec) {
    if (spec.num_qubits < 1 || spec.num_qubits > 26)
        throw ConfigError("ansatz: qubit count out of range");
    switch (spec.family) {
        case AnsatzFamily::Single:
            if (spec.num_qubits != 1)
                throw ConfigError("ansatz: single family is one qubit only");
            break;
        case AnsatzFamily::HardwareEfficient:
            if (spec.layers < 0) throw ConfigError("ansatz: negative layer count");
            // An empty axis pattern degenerates to the identity circuit.
            for (char a : spec.axes)
                if (a != 'x' && a != 'y' && a != 'z')
                    throw ConfigError("ansatz: axis letters must be x, y or z");
            break;
        case AnsatzFamily::SuD:
            if (spec.num_qubits > 10)
                throw ConfigError("ansatz: unitary-algebra family capped at 10 qubits");
            break;
        case AnsatzFamily::Oracle:
            break;
    }
}

GateKind axis_kind(char a) {
    switch (a) {
        case 'x': return GateKind::Rx;
        case 'y': return GateKind::Ry;
        default: return GateKind::Rz;
    }
}

void check_theta(const AnsatzSpec& spec, const Params& theta) {
    if (static_cast<int>(theta.size()) != num_params(spec))
        throw ConfigError("ansatz: parameter count mismatch");
    for (double v : theta)
        if (!std::isfinite(v)) throw ConfigError("ansatz: non-finite parameter");
}

// Hermitian generator sum for the unitary-algebra family. Basis order:
// all symmetric pair generators (j<k lexicographic), all antisymmetric pair
// generators, then the d-1 diagonal generators.
Eigen::MatrixXcd algebra_generator(int d, const Params& theta) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d, d);
    int idx = 0;
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            g(j, k) += theta[idx];
            g(k, j) += theta[idx];
            ++idx;
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            g(j, k) += cplx{0.0, -theta[idx]};
            g(k, j) += cplx{0.0, theta[idx]};
            ++idx;
        }
    for (int l = 1; l < d; ++l) {
        const double f = std::sqrt(2.0 / (l * (l + 1.0))) * theta[idx++];
        for (int m = 0; m < l; ++m) g(m, m) += f;
        g(l, l) -= l * f;
    }
    return g;
}

} // namespace

int num_params(const AnsatzSpec& spec) {
    check_spec(spec);
    switch (spec.family) {
        case AnsatzFamily::Single:
            return 1;
        case AnsatzFamily::HardwareEfficient:
            return spec.num_qubits * (spec.layers + 1) *
                   static_cast<int>(spec.axes.size());
        case AnsatzFamily::SuD:
            return static_cast<int>((std::size_t{1} << (2 * spec.num_qubits)) - 1);
        case AnsatzFamily::Oracle:
            return 0;
    }
    throw ConfigError("ansatz: unknown family");
}

Circuit build_circuit(const AnsatzSpec& spec) {
    check_spec(spec);
    if (!has_gate_form(spec))
        throw CapabilityError("build_circuit: family has no gate-level form");
    Circuit c;
    c.num_qubits = spec.num_qubits;
    c.num_params = num_params(spec);
    if (spec.family == AnsatzFamily::Single) {
        c.add(make_rotation(GateKind::Ry, 0, 0));
        return c;
    }
    const int q = spec.num_qubits;
    const int axes = static_cast<int>(spec.axes.size());
    if (axes == 0) return c; // no rotations means nothing worth entangling
    int slot = 0;
    for (int rank = 0; rank <= spec.layers; ++rank) {
        for (int j = 0; j < q; ++j)
            for (int a = 0; a < axes; ++a)
                c.add(make_rotation(axis_kind(spec.axes[a]), j, slot++));
        if (rank == spec.layers) break;
        for (int j = 0; j + 1 < q; ++j)
            c.add(make_gate(spec.cnot_entangler ? GateKind::CNOT : GateKind::CZ,
                            {j, j + 1}));
    }
    return c;
}

bool has_gate_form(const AnsatzSpec& spec) {
    return spec.family == AnsatzFamily::Single ||
           spec.family == AnsatzFamily::HardwareEfficient;
}

StateVector prepare_trial(const AnsatzSpec& spec, const Params& theta) {
    check_spec(spec);
    check_theta(spec, theta);
    switch (spec.family) {
        case AnsatzFamily::Single:
        case AnsatzFamily::HardwareEfficient: {
            StateVector s = zero_state(spec.num_qubits);
            apply_circuit(s, build_circuit(spec), theta);
            return s;
        }
        case AnsatzFamily::SuD: {
            const int d = 1 << spec.num_qubits;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
                algebra_generator(d, theta));
            if (es.info() != Eigen::Success)
                throw NumericError("prepare_trial: generator eigensolve failed");
            Eigen::VectorXcd col =
                es.eigenvectors().row(0).adjoint(); // V^dag |0...0>
            for (int j = 0; j < d; ++j)
                col(j) *= std::polar(1.0, -es.eigenvalues()(j));
            Eigen::VectorXcd out = es.eigenvectors() * col;
            StateVector s(spec.num_qubits);
            for (int j = 0; j < d; ++j) s.amps[j] = out(j);
            return s;
        }
        case AnsatzFamily::Oracle: {
            if (!spec.oracle_state)
                throw ConfigError("prepare_trial: oracle family without a state");
            if (spec.oracle_state->num_qubits != spec.num_qubits)
                throw ConfigError("prepare_trial: oracle state register mismatch");
            if (std::abs(norm(*spec.oracle_state) - 1.0) > 1e-9)
                throw ConfigError("prepare_trial: oracle state is not normalized");
            return *spec.oracle_state;
        }
    }
    throw ConfigError("prepare_trial: unknown family");
}

Params random_init(const AnsatzSpec& spec, std::uint64_t seed) {
    const int k = num_params(spec);
    CounterRng rng(seed, rng_stream::kInit);
    Params theta(k);
    for (int i = 0; i < k; ++i) theta[i] = rng.uniform(0.0, 2.0 * M_PI);
    return theta;
}

ReflectionOp build_reflection(const AnsatzSpec& spec, const Params& theta) {
    StateVector psi = join_plus_ancilla(prepare_trial(spec, theta));
    ReflectionOp op;
    op.apply = [psi](StateVector& s) {
        if (s.dim() != psi.dim())
            throw ConfigError("reflection: register size mismatch");
        const cplx ov = inner(psi, s);
        for (std::size_t i = 0; i < s.dim(); ++i)
            s.amps[i] -= 2.0 * ov * psi.amps[i];
    };
    if (has_gate_form(spec)) {
        Circuit rc = reflection_circuit(spec);
        auto circ = std::make_shared<Circuit>(std::move(rc));
        op.circuit = circ;
    }
    return op;
}

Circuit reflection_circuit(const AnsatzSpec& spec) {
    if (!has_gate_form(spec))
        throw CapabilityError("reflection_circuit: family has no gate-level form");
    const Circuit prep = build_circuit(spec);
    const int q = spec.num_qubits;
    const int anc = q;

    Circuit out;
    out.num_qubits = q + 1;
    out.num_params = prep.num_params;

    Circuit undo = inverse_circuit(prep);
    out.add(make_gate(GateKind::H, {anc}));
    for (const Gate& g : undo.gates) out.add(g);

    std::vector<int> all(q + 1);
    for (int j = 0; j <= q; ++j) all[j] = j;
    // Phase flip of the joint |0...0>; the layer cost of this single gate
    // models its linear-depth decomposition.
    out.add(make_mcphase(all, 0, M_PI));

    for (const Gate& g : prep.gates) out.add(g);
    out.add(make_gate(GateKind::H, {anc}));
    return out;
}

} // namespace qaae
