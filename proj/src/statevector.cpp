#include "qaae/statevector.hpp"

#include <cmath>

#include "qaae/errors.hpp"

namespace qaae {

StateVector basis_state(int num_qubits, std::size_t index) {
    if (num_qubits < 1 || num_qubits > 26)
        throw ConfigError("basis_state: qubit count out of range");
    StateVector s(num_qubits);
    if (index >= s.dim())
        throw ConfigError("basis_state: index out of range");
    s.amps[index] = 1.0;
    return s;
}

cplx inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw ConfigError("inner: dimension mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i)
        acc += std::conj(a.amps[i]) * b.amps[i];
    return acc;
}

double norm(const StateVector& s) {
    double acc = 0.0;
    for (const cplx& z : s.amps) acc += std::norm(z);
    return std::sqrt(acc);
}

void normalize(StateVector& s) {
    double n = norm(s);
    if (n < 1e-150)
        throw NumericError("normalize: zero vector");
    for (cplx& z : s.amps) z /= n;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner(a, b));
}

StateVector join_plus_ancilla(const StateVector& sys) {
    StateVector joint(sys.num_qubits + 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::size_t d = sys.dim();
    for (std::size_t i = 0; i < d; ++i) {
        joint.amps[i] = sys.amps[i] * inv_sqrt2;
        joint.amps[i + d] = sys.amps[i] * inv_sqrt2;
    }
    return joint;
}

StateVector ancilla_branch(const StateVector& joint, int branch) {
    if (joint.num_qubits < 2)
        throw ConfigError("ancilla_branch: joint state needs at least two qubits");
    if (branch != 0 && branch != 1)
        throw ConfigError("ancilla_branch: branch must be 0 or 1");
    StateVector sys(joint.num_qubits - 1);
    const std::size_t d = sys.dim();
    const std::size_t off = branch ? d : 0;
    for (std::size_t i = 0; i < d; ++i) sys.amps[i] = joint.amps[off + i];
    return sys;
}

} // namespace qaae
