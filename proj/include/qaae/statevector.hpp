#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qaae {

using cplx = std::complex<double>;

// Dense amplitude vector over num_qubits qubits, little-endian: bit j of the
// array index is qubit j, so qubit (num_qubits-1) splits the array into two
// contiguous halves.
struct StateVector {
    int num_qubits = 0;
    std::vector<cplx> amps;

    StateVector() = default;
    explicit StateVector(int n)
        : num_qubits(n), amps(std::size_t{1} << n, cplx{0.0, 0.0}) {}

    std::size_t dim() const { return amps.size(); }
};

// |index> basis state.
StateVector basis_state(int num_qubits, std::size_t index);

// |0...0>.
inline StateVector zero_state(int num_qubits) { return basis_state(num_qubits, 0); }

// <a|b>; dimensions must match.
cplx inner(const StateVector& a, const StateVector& b);

double norm(const StateVector& s);

// Scales to unit norm; throws NumericError on a numerically zero vector.
void normalize(StateVector& s);

// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

// |+> on a new top qubit tensored with the system state: both ancilla
// branches hold a copy of `sys` scaled by 1/sqrt(2).
StateVector join_plus_ancilla(const StateVector& sys);

// The `branch` half (ancilla value 0 or 1) of a joint state, unnormalized.
StateVector ancilla_branch(const StateVector& joint, int branch);

} // namespace qaae
