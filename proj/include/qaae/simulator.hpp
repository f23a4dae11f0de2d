#pragma once

#include <vector>

#include "qaae/circuit.hpp"
#include "qaae/pauli.hpp"
#include "qaae/rng.hpp"
#include "qaae/statevector.hpp"

namespace qaae {

// Applies one gate in place. Rotation gates read their angle from
// theta[param_slot] * param_scale, or from fixed_angle when no slot is set.
void apply_gate(StateVector& s, const Gate& g, const std::vector<double>& theta);

// Applies the whole gate list. theta must have exactly c.num_params finite
// entries.
void apply_circuit(StateVector& s, const Circuit& c, const std::vector<double>& theta);

// Exact <s|P|s> for a Hermitian Pauli string (coefficient ignored).
double pauli_expectation(const StateVector& s, const PauliTerm& t);

// Finite-shot estimator: draws `shots` outcomes from the exact +-1 eigenvalue
// distribution of P and returns the empirical mean. Deterministic in rng.
double pauli_expectation(const StateVector& s, const PauliTerm& t, int shots,
                         CounterRng& rng);

enum class KPolicy {
    K0,     // always project on ancilla 0
    K1,     // always project on ancilla 1
    Sample, // draw the outcome from the branch probabilities
};

struct MeasurePolicy {
    KPolicy kind = KPolicy::K0;
    CounterRng* rng = nullptr; // required for Sample
};

struct MeasureResult {
    int k = 0;
    double p_k = 0.0;
    StateVector system; // normalized post-measurement system state
};

// Projective measurement of one qubit (the amplification ancilla); returns
// the outcome, its exact probability and the renormalized remainder register.
// Deterministic policies targeting a branch with probability below 1e-14
// raise ZeroBranchError.
MeasureResult measure_ancilla(const StateVector& joint, int ancilla_index,
                              const MeasurePolicy& policy);

} // namespace qaae
