#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qaae/circuit.hpp"
#include "qaae/statevector.hpp"

namespace qaae {

enum class AnsatzFamily {
    Single,            // one qubit, Ry(theta)|0>, K = 1
    HardwareEfficient, // rotation ranks with an entangler chain between them
    SuD,               // full unitary-algebra exponential, K = 4^q - 1
    Oracle,            // stores the state directly, K = 0
};

struct AnsatzSpec {
    AnsatzFamily family = AnsatzFamily::Single;
    int num_qubits = 1;
    int layers = 1;          // hardware-efficient: entangler count
    std::string axes = "y";  // hardware-efficient: rotation axes per rank
    bool cnot_entangler = false; // CZ chain by default, CNOT chain if set
    // Oracle family: the represented state. Replaced wholesale by learning.
    std::shared_ptr<const StateVector> oracle_state;
};

using Params = std::vector<double>;

// Parameter count K of the family: 1, q*(layers+1)*|axes|, 4^q-1 or 0.
int num_params(const AnsatzSpec& spec);

// |alpha(theta)> on the bare system register.
StateVector prepare_trial(const AnsatzSpec& spec, const Params& theta);

// Gate-level form with parameter slots; available for the single-qubit and
// hardware-efficient families only.
Circuit build_circuit(const AnsatzSpec& spec);

// Uniform [0, 2pi) angles from the init stream of `seed`.
Params random_init(const AnsatzSpec& spec, std::uint64_t seed);

// Reflection about the trial state over the joint register,
// I - 2 |Psi><Psi| with |Psi> = |+> (x) |alpha(theta)>.
struct ReflectionOp {
    std::function<void(StateVector&)> apply; // rank-1 update, exact
    std::shared_ptr<const Circuit> circuit;  // gate form when available
};

ReflectionOp build_reflection(const AnsatzSpec& spec, const Params& theta);

// Gate form of the reflection: ansatz-conjugated phase flip of |0...0|,
// compiled as inverse(prep), a full-register MCPhase firing on the all-zeros
// pattern, then prep again. Parameter slots are shared with build_circuit.
Circuit reflection_circuit(const AnsatzSpec& spec);

// True when the family compiles to gates (depth accounting possible).
bool has_gate_form(const AnsatzSpec& spec);

} // namespace qaae
