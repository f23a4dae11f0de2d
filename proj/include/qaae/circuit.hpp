#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qaae/statevector.hpp"

namespace qaae {

// Black-box unitary usable inside a circuit. `declared_depth` feeds the layer
// metric since the block has no gate-level structure.
struct OpaqueOp {
    std::string name;
    int num_qubits = 0;
    int declared_depth = 1;
    std::function<void(StateVector&)> apply;
    std::function<void(StateVector&)> apply_dagger;
};

enum class GateKind {
    H,
    X,
    Z,
    Rx,
    Ry,
    Rz,
    CZ,
    CNOT,
    MCPhase,
    Opaque,
};

// One gate. Rotation angles come either from a parameter slot (scaled by
// param_scale, so inverse circuits can reuse slots) or from fixed_angle.
// MCPhase applies exp(i*phase) to basis states whose bits on `qubits` match
// `pattern` (bit k of pattern corresponds to qubits[k]); its layer cost
// models a linear-depth decomposition, max(1, 2m-3) for m listed qubits.
struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> qubits;
    int param_slot = -1;
    double param_scale = 1.0;
    double fixed_angle = 0.0;
    double phase = 0.0;
    std::uint64_t pattern = 0;
    std::shared_ptr<const OpaqueOp> opaque;
};

struct Circuit {
    int num_qubits = 0;
    int num_params = 0;
    std::vector<Gate> gates;

    void add(Gate g) { gates.push_back(std::move(g)); }
};

// Convenience constructors.
Gate make_gate(GateKind kind, std::vector<int> qubits);
Gate make_rotation(GateKind kind, int qubit, int slot, double scale = 1.0);
Gate make_fixed_rotation(GateKind kind, int qubit, double angle);
Gate make_mcphase(std::vector<int> qubits, std::uint64_t pattern, double phase);
Gate make_opaque(std::shared_ptr<const OpaqueOp> op, std::vector<int> qubits);

// Layer cost of a single gate under the ASAP metric.
int gate_layer_cost(const Gate& g);

// Greedy as-soon-as-possible layering: a gate starts at the first layer where
// all its qubits are free and occupies gate_layer_cost layers on each.
int circuit_depth(const Circuit& c);

// Gate-by-gate inverse: reversed order, angles negated via param_scale or
// fixed_angle, MCPhase phase negated, opaque blocks swapped to their dagger.
Circuit inverse_circuit(const Circuit& c);

// Concatenation; qubit counts must match and parameter slots are shared.
Circuit concat(const Circuit& a, const Circuit& b);

} // namespace qaae
