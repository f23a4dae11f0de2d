#include "qaae/circuit.hpp"

#include <algorithm>

#include "qaae/errors.hpp"

namespace qaae {

Gate make_gate(GateKind kind, std::vector<int> qubits) {
    Gate g;
    g.kind = kind;
    g.qubits = std::move(qubits);
    return g;
}

Gate make_rotation(GateKind kind, int qubit, int slot, double scale) {
    if (kind != GateKind::Rx && kind != GateKind::Ry && kind != GateKind::Rz)
        throw ConfigError("make_rotation: kind is not a rotation");
    Gate g;
    g.kind = kind;
    g.qubits = {qubit};
    g.param_slot = slot;
    g.param_scale = scale;
    return g;
}

Gate make_fixed_rotation(GateKind kind, int qubit, double angle) {
    if (kind != GateKind::Rx && kind != GateKind::Ry && kind != GateKind::Rz)
        throw ConfigError("make_fixed_rotation: kind is not a rotation");
    Gate g;
    g.kind = kind;
    g.qubits = {qubit};
    g.fixed_angle = angle;
    return g;
}

Gate make_mcphase(std::vector<int> qubits, std::uint64_t pattern, double phase) {
    if (qubits.empty()) throw ConfigError("make_mcphase: empty qubit list");
    Gate g;
    g.kind = GateKind::MCPhase;
    g.qubits = std::move(qubits);
    g.pattern = pattern;
    g.phase = phase;
    return g;
}

Gate make_opaque(std::shared_ptr<const OpaqueOp> op, std::vector<int> qubits) {
    if (!op || !op->apply) throw ConfigError("make_opaque: missing applier");
    Gate g;
    g.kind = GateKind::Opaque;
    g.qubits = std::move(qubits);
    g.opaque = std::move(op);
    return g;
}

int gate_layer_cost(const Gate& g) {
    switch (g.kind) {
        case GateKind::MCPhase:
            return std::max(1, 2 * static_cast<int>(g.qubits.size()) - 3);
        case GateKind::Opaque:
            return std::max(1, g.opaque ? g.opaque->declared_depth : 1);
        default:
            return 1;
    }
}

int circuit_depth(const Circuit& c) {
    std::vector<int> free_at(c.num_qubits, 0);
    int depth = 0;
    for (const Gate& g : c.gates) {
        int start = 0;
        for (int q : g.qubits) {
            if (q < 0 || q >= c.num_qubits)
                throw ConfigError("circuit_depth: gate qubit out of range");
            start = std::max(start, free_at[q]);
        }
        const int end = start + gate_layer_cost(g);
        for (int q : g.qubits) free_at[q] = end;
        depth = std::max(depth, end);
    }
    return depth;
}

Circuit inverse_circuit(const Circuit& c) {
    Circuit inv;
    inv.num_qubits = c.num_qubits;
    inv.num_params = c.num_params;
    inv.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
            case GateKind::Rx:
            case GateKind::Ry:
            case GateKind::Rz:
                g.param_scale = -g.param_scale;
                g.fixed_angle = -g.fixed_angle;
                break;
            case GateKind::MCPhase:
                g.phase = -g.phase;
                break;
            case GateKind::Opaque:
                if (!g.opaque->apply_dagger)
                    throw CapabilityError("inverse_circuit: opaque block has no dagger");
                {
                    auto swapped = std::make_shared<OpaqueOp>(*g.opaque);
                    std::swap(swapped->apply, swapped->apply_dagger);
                    swapped->name += "!";
                    g.opaque = std::move(swapped);
                }
                break;
            default:
                break; // H, X, Z, CZ, CNOT are involutions
        }
        inv.gates.push_back(std::move(g));
    }
    return inv;
}

Circuit concat(const Circuit& a, const Circuit& b) {
    if (a.num_qubits != b.num_qubits)
        throw ConfigError("concat: qubit counts differ");
    Circuit out = a;
    out.num_params = std::max(a.num_params, b.num_params);
    out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
    return out;
}

} // namespace qaae
