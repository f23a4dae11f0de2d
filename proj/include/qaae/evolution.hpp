#pragma once

#include <memory>
#include <optional>

#include "qaae/circuit.hpp"
#include "qaae/pauli.hpp"

namespace qaae {

enum class EvolutionBackend { Exact, Trotter };

struct EvolutionConfig {
    EvolutionBackend backend = EvolutionBackend::Exact;
    double omega = 0.78539816339744831; // pi/4
    int order = 1;                      // product-formula order, 1 or 2
    int steps = 1;                      // nu
    std::optional<double> target_eps;   // enables the step-doubling budget rule
};

// Dense-comparison caps.
inline constexpr int kMaxTrotterCompareQubits = 10;
inline constexpr int kMaxTrotterSteps = 256;

// Controlled propagator for one amplification round: branch 0 of the top
// qubit evolves under exp(+i omega H), branch 1 under i * exp(-i omega H).
struct EvolutionOp {
    int system_qubits = 0;
    std::function<void(StateVector&)> apply;        // acts on the joint register
    std::function<void(StateVector&)> apply_dagger;
    std::shared_ptr<const Circuit> circuit;         // gate form; null for exact
};

// Spectrally exact controlled propagator. Shares the eigensystem, so repeated
// application costs two matrix-vector products per branch.
EvolutionOp make_exact_evolution(std::shared_ptr<const Spectrum> spec, double omega,
                                 int num_system_qubits);

// Same operator as an opaque circuit block over the joint register.
std::shared_ptr<const OpaqueOp> exact_evolution_block(
    std::shared_ptr<const Spectrum> spec, double omega, int num_system_qubits);

// Product-formula circuit for exp(-i omega H) on the bare system register.
// Terms sweep in Hamiltonian list order; order 2 symmetrizes each step with
// half-angle forward and reverse sweeps.
Circuit build_trotter(const PauliHamiltonian& h, const EvolutionConfig& cfg);

// Controlled product formula on q+1 qubits. The branch structure comes from
// rotating each term jointly with Z on the ancilla, plus one ancilla phase
// gate for the i prefactor of branch 1.
Circuit build_controlled_trotter(const PauliHamiltonian& h, const EvolutionConfig& cfg);

// Gate-backed EvolutionOp built from build_controlled_trotter.
EvolutionOp make_trotter_evolution(const PauliHamiltonian& h, const EvolutionConfig& cfg);

// Spectral-norm distance between the compiled product formula and the exact
// propagator (controlled or bare, matching `controlled`). Dense comparison,
// capped at kMaxTrotterCompareQubits system qubits.
double trotter_error(const PauliHamiltonian& h, const EvolutionConfig& cfg,
                     bool controlled = true);

// Smallest step count from {1, 2, 4, ..., 256} whose controlled circuit meets
// `target` in spectral norm. Throws CapabilityError if the cap falls short.
int choose_trotter_steps(const PauliHamiltonian& h, EvolutionConfig cfg, double target);

} // namespace qaae
