#include "qaae/evolution.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qaae/errors.hpp"
#include "qaae/simulator.hpp"

namespace qaae {

namespace {

// Branch phases for the controlled propagator at eigenvalue lambda.
inline cplx branch0_phase(double omega, double lambda) {
    return std::polar(1.0, omega * lambda);
}
inline cplx branch1_phase(double omega, double lambda) {
    return cplx{0.0, 1.0} * std::polar(1.0, -omega * lambda);
}

void apply_exact(const Spectrum& spec, double omega, bool dagger, StateVector& joint) {
    const int q = joint.num_qubits - 1;
    const std::size_t d = std::size_t{1} << q;
    if (spec.values.size() != static_cast<Eigen::Index>(d))
        throw ConfigError("exact evolution: register does not match spectrum");
    Eigen::Map<Eigen::VectorXcd> b0(joint.amps.data(), d);
    Eigen::Map<Eigen::VectorXcd> b1(joint.amps.data() + d, d);
    Eigen::VectorXcd coef;
    for (int branch = 0; branch < 2; ++branch) {
        auto& b = branch ? b1 : b0;
        coef.noalias() = spec.vectors.adjoint() * b;
        for (Eigen::Index j = 0; j < coef.size(); ++j) {
            cplx ph = branch ? branch1_phase(omega, spec.values(j))
                             : branch0_phase(omega, spec.values(j));
            if (dagger) ph = std::conj(ph);
            coef(j) *= ph;
        }
        b.noalias() = spec.vectors * coef;
    }
}

// Appends exp(i angle * S) where S is the Pauli string (x_mask, z_mask) over
// the circuit's register: basis changes to Z, a CNOT parity ladder, one Rz,
// then the mirror. Phase-exact, no global-phase slack.
void append_string_rotation(Circuit& c, std::uint64_t x_mask, std::uint64_t z_mask,
                            double angle) {
    std::vector<int> support;
    for (int j = 0; j < c.num_qubits; ++j)
        if (((x_mask | z_mask) >> j) & 1) support.push_back(j);
    if (support.empty()) return; // identity term: affine offsets are handled upstream

    std::vector<Gate> pre, post;
    for (int j : support) {
        const bool x = (x_mask >> j) & 1, z = (z_mask >> j) & 1;
        if (x && z) {
            pre.push_back(make_fixed_rotation(GateKind::Rx, j, M_PI / 2));
            post.push_back(make_fixed_rotation(GateKind::Rx, j, -M_PI / 2));
        } else if (x) {
            pre.push_back(make_gate(GateKind::H, {j}));
            post.push_back(make_gate(GateKind::H, {j}));
        }
    }

    for (auto& g : pre) c.add(std::move(g));
    for (std::size_t i = 0; i + 1 < support.size(); ++i)
        c.add(make_gate(GateKind::CNOT, {support[i], support[i + 1]}));
    // exp(i a Z) = Rz(-2a) on the parity qubit.
    c.add(make_fixed_rotation(GateKind::Rz, support.back(), -2.0 * angle));
    for (std::size_t i = support.size() - 1; i-- > 0;)
        c.add(make_gate(GateKind::CNOT, {support[i], support[i + 1]}));
    for (auto it = post.rbegin(); it != post.rend(); ++it) c.add(std::move(*it));
}

// One product-formula sweep with per-term angle scale * coeff; `anc_z`
// extends each string with Z on the ancilla qubit (index q).
void append_sweep(Circuit& c, const PauliHamiltonian& h, double scale, bool anc_z,
                  int order) {
    const std::uint64_t anc_bit =
        anc_z ? (std::uint64_t{1} << h.num_qubits) : 0;
    auto emit = [&](double factor) {
        for (const auto& t : h.terms)
            append_string_rotation(c, t.x_mask, t.z_mask | anc_bit,
                                   factor * scale * t.coeff);
    };
    auto emit_reverse = [&](double factor) {
        for (auto it = h.terms.rbegin(); it != h.terms.rend(); ++it)
            append_string_rotation(c, it->x_mask, it->z_mask | anc_bit,
                                   factor * scale * it->coeff);
    };
    if (order == 1) {
        emit(1.0);
    } else {
        emit(0.5);
        emit_reverse(0.5);
    }
}

void check_cfg(const EvolutionConfig& cfg) {
    if (cfg.order != 1 && cfg.order != 2)
        throw ConfigError("evolution: order must be 1 or 2");
    if (cfg.steps < 1 || cfg.steps > kMaxTrotterSteps)
        throw ConfigError("evolution: steps out of range");
    if (!(cfg.omega > 0.0))
        throw ConfigError("evolution: omega must be positive");
}

Eigen::MatrixXcd circuit_dense(const Circuit& c) {
    const std::size_t d = std::size_t{1} << c.num_qubits;
    Eigen::MatrixXcd m(d, d);
    for (std::size_t col = 0; col < d; ++col) {
        StateVector s = basis_state(c.num_qubits, col);
        apply_circuit(s, c, {});
        for (std::size_t row = 0; row < d; ++row) m(row, col) = s.amps[row];
    }
    return m;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m);
    if (es.info() != Eigen::Success)
        throw NumericError("spectral_norm: eigensolver failed");
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

} // namespace

EvolutionOp make_exact_evolution(std::shared_ptr<const Spectrum> spec, double omega,
                                 int num_system_qubits) {
    if (!spec) throw ConfigError("make_exact_evolution: null spectrum");
    if (spec->values.size() != Eigen::Index{1} << num_system_qubits)
        throw ConfigError("make_exact_evolution: spectrum size mismatch");
    EvolutionOp op;
    op.system_qubits = num_system_qubits;
    op.apply = [spec, omega](StateVector& s) { apply_exact(*spec, omega, false, s); };
    op.apply_dagger = [spec, omega](StateVector& s) { apply_exact(*spec, omega, true, s); };
    return op;
}

std::shared_ptr<const OpaqueOp> exact_evolution_block(
    std::shared_ptr<const Spectrum> spec, double omega, int num_system_qubits) {
    EvolutionOp op = make_exact_evolution(spec, omega, num_system_qubits);
    auto block = std::make_shared<OpaqueOp>();
    block->name = "ctrl-evolution-exact";
    block->num_qubits = num_system_qubits + 1;
    block->declared_depth = 1;
    block->apply = op.apply;
    block->apply_dagger = op.apply_dagger;
    return block;
}

Circuit build_trotter(const PauliHamiltonian& h, const EvolutionConfig& cfg) {
    check_cfg(cfg);
    Circuit c;
    c.num_qubits = h.num_qubits;
    // Approximates exp(-i omega H): every term rotates by -omega w / steps.
    const double scale = -cfg.omega / cfg.steps;
    for (int s = 0; s < cfg.steps; ++s) append_sweep(c, h, scale, false, cfg.order);
    return c;
}

Circuit build_controlled_trotter(const PauliHamiltonian& h, const EvolutionConfig& cfg) {
    check_cfg(cfg);
    Circuit c;
    c.num_qubits = h.num_qubits + 1;
    const int anc = h.num_qubits;
    // diag(1, i) on the ancilla carries the branch-1 prefactor.
    c.add(make_mcphase({anc}, 1, M_PI / 2));
    // Z-conditioned rotations give branch 0 the +omega evolution and branch 1
    // the -omega evolution in one string exponential per term.
    const double scale = cfg.omega / cfg.steps;
    for (int s = 0; s < cfg.steps; ++s) append_sweep(c, h, scale, true, cfg.order);
    return c;
}

EvolutionOp make_trotter_evolution(const PauliHamiltonian& h, const EvolutionConfig& cfg) {
    auto circ = std::make_shared<Circuit>(build_controlled_trotter(h, cfg));
    auto inv = std::make_shared<Circuit>(inverse_circuit(*circ));
    EvolutionOp op;
    op.system_qubits = h.num_qubits;
    op.circuit = circ;
    op.apply = [circ](StateVector& s) { apply_circuit(s, *circ, {}); };
    op.apply_dagger = [inv](StateVector& s) { apply_circuit(s, *inv, {}); };
    return op;
}

double trotter_error(const PauliHamiltonian& h, const EvolutionConfig& cfg,
                     bool controlled) {
    if (h.num_qubits > kMaxTrotterCompareQubits)
        throw CapabilityError("trotter_error: above dense-comparison cap");
    Spectrum spec = spectrum(h);
    const std::size_t d = h.dim();
    Eigen::MatrixXcd target;
    Circuit circ;
    if (controlled) {
        circ = build_controlled_trotter(h, cfg);
        target = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
        Eigen::VectorXcd ph0(d), ph1(d);
        for (std::size_t j = 0; j < d; ++j) {
            ph0(j) = branch0_phase(cfg.omega, spec.values(j));
            ph1(j) = branch1_phase(cfg.omega, spec.values(j));
        }
        target.topLeftCorner(d, d) =
            spec.vectors * ph0.asDiagonal() * spec.vectors.adjoint();
        target.bottomRightCorner(d, d) =
            spec.vectors * ph1.asDiagonal() * spec.vectors.adjoint();
    } else {
        circ = build_trotter(h, cfg);
        // The bare circuit cannot express the identity term (a global phase),
        // so the comparison removes that shift from the target.
        double w_id = 0.0;
        for (const auto& t : h.terms)
            if (t.x_mask == 0 && t.z_mask == 0) w_id += t.coeff;
        Eigen::VectorXcd ph(d);
        for (std::size_t j = 0; j < d; ++j)
            ph(j) = std::polar(1.0, -cfg.omega * (spec.values(j) - w_id));
        target = spec.vectors * ph.asDiagonal() * spec.vectors.adjoint();
    }
    return spectral_norm(circuit_dense(circ) - target);
}

int choose_trotter_steps(const PauliHamiltonian& h, EvolutionConfig cfg, double target) {
    if (!(target > 0.0)) throw ConfigError("choose_trotter_steps: target must be positive");
    for (int nu = 1; nu <= kMaxTrotterSteps; nu *= 2) {
        cfg.steps = nu;
        if (trotter_error(h, cfg, true) <= target) return nu;
    }
    throw CapabilityError("choose_trotter_steps: step cap reached without meeting target");
}

} // namespace qaae
