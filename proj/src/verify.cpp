#include "qaae/verify.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <sstream>

#include "qaae/amplifier.hpp"
#include "qaae/ansatz.hpp"
#include "qaae/driver.hpp"
#include "qaae/errors.hpp"
#include "qaae/evolution.hpp"
#include "qaae/learner.hpp"
#include "qaae/pauli.hpp"
#include "qaae/rng.hpp"
#include "qaae/simulator.hpp"
#include "qaae/util.hpp"

namespace qaae {

namespace {

StateVector random_state(int num_qubits, CounterRng& rng) {
    StateVector s;
    s.num_qubits = num_qubits;
    s.amps.resize(std::size_t{1} << num_qubits);
    for (auto& a : s.amps)
        a = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    normalize(s);
    return s;
}

std::string fmt(double v) { return format_real17(v); }

CheckResult check_branch_probabilities(std::uint64_t seed) {
    CheckResult c{"branch-probabilities", false, ""};
    CounterRng rng(seed, 77);
    double worst = 0.0;
    for (const PauliHamiltonian& h :
         {build_two_level(0.37, {0.21, 0.1, -0.3}), build_ltfim(3, 1.0, 0.7)}) {
        const PauliHamiltonian hn = normalize_affine(h, 0.05, 0.95);
        auto spec = std::make_shared<Spectrum>(spectrum(hn));
        const EvolutionOp u = make_exact_evolution(spec, M_PI / 4, hn.num_qubits);
        for (int trial = 0; trial < 6; ++trial) {
            const StateVector psi = random_state(hn.num_qubits, rng);
            for (KPolicy kp : {KPolicy::K0, KPolicy::K1}) {
                MeasurePolicy mp{kp, nullptr};
                const RoundOutput out = amplify_round_state(psi, u, mp);
                worst = std::max(worst, std::abs(out.p_k - 0.5));
            }
        }
    }
    c.pass = worst <= 1e-12;
    c.detail = "max |p_k - 1/2| = " + fmt(worst);
    return c;
}

CheckResult check_gain_identity(std::uint64_t seed) {
    CheckResult c{"gain-identity", false, ""};
    CounterRng rng(seed, 78);
    const PauliHamiltonian h =
        normalize_affine(build_ltfim(3, 1.2, 0.4), 0.05, 0.95);
    auto spec = std::make_shared<Spectrum>(spectrum(h));
    const EvolutionOp u = make_exact_evolution(spec, M_PI / 4, h.num_qubits);
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const StateVector psi = random_state(h.num_qubits, rng);
        const RoundDiagnostics d = round_diagnostics(psi, *spec, M_PI / 4);
        MeasurePolicy mp{trial % 2 == 0 ? KPolicy::K0 : KPolicy::K1, nullptr};
        const RoundOutput out = amplify_round_state(psi, u, mp);
        const double measured =
            ground_overlap(out.phi_out, *spec) - ground_overlap(psi, *spec);
        worst = std::max(worst, std::abs(measured - d.delta_predicted));
    }
    c.pass = worst <= 1e-10;
    c.detail = "max |delta - predicted| = " + fmt(worst);
    return c;
}

CheckResult check_component_update(std::uint64_t seed) {
    CheckResult c{"component-update-law", false, ""};
    CounterRng rng(seed, 79);
    const PauliHamiltonian h =
        normalize_affine(build_ltfim(2, 0.9, 0.5), 0.05, 0.95);
    auto spec = std::make_shared<Spectrum>(spectrum(h));
    const EvolutionOp u = make_exact_evolution(spec, M_PI / 4, h.num_qubits);
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const StateVector psi = random_state(h.num_qubits, rng);
        const RoundDiagnostics d = round_diagnostics(psi, *spec, M_PI / 4);
        MeasurePolicy mp{KPolicy::K0, nullptr};
        const RoundOutput out = amplify_round_state(psi, u, mp);
        for (int j = 0; j < spec->levels(); ++j) {
            Eigen::Map<const Eigen::VectorXcd> v(
                out.phi_out.amps.data(),
                static_cast<Eigen::Index>(out.phi_out.amps.size()));
            const cplx gj = spec->vectors.col(j).dot(v);
            worst = std::max(worst,
                             std::abs(std::norm(gj) - d.gamma_sq_predicted[j]));
        }
    }
    c.pass = worst <= 1e-10;
    c.detail = "max component deviation = " + fmt(worst);
    return c;
}

CheckResult check_interference_phase(std::uint64_t seed) {
    CheckResult c{"interference-phase", false, ""};
    CounterRng rng(seed, 80);
    const PauliHamiltonian h =
        normalize_affine(build_ltfim(3, 0.8, 1.1), 0.05, 0.95);
    const Spectrum spec = spectrum(h);
    const double omega = M_PI / 4;
    double worst_phase = 0.0, worst_sum = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const StateVector psi = random_state(h.num_qubits, rng);
        Eigen::Map<const Eigen::VectorXcd> v(
            psi.amps.data(), static_cast<Eigen::Index>(psi.amps.size()));
        const Eigen::VectorXcd gamma = spec.vectors.adjoint() * v;
        // W = sum_j |gamma_j|^2 cos(pi/4 - omega lambda_j) e^{i pi/4}
        cplx w = 0.0;
        for (int j = 0; j < spec.levels(); ++j)
            w += std::norm(gamma(j)) *
                 std::cos(M_PI / 4 - omega * spec.values(j)) *
                 std::exp(cplx(0, M_PI / 4));
        // Compare against the direct overlap <Psi|U|Psi> on the joint register.
        auto sp = std::make_shared<Spectrum>(spec);
        const EvolutionOp u = make_exact_evolution(sp, omega, h.num_qubits);
        StateVector joint = join_plus_ancilla(psi);
        const StateVector before = joint;
        u.apply(joint);
        const cplx w_direct = inner(before, joint);
        worst_phase = std::max(worst_phase, std::abs(w_direct - w));
        const RoundDiagnostics d = round_diagnostics(psi, spec, omega);
        double zero_sum = 0.0;
        for (int j = 0; j < spec.levels(); ++j)
            zero_sum += (d.w_abs - std::cos(M_PI / 4 - omega * spec.values(j))) *
                        std::norm(gamma(j));
        worst_sum = std::max(worst_sum, std::abs(zero_sum));
    }
    c.pass = worst_phase <= 1e-10 && worst_sum <= 1e-10;
    c.detail = "overlap deviation = " + fmt(worst_phase) +
               ", weight balance = " + fmt(worst_sum);
    return c;
}

CheckResult check_deviation_bound(std::uint64_t seed) {
    CheckResult c{"learning-deviation-bound", false, ""};
    CounterRng rng(seed, 81);
    const PauliHamiltonian h =
        normalize_affine(build_ltfim(2, 1.0, 0.6), 0.05, 0.95);
    const Spectrum spec = spectrum(h);
    double worst_margin = -1.0;
    try {
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector a = random_state(h.num_qubits, rng);
            StateVector b = a;
            for (auto& amp : b.amps)
                amp += 0.05 * cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            normalize(b);
            const DeviationReport rep = learn_deviation(a, b, spec);
            worst_margin = std::max(worst_margin, rep.deviation - rep.bound);
        }
        c.pass = true;
    } catch (const NumericError&) {
        c.pass = false;
    }
    c.detail = "max (deviation - bound) = " + fmt(worst_margin);
    return c;
}

CheckResult check_monotone_run(std::uint64_t seed) {
    CheckResult c{"monotone-oracle-run", false, ""};
    RunConfig cfg;
    cfg.model = ModelKind::TwoLevel;
    cfg.alpha = 0.5;
    cfg.r = {0.25, 0.0, 0.0};
    cfg.family = AnsatzFamily::Oracle;
    cfg.seed = seed;
    cfg.eps_h = 1e-12;
    cfg.max_rounds = 40;
    // Slightly rotated start keeps the ground weight below one.
    StateVector init = zero_state(1);
    init.amps[0] = 0.8;
    init.amps[1] = 0.6;
    cfg.oracle_init = std::make_shared<StateVector>(std::move(init));
    const RunResult res = run_qaae(cfg);
    bool monotone = true;
    double prev = 0.0;
    for (const auto& rec : res.records) {
        if (rec.gamma_before < prev - 1e-12) monotone = false;
        prev = rec.gamma_before;
    }
    if (res.final_fidelity < prev - 1e-12) monotone = false;
    c.pass = monotone && res.final_fidelity > 0.999;
    c.detail = "final ground weight = " + fmt(res.final_fidelity) +
               (monotone ? ", monotone" : ", NOT monotone");
    return c;
}

CheckResult check_reflection_gate_form(std::uint64_t seed) {
    CheckResult c{"reflection-gate-form", false, ""};
    CounterRng rng(seed, 82);
    AnsatzSpec a;
    a.family = AnsatzFamily::HardwareEfficient;
    a.num_qubits = 3;
    a.layers = 2;
    a.axes = "yz";
    const Params theta = random_init(a, seed + 5);
    const ReflectionOp refl = build_reflection(a, theta);
    const Circuit rc = reflection_circuit(a);
    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        StateVector x = random_state(a.num_qubits + 1, rng);
        StateVector y = x;
        refl.apply(x);
        apply_circuit(y, rc, theta);
        for (std::size_t i = 0; i < x.amps.size(); ++i)
            worst = std::max(worst, std::abs(x.amps[i] - y.amps[i]));
    }
    c.pass = worst <= 1e-10;
    c.detail = "max amplitude deviation = " + fmt(worst);
    return c;
}

CheckResult check_controlled_single_term(std::uint64_t) {
    CheckResult c{"controlled-single-term", false, ""};
    // A single commuting term makes any product formula exact.
    PauliHamiltonian h;
    h.num_qubits = 2;
    h.terms.push_back(term_from_string(0.8375, "XZ"));
    EvolutionConfig ec;
    ec.backend = EvolutionBackend::Trotter;
    ec.steps = 1;
    double worst = trotter_error(h, ec, /*controlled=*/true);
    worst = std::max(worst, trotter_error(h, ec, /*controlled=*/false));
    c.pass = worst <= 1e-10;
    c.detail = "spectral-norm error = " + fmt(worst);
    return c;
}

CheckResult check_depth_bounds(std::uint64_t) {
    CheckResult c{"depth-accounting", false, ""};
    RunConfig cfg;
    cfg.model = ModelKind::Ltfim;
    cfg.n = 4;
    cfg.g = 1.0;
    cfg.h = 1.0;
    cfg.family = AnsatzFamily::HardwareEfficient;
    cfg.layers = 2;
    cfg.axes = "y";
    cfg.evolution.backend = EvolutionBackend::Trotter;
    cfg.evolution.steps = 2;
    const DepthReport rep = depth_report(cfg);
    c.pass = rep.bound_ok && rep.d_round > 0;
    std::ostringstream os;
    os << "round depth " << rep.d_round << " vs bound "
       << rep.d_ansatz + 2 * (rep.d_reflection + rep.d_evolution);
    c.detail = os.str();
    return c;
}

CheckResult check_reproducibility(std::uint64_t seed) {
    CheckResult c{"reproducibility", false, ""};
    RunConfig cfg;
    cfg.model = ModelKind::TwoLevel;
    cfg.family = AnsatzFamily::Single;
    cfg.seed = seed;
    cfg.k_policy = KPolicy::Sample;
    cfg.shots = 256;
    cfg.max_rounds = 12;
    std::ostringstream a, b;
    emit_run_csv(a, run_qaae(cfg), 0, true);
    emit_run_csv(b, run_qaae(cfg), 0, true);
    c.pass = !a.str().empty() && a.str() == b.str();
    c.detail = c.pass ? "identical output across repeated runs"
                      : "output differs across repeated runs";
    return c;
}

} // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(check_branch_probabilities(seed));
    out.push_back(check_gain_identity(seed));
    out.push_back(check_component_update(seed));
    out.push_back(check_interference_phase(seed));
    out.push_back(check_deviation_bound(seed));
    out.push_back(check_monotone_run(seed));
    out.push_back(check_reflection_gate_form(seed));
    out.push_back(check_controlled_single_term(seed));
    out.push_back(check_depth_bounds(seed));
    out.push_back(check_reproducibility(seed));
    return out;
}

} // namespace qaae
