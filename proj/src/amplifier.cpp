#include "qaae/amplifier.hpp"

#include <cmath>

#include "qaae/errors.hpp"

namespace qaae {

double ground_overlap(const StateVector& sys, const Spectrum& spec) {
    if (static_cast<Eigen::Index>(sys.dim()) != spec.values.size())
        throw ConfigError("ground_overlap: dimension mismatch");
    Eigen::Map<const Eigen::VectorXcd> v(sys.amps.data(), sys.dim());
    return std::norm(spec.vectors.col(0).dot(v));
}

RoundDiagnostics round_diagnostics(const StateVector& trial, const Spectrum& spec,
                                   double omega) {
    if (static_cast<Eigen::Index>(trial.dim()) != spec.values.size())
        throw ConfigError("round_diagnostics: dimension mismatch");
    const int d = spec.levels();
    Eigen::Map<const Eigen::VectorXcd> v(trial.amps.data(), trial.dim());
    Eigen::VectorXcd gamma = spec.vectors.adjoint() * v;

    RoundDiagnostics diag;
    diag.gamma_sq.resize(d);
    std::vector<double> cosl(d);
    for (int j = 0; j < d; ++j) {
        diag.gamma_sq[j] = std::norm(gamma(j));
        // At omega = pi/4 this is cos((pi/4) * (1 - lambda_j)).
        cosl[j] = std::cos(M_PI / 4 - omega * spec.values(j));
        diag.w_abs += diag.gamma_sq[j] * cosl[j];
    }
    diag.chi = 4.0 * diag.w_abs * diag.w_abs - 1.0;
    diag.xi0 = diag.w_abs - cosl[0];
    diag.delta_predicted =
        4.0 * diag.w_abs * diag.chi * diag.xi0 * diag.gamma_sq[0];
    diag.gamma_sq_predicted.resize(d);
    for (int j = 0; j < d; ++j)
        diag.gamma_sq_predicted[j] =
            (1.0 + 4.0 * diag.w_abs * diag.chi * (diag.w_abs - cosl[j])) *
            diag.gamma_sq[j];

    const bool gapped = d > 1 && spec.values(1) - spec.values(0) > 1e-12;
    const bool window_ok =
        spec.values(0) > 0.0 && spec.values(d - 1) <= 1.0 + 1e-12;
    diag.valid = gapped && window_ok;
    diag.c_star = 0.0;
    if (gapped) {
        const double c0 = cosl[0], c1 = cosl[1];
        diag.c_star = 4.0 * c0 * (4.0 * c0 * c0 - 1.0) * (c1 - c0);
    }
    return diag;
}

RoundOutput amplify_round_state(const StateVector& trial, const EvolutionOp& u,
                                const MeasurePolicy& policy) {
    if (trial.num_qubits != u.system_qubits)
        throw ConfigError("amplify_round: trial does not match evolution register");
    StateVector psi = join_plus_ancilla(trial);

    // Reflection about the embedded trial; built once, applied twice.
    const StateVector ref = psi;
    auto reflect = [&ref](StateVector& s) {
        const cplx ov = inner(ref, s);
        for (std::size_t i = 0; i < s.dim(); ++i)
            s.amps[i] -= 2.0 * ov * ref.amps[i];
    };

    u.apply_dagger(psi);
    reflect(psi);
    u.apply(psi);
    reflect(psi);

    MeasureResult m = measure_ancilla(psi, trial.num_qubits, policy);
    RoundOutput out;
    out.phi_out = std::move(m.system);
    out.k = m.k;
    out.p_k = m.p_k;
    return out;
}

RoundOutput amplify_round(const AnsatzSpec& a, const Params& theta,
                          const EvolutionOp& u, const MeasurePolicy& policy) {
    return amplify_round_state(prepare_trial(a, theta), u, policy);
}

} // namespace qaae
