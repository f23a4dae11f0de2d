#pragma once

#include <vector>

#include "qaae/ansatz.hpp"
#include "qaae/evolution.hpp"
#include "qaae/pauli.hpp"
#include "qaae/simulator.hpp"

namespace qaae {

// Spectral audit of one round at a given trial state. All quantities follow
// from the eigen-decomposition gamma_j = <lambda_j | trial> and the shifted
// angles cos(pi/4 - omega * lambda_j).
struct RoundDiagnostics {
    double w_abs = 0.0;           // |<Psi|U|Psi>|, the averaged cosine
    double chi = 0.0;             // 4 w_abs^2 - 1
    double xi0 = 0.0;             // w_abs - cos angle of the ground level
    double c_star = 0.0;          // spectral gain floor
    double delta_predicted = 0.0; // predicted ground-weight gain
    std::vector<double> gamma_sq;           // |gamma_j|^2 at the input
    std::vector<double> gamma_sq_predicted; // predicted |gamma_j|^2 after one round
    bool valid = false; // ground gap resolvable and spectrum inside (0, 1]
};

// |<lambda_0 | sys>|^2.
double ground_overlap(const StateVector& sys, const Spectrum& spec);

RoundDiagnostics round_diagnostics(const StateVector& trial, const Spectrum& spec,
                                   double omega);

struct RoundOutput {
    StateVector phi_out; // normalized post-measurement system state
    int k = 0;
    double p_k = 0.0;
};

// One amplification round: embed the trial with a |+> ancilla, apply
// U^dag, reflect, U, reflect, then measure the ancilla under `policy`.
RoundOutput amplify_round(const AnsatzSpec& a, const Params& theta,
                          const EvolutionOp& u, const MeasurePolicy& policy);

// Same round starting from an explicit trial state.
RoundOutput amplify_round_state(const StateVector& trial, const EvolutionOp& u,
                                const MeasurePolicy& policy);

} // namespace qaae
