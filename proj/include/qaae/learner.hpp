#pragma once

#include <optional>
#include <vector>

#include "qaae/ansatz.hpp"
#include "qaae/pauli.hpp"
#include "qaae/rng.hpp"
#include "qaae/statevector.hpp"

namespace qaae {

enum class GradMethod { ParameterShift, CentralFd };

struct LearnConfig {
    double learning_rate = 0.05;
    int n_max = 500;                      // gradient-step cap per call
    double target_fidelity = 1.0 - 1e-10; // early stop on |<target|trial>|^2
    GradMethod grad_method = GradMethod::ParameterShift;
    double fd_step = 1e-4;
};

struct LearnResult {
    Params theta;
    int steps = 0;
    double final_fidelity = 0.0;
    double eps = 0.0; // trace distance between learned trial and target
    bool converged = false;
    long prep_count = 0; // trial preparations at parameter-shift protocol cost
    std::vector<double> objective_trace;
    // Oracle family: the adopted state (identical to the target).
    std::optional<StateVector> state;
};

// sqrt(1 - |<a|b>|^2), the trace distance between the two pure states.
double trace_distance_pure(const StateVector& a, const StateVector& b);

// D^2 - log(1 - D^2) on D in [0, 1); D is clamped to 1 - 1e-12 first.
double objective_value(double trace_dist);

// Descends the objective from theta0 toward `target` with plain constant-rate
// gradient descent. Fixed-axis rotation slots differentiate by the exact
// shift rule; other families fall back to central differences of step
// cfg.fd_step. The oracle family adopts the target outright.
LearnResult learn_state(const AnsatzSpec& a, const Params& theta0,
                        const StateVector& target, const LearnConfig& cfg);

// Max absolute deviation between the configured gradient and a central
// finite-difference oracle with step 1e-5, evaluated on the objective.
double gradient_check(const AnsatzSpec& a, const Params& theta,
                      const StateVector& target, const LearnConfig& cfg);

// Angle whose meridian state reproduces the normalized (cx, cz) direction.
double bloch_reencode(double cx, double cz);

// Bloch angle measured from a one-qubit state; shots > 0 draws both axes
// from the finite-shot estimator.
double bloch_angle_from_state(const StateVector& phi, int shots = 0,
                              CounterRng* rng = nullptr);

// |Gamma(phi_out) - Gamma(trial)| together with its trace-distance bound.
// Throws NumericError if the bound is violated beyond 1e-12.
struct DeviationReport {
    double deviation = 0.0;
    double bound = 0.0;
};
DeviationReport learn_deviation(const StateVector& phi_out, const StateVector& trial,
                                const Spectrum& spec);

} // namespace qaae
