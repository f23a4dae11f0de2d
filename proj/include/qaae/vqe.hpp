#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qaae/ansatz.hpp"
#include "qaae/pauli.hpp"

namespace qaae {

struct VqeConfig {
    double learning_rate = 0.05;
    int max_iters = 10000;
    double eps_h = 1e-6;  // halt when |E_t - E_{t-1}| drops below this
    double fd_step = 1e-4;
    std::uint64_t seed = 0;
    // Stop once this many trial preparations were spent (budget parity with
    // the amplification loop). Unset means iterate to max_iters or halt.
    std::optional<long> prep_budget;
};

struct VqeIterRecord {
    int iter = 0;
    double energy_norm = 0.0;
    double energy_phys = 0.0;
    double grad_norm = 0.0;
    bool halted = false;
};

struct VqeResult {
    Params theta;
    std::vector<VqeIterRecord> records;
    double final_energy_norm = 0.0;
    double final_energy_phys = 0.0;
    bool halted = false;
    long prep_count = 0;
    std::uint64_t seed = 0;
};

// <alpha(theta)| H |alpha(theta)>.
double vqe_energy(const PauliHamiltonian& h, const AnsatzSpec& a, const Params& theta);

// Plain constant-rate gradient descent on the energy, starting from the
// seed's init stream. Matches the state learner's optimizer and gradient
// protocol so resource comparisons are like for like.
VqeResult run_vqe(const PauliHamiltonian& h, const AnsatzSpec& a, const VqeConfig& cfg);

} // namespace qaae
