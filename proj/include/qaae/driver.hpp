#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qaae/ansatz.hpp"
#include "qaae/evolution.hpp"
#include "qaae/learner.hpp"
#include "qaae/pauli.hpp"
#include "qaae/simulator.hpp"
#include "qaae/vqe.hpp"

namespace qaae {

enum class ModelKind { TwoLevel, Ltfim, File };

enum class NormMode {
    Window,     // rescale so the spectrum spans [lo, hi]
    FixedLtfim, // fixed a = 1/40, b = 1/2 chain convention
};

enum class HaltMode {
    Energy,  // |E_r - E_{r-1}| <= eps_h on the trial energy
    Overlap, // infidelity of consecutive round outputs <= eps_h
};

struct RunConfig {
    // model
    ModelKind model = ModelKind::TwoLevel;
    double alpha = 0.5;
    std::array<double, 3> r = {0.25, 0.0, 0.0};
    int n = 4;
    double g = 1.0;
    double h = 1.0;
    std::string path; // ModelKind::File

    // normalization
    NormMode norm_mode = NormMode::Window;
    double norm_lo = 0.05;
    double norm_hi = 0.95;

    // ansatz (num_qubits is filled in from the model)
    AnsatzFamily family = AnsatzFamily::Single;
    int layers = 1;
    std::string axes = "y";
    bool cnot_entangler = false;

    EvolutionConfig evolution;
    LearnConfig learn;
    // Optional two-phase step schedule: after nmax_switch_round rounds the
    // per-round cap changes to nmax_late (0 disables).
    int nmax_late = 0;
    int nmax_switch_round = 0;

    double eps_h = 1e-6;
    HaltMode halt_mode = HaltMode::Energy;
    int max_rounds = 10000;
    std::uint64_t seed = 0;
    KPolicy k_policy = KPolicy::K0;
    int shots = 0; // one-qubit re-encoding path only
    // Explicit starting parameters; random_init(seed) otherwise.
    std::optional<Params> theta_init;
    // Oracle family: starting state, |0...0> by default.
    std::shared_ptr<const StateVector> oracle_init;
    double success_fidelity = 0.99; // sweep success threshold
};

struct RoundRecord {
    int round = 0; // 1-based
    int k = 0;
    double p_k = 0.0;
    double gamma_before = 0.0;    // ground weight of the round's trial
    double gamma_after = 0.0;     // ground weight of the round output
    double delta = 0.0;           // gamma_after - gamma_before
    double delta_predicted = 0.0; // spectral prediction (0 when unavailable)
    double eps_r = 0.0;           // learning residual, trace distance
    double energy_norm = 0.0;     // trial energy after learning
    double energy_phys = 0.0;
    int learn_steps = 0;
    int depth_round = 0; // compiled round depth, gate-level backends only
    bool halted = false;
};

struct RunResult {
    std::uint64_t seed = 0;
    NormRecord norm;
    double lambda0_norm = 0.0;
    double lambda0_phys = 0.0;
    double c_star = 0.0;
    bool diagnostics = false; // spectral oracle available for this size
    std::vector<RoundRecord> records;
    double final_fidelity = 0.0; // ground weight of the final trial
    double final_energy_norm = 0.0;
    double final_energy_phys = 0.0;
    bool halted = false;
    long prep_count = 0;
    int rounds() const { return static_cast<int>(records.size()); }
};

// Builds the model Hamiltonian and applies the configured normalization.
PauliHamiltonian build_model(const RunConfig& cfg);

// Full amplify-measure-learn loop. Per round: prepare the trial, run one
// amplification round, learn the output back into the ansatz, log energies
// and gains, halt on the configured plateau rule.
RunResult run_qaae(const RunConfig& cfg);

// Audits the gain recursion across consecutive records:
// g_{r+1} >= g_r + c_star g_r (1 - g_r) - eps_r - 1e-9. Also flags rounds
// whose learning residual swamps the guaranteed gain (eps_r >= c_star g(1-g)),
// where monotonicity is no longer guaranteed. Needs the spectral oracle.
struct RecursionReport {
    int checked = 0;
    int violations = 0;
    int flagged = 0;
    bool ok() const { return checked > 0 && violations == 0; }
};
RecursionReport check_recursion(const RunResult& result);

// Depth accounting of one fully compiled round (gate backend required).
struct DepthReport {
    int q = 0;
    int d_ansatz = 0;
    int d_reflection = 0;
    int d_evolution = 0;
    int d_round = 0;
    bool bound_ok = false;
};
DepthReport depth_report(const RunConfig& cfg);

struct SweepAggregates {
    // Index r: statistics over runs at round r+1; halted runs carry their
    // final value forward so late rounds average over all seeds.
    std::vector<double> energy_err_mean, energy_err_sd;
    std::vector<double> fidelity_mean, fidelity_sd;
    double success_fraction = 0.0;
};

struct SweepResult {
    std::vector<RunResult> runs; // completed runs, in seed order
    std::vector<std::string> aborts; // per-run failures, recorded not fatal
    SweepAggregates agg;
};

// Runs seeds seed0 .. seed0 + count - 1.
SweepResult run_sweep(const RunConfig& cfg, std::uint64_t seed0, int count);

// VQE over the same model, seeds and ansatz; when budgets is nonempty, run i
// stops at budgets[i] preparations (parity with a prior amplification sweep).
std::vector<VqeResult> run_vqe_sweep(const RunConfig& cfg, std::uint64_t seed0,
                                     int count, const std::vector<long>& budgets,
                                     const VqeConfig& vqe_cfg);

// --- emission -------------------------------------------------------------

extern const char* kRunCsvHeader;
extern const char* kVqeCsvHeader;

void emit_run_csv(std::ostream& os, const RunResult& result, int run_id,
                  bool with_header);
void emit_sweep_csv(std::ostream& os, const SweepResult& sweep);
void emit_vqe_csv(std::ostream& os, const std::vector<VqeResult>& runs);

// Summary: config echo, normalization record, ground level, per-run totals
// and aggregate curves. Reals keep full double precision.
std::string summary_json(const RunConfig& cfg, const SweepResult& sweep);
std::string vqe_summary_json(const RunConfig& cfg, const std::vector<VqeResult>& runs);

} // namespace qaae
