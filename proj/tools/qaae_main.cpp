// Command-line front end: run / sweep / vqe / verify / depth.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qaae/driver.hpp"
#include "qaae/errors.hpp"
#include "qaae/verify.hpp"

namespace {

using namespace qaae;

struct CliState {
    RunConfig cfg;
    std::string seeds;   // "S0..S1" inclusive range
    std::string out;     // file prefix; stdout CSV when empty
    VqeConfig vqe;
    long budget = 0;     // per-run preparation cap for vqe, 0 = none
};

void add_model_options(CLI::App* sub, CliState& st) {
    // Long-form help only: the field flag --h needs the short -h name free.
    sub->set_help_flag("--help", "print help");
    static const std::map<std::string, ModelKind> models{
        {"two-level", ModelKind::TwoLevel},
        {"ltfim", ModelKind::Ltfim},
        {"file", ModelKind::File}};
    sub->add_option("--model", st.cfg.model, "two-level | ltfim | file")
        ->transform(CLI::CheckedTransformer(models, CLI::ignore_case));
    sub->add_option("--alpha", st.cfg.alpha, "two-level: identity coefficient");
    sub->add_option("--rx", st.cfg.r[0], "two-level: X coefficient");
    sub->add_option("--ry", st.cfg.r[1], "two-level: Y coefficient");
    sub->add_option("--rz", st.cfg.r[2], "two-level: Z coefficient");
    sub->add_option("--n", st.cfg.n, "ltfim: chain length");
    sub->add_option("--g", st.cfg.g, "ltfim: transverse field");
    sub->add_option("--h", st.cfg.h, "ltfim: longitudinal field");
    sub->add_option("--path", st.cfg.path, "file: Pauli-sum input");

    static const std::map<std::string, NormMode> norms{
        {"window", NormMode::Window}, {"fixed-ltfim", NormMode::FixedLtfim}};
    sub->add_option("--norm", st.cfg.norm_mode, "window | fixed-ltfim")
        ->transform(CLI::CheckedTransformer(norms, CLI::ignore_case));
    sub->add_option("--norm-lo", st.cfg.norm_lo, "window: lower edge");
    sub->add_option("--norm-hi", st.cfg.norm_hi, "window: upper edge");
}

void add_run_options(CLI::App* sub, CliState& st) {
    add_model_options(sub, st);

    static const std::map<std::string, AnsatzFamily> families{
        {"single", AnsatzFamily::Single},
        {"he", AnsatzFamily::HardwareEfficient},
        {"sud", AnsatzFamily::SuD},
        {"oracle", AnsatzFamily::Oracle}};
    sub->add_option("--ansatz", st.cfg.family, "single | he | sud | oracle")
        ->transform(CLI::CheckedTransformer(families, CLI::ignore_case));
    sub->add_option("--layers", st.cfg.layers, "hardware-efficient: entangler count");
    sub->add_option("--axes", st.cfg.axes, "hardware-efficient: rotation axes per rank");
    sub->add_flag("--cnot", st.cfg.cnot_entangler, "CNOT entangler chain instead of CZ");

    static const std::map<std::string, EvolutionBackend> backends{
        {"exact", EvolutionBackend::Exact}, {"trotter", EvolutionBackend::Trotter}};
    sub->add_option("--backend", st.cfg.evolution.backend, "exact | trotter")
        ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
    sub->add_option("--order", st.cfg.evolution.order, "product-formula order (1 or 2)");
    sub->add_option("--steps", st.cfg.evolution.steps, "product-formula step count");
    sub->add_option("--target-eps",
                    [&st](const std::vector<std::string>& v) {
                        st.cfg.evolution.target_eps = std::stod(v.front());
                        return true;
                    },
                    "pick the step count to meet this spectral-norm error")
        ->expected(1);

    sub->add_option("--nmax", st.cfg.learn.n_max, "gradient-step cap per round");
    sub->add_option("--lr", st.cfg.learn.learning_rate, "learning rate");
    sub->add_option("--nmax-late", st.cfg.nmax_late,
                    "step cap after the switch round (0 = flat schedule)");
    sub->add_option("--nmax-switch", st.cfg.nmax_switch_round,
                    "round after which --nmax-late applies");

    sub->add_option("--eps-h", st.cfg.eps_h, "halting threshold");
    static const std::map<std::string, HaltMode> halts{
        {"energy", HaltMode::Energy}, {"overlap", HaltMode::Overlap}};
    sub->add_option("--halt", st.cfg.halt_mode, "energy | overlap")
        ->transform(CLI::CheckedTransformer(halts, CLI::ignore_case));
    sub->add_option("--max-rounds", st.cfg.max_rounds, "round cap");
    sub->add_option("--seed", st.cfg.seed, "RNG seed");

    static const std::map<std::string, KPolicy> policies{
        {"k0", KPolicy::K0}, {"k1", KPolicy::K1}, {"sample", KPolicy::Sample}};
    sub->add_option("--k-policy", st.cfg.k_policy, "k0 | k1 | sample")
        ->transform(CLI::CheckedTransformer(policies, CLI::ignore_case));
    sub->add_option("--shots", st.cfg.shots,
                    "finite-shot axis readout (single-qubit ansatz only)");
    sub->add_option("--success-fidelity", st.cfg.success_fidelity,
                    "sweep success threshold");
    sub->add_option("--out", st.out, "write <PREFIX>.csv and <PREFIX>.json");
}

std::pair<std::uint64_t, int> parse_seed_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        throw ConfigError("--seeds expects an inclusive range S0..S1");
    const std::uint64_t s0 = std::stoull(text.substr(0, pos));
    const std::uint64_t s1 = std::stoull(text.substr(pos + 2));
    if (s1 < s0) throw ConfigError("--seeds range is empty");
    return {s0, static_cast<int>(s1 - s0 + 1)};
}

void emit_sweep(const CliState& st, const SweepResult& sweep) {
    if (st.out.empty()) {
        emit_sweep_csv(std::cout, sweep);
        return;
    }
    std::ofstream csv(st.out + ".csv");
    if (!csv) throw ConfigError("cannot open " + st.out + ".csv");
    emit_sweep_csv(csv, sweep);
    std::ofstream json(st.out + ".json");
    if (!json) throw ConfigError("cannot open " + st.out + ".json");
    json << summary_json(st.cfg, sweep) << "\n";
    std::cerr << "wrote " << st.out << ".csv and " << st.out << ".json\n";
}

int cmd_run(const CliState& st) {
    const SweepResult sweep = run_sweep(st.cfg, st.cfg.seed, 1);
    if (!sweep.aborts.empty()) {
        std::cerr << "error: " << sweep.aborts.front() << "\n";
        return 1;
    }
    emit_sweep(st, sweep);
    return 0;
}

int cmd_sweep(const CliState& st) {
    const auto [seed0, count] = parse_seed_range(st.seeds);
    const SweepResult sweep = run_sweep(st.cfg, seed0, count);
    for (const auto& a : sweep.aborts) std::cerr << "aborted: " << a << "\n";
    emit_sweep(st, sweep);
    return sweep.runs.empty() ? 1 : 0;
}

int cmd_vqe(const CliState& st) {
    std::uint64_t seed0 = st.cfg.seed;
    int count = 1;
    if (!st.seeds.empty()) std::tie(seed0, count) = parse_seed_range(st.seeds);
    VqeConfig vc = st.vqe;
    vc.learning_rate = st.cfg.learn.learning_rate;
    vc.eps_h = st.cfg.eps_h;
    std::vector<long> budgets;
    if (st.budget > 0) budgets.assign(count, st.budget);
    const auto runs = run_vqe_sweep(st.cfg, seed0, count, budgets, vc);
    if (st.out.empty()) {
        emit_vqe_csv(std::cout, runs);
    } else {
        std::ofstream csv(st.out + ".csv");
        if (!csv) throw ConfigError("cannot open " + st.out + ".csv");
        emit_vqe_csv(csv, runs);
        std::ofstream json(st.out + ".json");
        if (!json) throw ConfigError("cannot open " + st.out + ".json");
        json << vqe_summary_json(st.cfg, runs) << "\n";
        std::cerr << "wrote " << st.out << ".csv and " << st.out << ".json\n";
    }
    return 0;
}

int cmd_verify(std::uint64_t seed) {
    const auto checks = run_verification(seed);
    bool all = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
        all = all && c.pass;
    }
    std::cout << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
    return all ? 0 : 1;
}

int cmd_depth(const CliState& st) {
    const DepthReport rep = depth_report(st.cfg);
    std::cout << "qubits          " << rep.q << "\n"
              << "ansatz depth    " << rep.d_ansatz << "\n"
              << "reflection depth " << rep.d_reflection << "\n"
              << "evolution depth " << rep.d_evolution << "\n"
              << "round depth     " << rep.d_round << "\n"
              << "bound           "
              << rep.d_ansatz + 2 * (rep.d_reflection + rep.d_evolution) << "\n"
              << "bound_ok        " << (rep.bound_ok ? "yes" : "no") << "\n";
    return rep.bound_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Amplified eigenstate search on a dense statevector simulator"};
    app.require_subcommand(1);

    CliState st;
    auto* run = app.add_subcommand("run", "single seeded amplify-learn run");
    add_run_options(run, st);

    auto* sweep = app.add_subcommand("sweep", "seed-range sweep with aggregates");
    add_run_options(sweep, st);
    sweep->add_option("--seeds", st.seeds, "inclusive seed range S0..S1")
        ->required();

    auto* vqe = app.add_subcommand("vqe", "gradient-descent energy baseline");
    add_run_options(vqe, st);
    vqe->add_option("--seeds", st.seeds, "inclusive seed range S0..S1");
    vqe->add_option("--max-iters", st.vqe.max_iters, "iteration cap");
    vqe->add_option("--budget", st.budget,
                    "state-preparation cap per run (0 = unlimited)");

    std::uint64_t verify_seed = 0;
    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--seed", verify_seed, "suite RNG seed");

    auto* depth = app.add_subcommand("depth", "compiled depth accounting");
    add_run_options(depth, st);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(st);
        if (sweep->parsed()) return cmd_sweep(st);
        if (vqe->parsed()) return cmd_vqe(st);
        if (verify->parsed()) return cmd_verify(verify_seed);
        if (depth->parsed()) return cmd_depth(st);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
