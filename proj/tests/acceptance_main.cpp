// Acceptance gate for the amplify-learn eigensolver. Each numbered check
// prints one [PASS]/[FAIL] line with the measured quantities; the process
// exit code is the number of failing checks.
//
//   acceptance <data-dir> [<cli-binary>] [<ids>]
//
// <ids> is an optional comma list (e.g. "1,5,9") restricting which checks
// run; by default all thirteen run. The CLI binary path is needed only by
// check 13.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_helpers.hpp"
#include "qaae/amplifier.hpp"
#include "qaae/ansatz.hpp"
#include "qaae/driver.hpp"
#include "qaae/errors.hpp"
#include "qaae/evolution.hpp"
#include "qaae/learner.hpp"
#include "qaae/pauli.hpp"
#include "qaae/rng.hpp"
#include "qaae/simulator.hpp"
#include "qaae/statevector.hpp"
#include "qaae/vqe.hpp"

namespace {

using qaae::cplx;

constexpr double kOmega = 0.78539816339744831; // pi/4

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Stats {
    double mean = 0.0;
    double sd = 0.0;
};

Stats mean_sd(const std::vector<double>& v) {
    Stats s;
    if (v.empty()) return s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    if (v.size() > 1) {
        double acc = 0.0;
        for (double x : v) acc += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(acc / double(v.size() - 1));
    }
    return s;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

// Per-level weights |<lambda_j|s>|^2 in the given eigenbasis.
std::vector<double> level_weights(const qaae::Spectrum& spec,
                                  const qaae::StateVector& s) {
    const int d = spec.levels();
    std::vector<double> w(std::size_t(d), 0.0);
    for (int j = 0; j < d; ++j) {
        cplx g(0.0, 0.0);
        for (int i = 0; i < d; ++i)
            g += std::conj(spec.vectors(i, j)) * s.amps[std::size_t(i)];
        w[std::size_t(j)] = std::norm(g);
    }
    return w;
}

// A normalized random-instance Hamiltonian with its eigensystem and the
// exact controlled propagator.
struct Instance {
    qaae::PauliHamiltonian h;
    qaae::Spectrum spec;
    qaae::EvolutionOp u;
};

Instance wrap_instance(qaae::PauliHamiltonian h) {
    Instance inst;
    inst.h = std::move(h);
    inst.spec = qaae::spectrum(inst.h);
    auto sp = std::make_shared<const qaae::Spectrum>(inst.spec);
    inst.u = qaae::make_exact_evolution(sp, kOmega, inst.h.num_qubits);
    return inst;
}

// Random Pauli sum rescaled into [0.05, 0.95]; redraws until every adjacent
// spectral gap clears min_gap.
Instance random_instance(int q, qaae::CounterRng& rng, double min_gap) {
    const std::uint64_t mask = (std::uint64_t{1} << q) - 1;
    for (;;) {
        qaae::PauliHamiltonian raw;
        raw.num_qubits = q;
        for (int t = 0; t < 3 * q; ++t) {
            qaae::PauliTerm term;
            term.coeff = rng.uniform(-1.0, 1.0);
            term.x_mask = rng.next_u64() & mask;
            term.z_mask = rng.next_u64() & mask;
            if (term.x_mask == 0 && term.z_mask == 0) continue;
            qaae::accumulate_term(raw, term);
        }
        if (raw.terms.empty()) continue;
        try {
            Instance inst = wrap_instance(qaae::normalize_affine(raw, 0.05, 0.95));
            bool gapped = true;
            for (int j = 0; j + 1 < inst.spec.levels() && gapped; ++j)
                gapped = inst.spec.values(j + 1) - inst.spec.values(j) >= min_gap;
            if (gapped) return inst;
        } catch (const std::exception&) {
            // flat or too-narrow spectrum, redraw
        }
    }
}

// Ground-weight sequence of a run: trial weight entering each round, then
// the final trial weight.
std::vector<double> gain_sequence(const qaae::RunResult& res) {
    std::vector<double> g;
    for (const auto& rec : res.records) g.push_back(rec.gamma_before);
    g.push_back(res.final_fidelity);
    return g;
}

// Strictly increasing until the first entry >= 1 - 1e-6; past saturation the
// sequence sits at the float ceiling and is not constrained.
bool monotone_crossing(const std::vector<double>& g, int* cross = nullptr) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] >= 1.0 - 1e-6) {
            if (cross) *cross = int(i);
            return true;
        }
        if (i + 1 >= g.size() || !(g[i + 1] > g[i])) return false;
    }
    return false;
}

std::optional<std::string> read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// check 1: both ancilla outcomes of one amplification round carry weight
// exactly one half, for random Hamiltonians and random ansatz parameters.

Outcome check_1() {
    Timer t;
    qaae::CounterRng rng(101, 0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int q = 1 + i % 4;
        Instance inst = random_instance(q, rng, 0.0);
        qaae::AnsatzSpec a;
        a.num_qubits = q;
        if (i % 5 == 4) {
            a.family = qaae::AnsatzFamily::SuD;
        } else {
            a.family = qaae::AnsatzFamily::HardwareEfficient;
            a.layers = 1 + i % 2;
            a.axes = (i % 3 == 0) ? "y" : "zy";
        }
        const qaae::StateVector trial =
            qaae::prepare_trial(a, qaae::random_init(a, 1000 + std::uint64_t(i)));
        for (int k = 0; k < 2; ++k) {
            qaae::MeasurePolicy pol;
            pol.kind = k == 0 ? qaae::KPolicy::K0 : qaae::KPolicy::K1;
            const auto out = qaae::amplify_round_state(trial, inst.u, pol);
            worst = std::max(worst, std::abs(out.p_k - 0.5));
        }
    }
    const double secs = t.seconds();
    return {worst <= 1e-10 && secs < 5.0,
            "max |p_k - 1/2| " + fmt(worst) + " over 200 instances, both branches (" +
                fmt(secs) + " s)"};
}

// ---------------------------------------------------------------------------
// checks 2-4 share one set of 100 random nondegenerate normalized instances.
// 2: measured one-round gain equals 4|W| chi xi_0 |gamma_0|^2, sits above the
//    spectral floor, and is positive away from the endpoints.
// 3: every eigencomponent weight is multiplied by exactly 1 + 4|W| chi xi_j.
// 4: the round propagator's matrix element has phase pi/4, magnitude equal to
//    the weighted cosine sum, and the weighted xi sum vanishes.

std::array<Outcome, 3> checks_2_3_4() {
    Timer t;
    qaae::CounterRng rng(202, 0);
    double worst_delta = 0.0, worst_floor = 0.0;
    bool positive_ok = true;
    double worst_ratio = 0.0, worst_small = 0.0;
    double worst_arg = 0.0, worst_wsum = 0.0, worst_zsum = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int q = 1 + i % 4;
        Instance inst = random_instance(q, rng, 1e-4);
        const int d = inst.spec.levels();
        std::vector<double> cosl(std::size_t(d), 0.0);
        for (int j = 0; j < d; ++j)
            cosl[std::size_t(j)] =
                std::cos(M_PI / 4 - kOmega * inst.spec.values(j));

        qaae::StateVector trial;
        if (i % 2 == 0) {
            trial = oracle::random_state(q, rng);
        } else {
            qaae::AnsatzSpec a;
            a.family = qaae::AnsatzFamily::HardwareEfficient;
            a.num_qubits = q;
            a.layers = 1;
            a.axes = "zy";
            trial = qaae::prepare_trial(a, qaae::random_init(a, 7000 + std::uint64_t(i)));
        }

        const std::vector<double> before = level_weights(inst.spec, trial);
        double w = 0.0;
        for (int j = 0; j < d; ++j) w += before[std::size_t(j)] * cosl[std::size_t(j)];
        const double chi = 4.0 * w * w - 1.0;
        const double gamma0 = before[0];
        const double delta_pred = 4.0 * w * chi * (w - cosl[0]) * gamma0;
        const double c0 = cosl[0], c1 = cosl[1];
        const double c_star = 4.0 * c0 * (4.0 * c0 * c0 - 1.0) * (c1 - c0);

        for (int k = 0; k < 2; ++k) {
            qaae::MeasurePolicy pol;
            pol.kind = k == 0 ? qaae::KPolicy::K0 : qaae::KPolicy::K1;
            const auto out = qaae::amplify_round_state(trial, inst.u, pol);
            const std::vector<double> after = level_weights(inst.spec, out.phi_out);
            const double delta = after[0] - gamma0;
            worst_delta = std::max(worst_delta, std::abs(delta - delta_pred));
            worst_floor =
                std::max(worst_floor, c_star * gamma0 * (1.0 - gamma0) - delta);
            if (gamma0 > 1e-6 && gamma0 < 1.0 - 1e-6 && delta <= 0.0)
                positive_ok = false;
            for (int j = 0; j < d; ++j) {
                const double ratio_pred =
                    1.0 + 4.0 * w * chi * (w - cosl[std::size_t(j)]);
                if (before[std::size_t(j)] >= 1e-5)
                    worst_ratio = std::max(
                        worst_ratio,
                        std::abs(after[std::size_t(j)] / before[std::size_t(j)] -
                                 ratio_pred));
                else
                    worst_small = std::max(
                        worst_small,
                        std::abs(after[std::size_t(j)] -
                                 ratio_pred * before[std::size_t(j)]));
            }
        }

        const qaae::StateVector joint = qaae::join_plus_ancilla(trial);
        qaae::StateVector moved = joint;
        inst.u.apply(moved);
        const cplx bigw = qaae::inner(joint, moved);
        worst_arg = std::max(worst_arg, std::abs(std::arg(bigw) - M_PI / 4));
        worst_wsum = std::max(worst_wsum, std::abs(std::abs(bigw) - w));
        double zsum = 0.0;
        for (int j = 0; j < d; ++j)
            zsum += before[std::size_t(j)] * (std::abs(bigw) - cosl[std::size_t(j)]);
        worst_zsum = std::max(worst_zsum, std::abs(zsum));
    }
    const double secs = t.seconds();

    Outcome c2{worst_delta <= 1e-9 && worst_floor <= 1e-12 && positive_ok &&
                   secs < 30.0,
               "max |gain - prediction| " + fmt(worst_delta) + ", floor slack " +
                   fmt(worst_floor) + ", positivity " +
                   (positive_ok ? "held" : "broken") + " (" + fmt(secs) + " s)"};
    Outcome c3{worst_ratio <= 1e-9 && worst_small <= 1e-12,
               "max ratio deviation " + fmt(worst_ratio) +
                   ", small-weight absolute deviation " + fmt(worst_small)};
    Outcome c4{worst_arg <= 1e-9 && worst_wsum <= 1e-9 && worst_zsum <= 1e-9,
               "max phase deviation " + fmt(worst_arg) + ", cosine-sum " +
                   fmt(worst_wsum) + ", weighted-xi sum " + fmt(worst_zsum)};
    return {c2, c3, c4};
}

// ---------------------------------------------------------------------------
// check 5: the ground-weight difference of two pure states never exceeds
// their trace distance, on random pairs and on every logged learning step.

Outcome check_5() {
    const qaae::PauliHamiltonian h =
        qaae::normalize_affine(qaae::build_ltfim(3, 1.0, 1.0), 0.05, 0.95);
    const qaae::Spectrum spec = qaae::spectrum(h);
    qaae::CounterRng rng(505, 0);
    double worst_excess = -1.0;
    for (int i = 0; i < 1000; ++i) {
        const qaae::StateVector a = oracle::random_state(3, rng);
        qaae::StateVector b;
        if (i % 10 == 9) {
            b = a; // identical pair, zero on both sides
        } else if (i % 3 == 0) {
            b = a;
            const double scale = std::pow(10.0, -double(i % 9));
            for (auto& amp : b.amps)
                amp += cplx(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
            qaae::normalize(b);
        } else {
            b = oracle::random_state(3, rng);
        }
        const double lhs = std::abs(qaae::ground_overlap(a, spec) -
                                    qaae::ground_overlap(b, spec));
        const double dist = qaae::trace_distance_pure(a, b);
        worst_excess = std::max(worst_excess, lhs - dist);
    }

    qaae::RunConfig cfg;
    cfg.model = qaae::ModelKind::Ltfim;
    cfg.n = 3;
    cfg.g = 1.0;
    cfg.h = 1.0;
    cfg.family = qaae::AnsatzFamily::HardwareEfficient;
    cfg.layers = 2;
    cfg.axes = "y";
    cfg.learn.n_max = 60;
    cfg.eps_h = 1e-12;
    cfg.max_rounds = 25;
    cfg.seed = 5;
    const qaae::RunResult res = qaae::run_qaae(cfg);
    double worst_step = 0.0;
    for (std::size_t r = 0; r < res.records.size(); ++r) {
        const double next = r + 1 < res.records.size()
                                ? res.records[r + 1].gamma_before
                                : res.final_fidelity;
        worst_step = std::max(worst_step,
                              std::abs(res.records[r].gamma_after - next) -
                                  res.records[r].eps_r);
    }
    const bool ok = worst_excess <= 1e-12 && worst_step <= 1e-12 &&
                    !res.records.empty();
    return {ok, "pair excess " + fmt(worst_excess) + " over 1000 pairs, step excess " +
                    fmt(worst_step) + " over " + std::to_string(res.records.size()) +
                    " logged rounds"};
}

// ---------------------------------------------------------------------------
// check 6: with oracle learning the ground weight climbs strictly to
// 1 - 1e-6 on a two-level model and on a 4-site chain, and the gain
// recursion audit finds no violations.

Outcome check_6() {
    Timer t;
    std::ostringstream d;
    bool ok = true;

    {
        qaae::RunConfig cfg;
        cfg.model = qaae::ModelKind::TwoLevel;
        cfg.alpha = 0.5;
        cfg.r = {0.0, 0.0, 0.25};
        cfg.norm_lo = 0.25;
        cfg.norm_hi = 0.75;
        cfg.family = qaae::AnsatzFamily::Oracle;
        qaae::StateVector s0;
        s0.num_qubits = 1;
        s0.amps = {cplx(std::sqrt(0.9), 0.0), cplx(std::sqrt(0.1), 0.0)};
        cfg.oracle_init = std::make_shared<const qaae::StateVector>(s0);
        cfg.eps_h = 1e-300;
        cfg.max_rounds = 40;
        const qaae::RunResult res = qaae::run_qaae(cfg);
        int cross = -1;
        const bool mono = monotone_crossing(gain_sequence(res), &cross);
        const auto audit = qaae::check_recursion(res);
        ok = ok && mono && audit.ok();
        d << "pair cross " << cross << " violations " << audit.violations;
    }
    {
        qaae::RunConfig cfg;
        cfg.model = qaae::ModelKind::Ltfim;
        cfg.n = 4;
        cfg.g = 1.0;
        cfg.h = 1.0;
        cfg.family = qaae::AnsatzFamily::Oracle;
        cfg.eps_h = 1e-300;
        cfg.max_rounds = 400;
        const qaae::RunResult res = qaae::run_qaae(cfg);
        int cross = -1;
        const bool mono = monotone_crossing(gain_sequence(res), &cross);
        const auto audit = qaae::check_recursion(res);
        ok = ok && mono && audit.ok();
        d << "; chain4 cross " << cross << " violations " << audit.violations;
    }
    const double secs = t.seconds();
    ok = ok && secs < 10.0;
    d << " (" << fmt(secs) << " s)";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// check 7: the one-qubit demo starts below ground weight 0.024 and recovers;
// exactly in under 30 rounds, and at 4096 shots the 20-seed median stays
// above 0.95.

Outcome check_7() {
    Timer t;
    qaae::RunConfig cfg;
    cfg.model = qaae::ModelKind::TwoLevel; // alpha 1/2, X coupling 1/4
    cfg.norm_lo = 0.25;
    cfg.norm_hi = 0.75;
    cfg.family = qaae::AnsatzFamily::Single;
    cfg.theta_init = qaae::Params{1.3};
    cfg.eps_h = 1e-12;
    cfg.max_rounds = 30;

    const qaae::RunResult exact = qaae::run_qaae(cfg);
    const double g0 =
        exact.records.empty() ? 1.0 : exact.records.front().gamma_before;
    bool ok = g0 <= 0.024 && exact.final_fidelity >= 0.99;

    cfg.shots = 4096;
    cfg.k_policy = qaae::KPolicy::Sample;
    const qaae::SweepResult sweep = qaae::run_sweep(cfg, 0, 20);
    std::vector<double> finals;
    for (const auto& r : sweep.runs) finals.push_back(r.final_fidelity);
    double median = 0.0;
    if (finals.size() == 20) {
        std::sort(finals.begin(), finals.end());
        median = 0.5 * (finals[9] + finals[10]);
    }
    const double secs = t.seconds();
    ok = ok && sweep.aborts.empty() && finals.size() == 20 && median >= 0.95 &&
         secs < 30.0;
    return {ok, "start " + fmt(g0) + ", exact final " + fmt(exact.final_fidelity) +
                    " in " + std::to_string(exact.rounds()) +
                    " rounds, shot median " + fmt(median) + " (" + fmt(secs) + " s)"};
}

// ---------------------------------------------------------------------------
// check 8: on 4-site and 10-site chains with a 3-layer hardware-efficient
// ansatz, 20 seeds and matched preparation budgets, the amplify-learn loop
// reaches a mean final energy error no worse than gradient-descent VQE and
// spreads no wider across seeds.

Outcome check_8() {
    std::ostringstream d;
    bool ok = true;
    for (const int n : {4, 10}) {
        Timer t;
        qaae::RunConfig cfg;
        cfg.model = qaae::ModelKind::Ltfim;
        cfg.n = n;
        cfg.g = 1.0;
        cfg.h = 1.0;
        cfg.family = qaae::AnsatzFamily::HardwareEfficient;
        cfg.layers = 3;
        cfg.axes = "y";
        cfg.learn.learning_rate = 0.05;
        cfg.learn.n_max = 100;
        cfg.eps_h = 1e-9;
        // 460 rounds puts N = 10 past the crossover where the baseline's
        // seed spread stops improving with budget while the amplified spread
        // keeps falling; N = 4 plateau-halts by round ~240 either way.
        cfg.max_rounds = 460;

        const qaae::SweepResult sweep = qaae::run_sweep(cfg, 0, 20);
        const bool clean = sweep.aborts.empty() && sweep.runs.size() == 20;
        std::vector<long> budgets;
        std::vector<double> amp_err;
        for (const auto& r : sweep.runs) {
            budgets.push_back(r.prep_count);
            amp_err.push_back(std::abs(r.final_energy_norm - r.lambda0_norm));
        }

        qaae::VqeConfig vc;
        vc.learning_rate = 0.05;
        vc.eps_h = 1e-9;
        vc.max_iters = 2000000;
        const auto vruns = qaae::run_vqe_sweep(cfg, 0, 20, budgets, vc);
        const double lam0 = sweep.runs.empty() ? 0.0 : sweep.runs.front().lambda0_norm;
        std::vector<double> vqe_err;
        for (const auto& r : vruns)
            vqe_err.push_back(std::abs(r.final_energy_norm - lam0));

        const Stats sa = mean_sd(amp_err), sv = mean_sd(vqe_err);
        const double secs = t.seconds();
        bool part = clean && sa.mean <= sv.mean && sa.sd <= sv.sd;
        if (n == 10) part = part && secs < 1800.0;
        ok = ok && part;
        d << "N=" << n << " amp " << fmt(sa.mean) << "+-" << fmt(sa.sd) << " vqe "
          << fmt(sv.mean) << "+-" << fmt(sv.sd) << " (" << fmt(secs) << " s)"
          << (n == 4 ? "; " : "");
    }
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// check 9: the compiled round depth stays within its closed-form bound over
// the full grid of sizes, layers, step counts and product-formula orders.

Outcome check_9() {
    Timer t;
    int combos = 0, good = 0;
    for (int q = 2; q <= 6; ++q)
        for (int layers = 1; layers <= 4; ++layers)
            for (int nu = 1; nu <= 8; ++nu)
                for (int order = 1; order <= 2; ++order) {
                    qaae::RunConfig cfg;
                    cfg.model = qaae::ModelKind::Ltfim;
                    cfg.n = q;
                    cfg.g = 1.0;
                    cfg.h = 1.0;
                    cfg.family = qaae::AnsatzFamily::HardwareEfficient;
                    cfg.layers = layers;
                    cfg.evolution.backend = qaae::EvolutionBackend::Trotter;
                    cfg.evolution.order = order;
                    cfg.evolution.steps = nu;
                    ++combos;
                    if (qaae::depth_report(cfg).bound_ok) ++good;
                }
    const double secs = t.seconds();
    return {combos == 320 && good == combos && secs < 60.0,
            std::to_string(good) + "/" + std::to_string(combos) +
                " combinations within bound (" + fmt(secs) + " s)"};
}

// ---------------------------------------------------------------------------
// check 10: the product-formula error shrinks with the expected power of the
// step count on both benchmark chains.

Outcome check_10() {
    std::ostringstream d;
    bool ok = true;
    const std::array<qaae::PauliHamiltonian, 2> models = {
        qaae::build_ltfim(2, 1.0, 0.0), qaae::build_ltfim(3, 1.0, 1.0)};
    const char* tag[2] = {"chain2", "chain3"};
    for (int m = 0; m < 2; ++m) {
        for (int order = 1; order <= 2; ++order) {
            std::vector<double> lx, ly;
            for (const int nu : {4, 8, 16, 32}) {
                qaae::EvolutionConfig ec;
                ec.backend = qaae::EvolutionBackend::Trotter;
                ec.order = order;
                ec.steps = nu;
                ly.push_back(std::log(qaae::trotter_error(models[std::size_t(m)], ec, true)));
                lx.push_back(std::log(double(nu)));
            }
            const double slope = ls_slope(lx, ly);
            ok = ok && std::abs(slope + double(order)) <= 0.25;
            d << tag[m] << "/order" << order << " slope " << fmt(slope) << "  ";
        }
    }
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// check 11: configured gradients agree with an independent finite-difference
// oracle for every ansatz family at 20 random points.

Outcome check_11() {
    qaae::CounterRng rng(1111, 0);
    qaae::LearnConfig lc;
    double worst = 0.0;

    std::vector<qaae::AnsatzSpec> families(4);
    families[0].family = qaae::AnsatzFamily::Single;
    families[0].num_qubits = 1;
    families[1].family = qaae::AnsatzFamily::HardwareEfficient;
    families[1].num_qubits = 2;
    families[1].layers = 2;
    families[1].axes = "yz";
    families[2].family = qaae::AnsatzFamily::SuD;
    families[2].num_qubits = 2;
    families[3].family = qaae::AnsatzFamily::Oracle;
    families[3].num_qubits = 2;
    families[3].oracle_state =
        std::make_shared<const qaae::StateVector>(oracle::random_state(2, rng));

    for (const auto& a : families)
        for (int i = 0; i < 20; ++i) {
            const qaae::Params theta = qaae::random_init(a, 4000 + std::uint64_t(i));
            const qaae::StateVector target =
                oracle::random_state(a.num_qubits, rng);
            worst = std::max(worst, qaae::gradient_check(a, theta, target, lc));
        }
    return {worst <= 1e-6,
            "max gradient deviation " + fmt(worst) + " over 4 families x 20 points"};
}

// ---------------------------------------------------------------------------
// check 12: the bundled molecular-style Hamiltonian file runs end to end,
// and the analytic properties of checks 1-6 hold on it. No fixed energy
// target: reference chemistry numbers need external pipelines.

Outcome check_12(const std::string& data_dir) {
    Timer t;
    const std::string path = data_dir + "/molecule_4q.pauli";
    std::ostringstream d;
    bool ok = true;

    const qaae::PauliHamiltonian raw = qaae::parse_pauli_file(path);
    Instance inst = wrap_instance(qaae::normalize_affine(raw, 0.05, 0.95));
    const int dlev = inst.spec.levels();
    std::vector<double> cosl(std::size_t(dlev), 0.0);
    for (int j = 0; j < dlev; ++j)
        cosl[std::size_t(j)] = std::cos(M_PI / 4 - kOmega * inst.spec.values(j));

    qaae::CounterRng rng(1212, 0);
    double worst_p = 0.0, worst_delta = 0.0, worst_floor = 0.0;
    double worst_ratio = 0.0, worst_small = 0.0, worst_arg = 0.0, worst_wsum = 0.0;
    bool positive_ok = true;
    for (int i = 0; i < 20; ++i) {
        qaae::StateVector trial;
        if (i % 2 == 0) {
            trial = oracle::random_state(4, rng);
        } else {
            qaae::AnsatzSpec a;
            a.family = qaae::AnsatzFamily::HardwareEfficient;
            a.num_qubits = 4;
            a.layers = 2;
            a.axes = "zy";
            trial = qaae::prepare_trial(a, qaae::random_init(a, 9000 + std::uint64_t(i)));
        }
        const std::vector<double> before = level_weights(inst.spec, trial);
        double w = 0.0;
        for (int j = 0; j < dlev; ++j)
            w += before[std::size_t(j)] * cosl[std::size_t(j)];
        const double chi = 4.0 * w * w - 1.0;
        const double gamma0 = before[0];
        const double delta_pred = 4.0 * w * chi * (w - cosl[0]) * gamma0;
        const double c0 = cosl[0], c1 = cosl[1];
        const double c_star = 4.0 * c0 * (4.0 * c0 * c0 - 1.0) * (c1 - c0);
        for (int k = 0; k < 2; ++k) {
            qaae::MeasurePolicy pol;
            pol.kind = k == 0 ? qaae::KPolicy::K0 : qaae::KPolicy::K1;
            const auto out = qaae::amplify_round_state(trial, inst.u, pol);
            worst_p = std::max(worst_p, std::abs(out.p_k - 0.5));
            const std::vector<double> after = level_weights(inst.spec, out.phi_out);
            const double delta = after[0] - gamma0;
            worst_delta = std::max(worst_delta, std::abs(delta - delta_pred));
            worst_floor =
                std::max(worst_floor, c_star * gamma0 * (1.0 - gamma0) - delta);
            if (gamma0 > 1e-6 && gamma0 < 1.0 - 1e-6 && delta <= 0.0)
                positive_ok = false;
            for (int j = 0; j < dlev; ++j) {
                const double ratio_pred =
                    1.0 + 4.0 * w * chi * (w - cosl[std::size_t(j)]);
                if (before[std::size_t(j)] >= 1e-5)
                    worst_ratio = std::max(
                        worst_ratio,
                        std::abs(after[std::size_t(j)] / before[std::size_t(j)] -
                                 ratio_pred));
                else
                    worst_small = std::max(
                        worst_small,
                        std::abs(after[std::size_t(j)] -
                                 ratio_pred * before[std::size_t(j)]));
            }
        }
        const qaae::StateVector joint = qaae::join_plus_ancilla(trial);
        qaae::StateVector moved = joint;
        inst.u.apply(moved);
        const cplx bigw = qaae::inner(joint, moved);
        worst_arg = std::max(worst_arg, std::abs(std::arg(bigw) - M_PI / 4));
        worst_wsum = std::max(worst_wsum, std::abs(std::abs(bigw) - w));
    }
    ok = ok && worst_p <= 1e-10 && worst_delta <= 1e-9 && worst_floor <= 1e-12 &&
         positive_ok && worst_ratio <= 1e-9 && worst_small <= 1e-12 &&
         worst_arg <= 1e-9 && worst_wsum <= 1e-9;

    double worst_excess = -1.0;
    for (int i = 0; i < 100; ++i) {
        const qaae::StateVector a = oracle::random_state(4, rng);
        const qaae::StateVector b = oracle::random_state(4, rng);
        const double lhs = std::abs(qaae::ground_overlap(a, inst.spec) -
                                    qaae::ground_overlap(b, inst.spec));
        worst_excess =
            std::max(worst_excess, lhs - qaae::trace_distance_pure(a, b));
    }
    ok = ok && worst_excess <= 1e-12;

    // end-to-end learning run through the file pipeline
    qaae::RunConfig cfg;
    cfg.model = qaae::ModelKind::File;
    cfg.path = path;
    cfg.family = qaae::AnsatzFamily::HardwareEfficient;
    cfg.layers = 2;
    cfg.axes = "zy";
    cfg.learn.n_max = 80;
    cfg.eps_h = 1e-9;
    cfg.max_rounds = 30;
    cfg.seed = 7;
    const qaae::RunResult res = qaae::run_qaae(cfg);
    const auto audit = qaae::check_recursion(res);
    double worst_step = 0.0;
    for (std::size_t r = 0; r < res.records.size(); ++r) {
        const double next = r + 1 < res.records.size()
                                ? res.records[r + 1].gamma_before
                                : res.final_fidelity;
        worst_step = std::max(worst_step,
                              std::abs(res.records[r].gamma_after - next) -
                                  res.records[r].eps_r);
    }
    const bool run_ok = !res.records.empty() && audit.checked > 0 &&
                        audit.violations == 0 && worst_step <= 1e-12 &&
                        res.final_fidelity >= res.records.front().gamma_before;
    ok = ok && run_ok;

    // oracle-learning convergence from the two-occupied basis state
    qaae::RunConfig cfg2 = cfg;
    cfg2.family = qaae::AnsatzFamily::Oracle;
    cfg2.oracle_init =
        std::make_shared<const qaae::StateVector>(qaae::basis_state(4, 3));
    cfg2.eps_h = 1e-300;
    cfg2.max_rounds = 60;
    const qaae::RunResult res2 = qaae::run_qaae(cfg2);
    int cross = -1;
    const bool mono = monotone_crossing(gain_sequence(res2), &cross);
    const auto audit2 = qaae::check_recursion(res2);
    ok = ok && mono && audit2.ok();

    const double secs = t.seconds();
    d << "props: p " << fmt(worst_p) << " gain " << fmt(worst_delta) << " ratio "
      << fmt(worst_ratio) << " phase " << fmt(worst_arg) << "; learn run "
      << res.rounds() << " rounds fid " << fmt(res.final_fidelity)
      << " violations " << audit.violations << "; oracle cross " << cross << " ("
      << fmt(secs) << " s)";
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// check 13: identical CLI invocations write byte-identical CSV (and JSON).

Outcome check_13(const std::string& cli) {
    if (cli.empty())
        return {false, "cli binary path not supplied (argv[2])"};
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path dir = fs::temp_directory_path() / "qaae_acceptance_repro";
    fs::remove_all(dir, ec);
    fs::create_directories(dir, ec);
    if (ec) return {false, "cannot create work directory"};

    struct Cmd {
        std::string tag;
        std::string args;
    };
    const std::vector<Cmd> cmds = {
        {"run",
         " run --model ltfim --n 3 --g 1 --h 1 --ansatz he --layers 2"
         " --nmax 50 --max-rounds 5 --seed 11 --k-policy sample"},
        {"sweep",
         " sweep --model two-level --norm-lo 0.25 --norm-hi 0.75 --ansatz single"
         " --shots 256 --k-policy sample --max-rounds 8 --seeds 0..3"},
    };

    bool ok = true;
    std::ostringstream d;
    for (const auto& cmd : cmds) {
        const fs::path a = dir / (cmd.tag + "_a");
        const fs::path b = dir / (cmd.tag + "_b");
        for (const fs::path& out : {a, b}) {
            const std::string line = "\"" + cli + "\"" + cmd.args + " --out \"" +
                                     out.string() + "\" >/dev/null 2>&1";
            if (std::system(line.c_str()) != 0) {
                ok = false;
                d << cmd.tag << " invocation failed; ";
            }
        }
        for (const char* ext : {".csv", ".json"}) {
            const auto fa = read_file(fs::path(a.string() + ext));
            const auto fb = read_file(fs::path(b.string() + ext));
            const bool same = fa && fb && !fa->empty() && *fa == *fb;
            ok = ok && same;
            d << cmd.tag << ext << (same ? " identical" : " DIFFER") << "; ";
        }
    }
    fs::remove_all(dir, ec);
    return {ok, d.str()};
}

// ---------------------------------------------------------------------------

template <typename Fn>
Outcome guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return {false, std::string("unexpected exception: ") + e.what()};
    }
}

} // namespace

int main(int argc, char** argv) {
    const std::string data_dir = argc > 1 ? argv[1] : "tests/data";
    const std::string cli = argc > 2 ? argv[2] : "";
    std::set<int> wanted;
    if (argc > 3) {
        std::stringstream ss(argv[3]);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) wanted.insert(std::stoi(tok));
    }
    const auto want = [&](int id) { return wanted.empty() || wanted.count(id); };

    int failures = 0;
    const auto report = [&](int id, const char* name, const Outcome& o) {
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << (id < 10 ? " " : "") << id
                  << "  " << name << ": " << o.detail << "\n"
                  << std::flush;
        if (!o.pass) ++failures;
    };
    const auto run = [&](int id, const char* name, auto fn) {
        if (want(id)) report(id, name, guarded(fn));
    };

    run(1, "ancilla branch probability one half", check_1);
    if (want(2) || want(3) || want(4)) {
        std::array<Outcome, 3> c234;
        try {
            c234 = checks_2_3_4();
        } catch (const std::exception& e) {
            const Outcome bad{false, std::string("unexpected exception: ") + e.what()};
            c234 = {bad, bad, bad};
        }
        if (want(2)) report(2, "one-round gain prediction and spectral floor", c234[0]);
        if (want(3)) report(3, "per-component magnitude update law", c234[1]);
        if (want(4)) report(4, "round-propagator phase and cosine identities", c234[2]);
    }
    run(5, "ground-weight deviation bounded by trace distance", check_5);
    run(6, "oracle-learning convergence and recursion audit", check_6);
    run(7, "one-qubit demo, exact and finite-shot", check_7);
    run(8, "matched-budget comparison against VQE", check_8);
    run(9, "compiled round depth bound", check_9);
    run(10, "product-formula order scaling", check_10);
    run(11, "gradient integrity across ansatz families", check_11);
    run(12, "bundled molecular Hamiltonian end to end",
        [&] { return check_12(data_dir); });
    run(13, "byte-identical CLI reruns", [&] { return check_13(cli); });

    std::cout << (failures == 0 ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << " ("
              << failures << " failing)\n";
    return failures;
}
