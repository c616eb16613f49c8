// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Usage: dqm_acceptance <path-to-cli> <scratch-dir>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef __unix__
#include <sys/wait.h>
#endif

#include "dqm/analytics.hpp"
#include "dqm/chaos.hpp"
#include "dqm/fock_oracle.hpp"
#include "dqm/oscillator.hpp"

namespace fs = std::filesystem;
using namespace dqm;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int g_failures = 0;

void run_criterion(int id, const std::string& name, double budget_seconds,
                   const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0.0 && elapsed > budget_seconds) {
        outcome.ok = false;
        outcome.detail += (outcome.detail.empty() ? "" : "; ") + std::string("over budget ") +
                          std::to_string(budget_seconds) + " s";
    }
    std::ostringstream line;
    line << "[" << (id < 10 ? " " : "") << id << "] " << (outcome.ok ? "PASS" : "FAIL")
         << " " << name;
    if (!outcome.detail.empty()) line << " (" << outcome.detail << ")";
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " [" << elapsed << " s]";
    std::cout << line.str() << "\n";
    if (!outcome.ok) ++g_failures;
}

std::string sci(double v) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(2);
    os << v;
    return os.str();
}

GridPtr uniform_grid(std::size_t m, double gamma) {
    std::vector<ModeSpec> specs(m, ModeSpec{1.0, gamma, std::nullopt});
    return build_grid(specs);
}

Outcome criterion_oracle_equivalence() {
    auto grid = uniform_grid(1, 0.5);
    double max_dev = 0.0, max_leak = 0.0;
    const std::vector<double> rs = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    for (double r : rs) {
        const int n_max = std::max(16, fock::required_n_max(r, 1e-12));
        auto state = fock::build_squeezed(r, n_max);
        max_leak = std::max(max_leak, state.leakage());
        if (state.leakage() >= 1e-12)
            return {false, "leakage " + sci(state.leakage()) + " at r = " + sci(r)};

        EvolvedState analytic(MemoryCode(grid, {-r}), 0.0);
        max_dev = std::max(max_dev, std::abs(fock::expectation(state, fock::Observable::NumberA) -
                                             occupation(analytic, 0)));
        max_dev = std::max(max_dev, std::abs(fock::oracle_entropy(state, 1e-11) -
                                             entanglement_entropy(analytic)));
        auto w = schmidt_weights(analytic, 0, n_max);
        for (int n = 0; n <= n_max; ++n)
            max_dev = std::max(max_dev, std::abs(state.amp(n) * state.amp(n) -
                                                 w.weights[static_cast<std::size_t>(n)]));
    }
    for (double ri : rs)
        for (double rj : rs) {
            const int n_max = std::max({16, fock::required_n_max(ri, 1e-12),
                                        fock::required_n_max(rj, 1e-12)});
            const double oracle = fock::inner_product(fock::build_squeezed(ri, n_max),
                                                      fock::build_squeezed(rj, n_max));
            max_dev = std::max(max_dev, std::abs(oracle - 1.0 / std::cosh(ri - rj)));
        }
    if (max_dev >= 1e-8) return {false, "max deviation " + sci(max_dev)};
    return {true, "max dev " + sci(max_dev) + ", max leakage " + sci(max_leak)};
}

Outcome criterion_generator() {
    double worst = 0.0;
    for (double theta = 0.0; theta <= 2.0 + 1e-12; theta += 0.25) {
        const int n_max = std::max(32, fock::required_n_max(theta, 1e-12));
        auto numeric = fock::apply_generator(theta, n_max, 1e-11);
        auto closed = fock::build_squeezed(-theta, n_max);
        worst = std::max(worst, 1.0 - fock::fidelity(numeric, closed));
    }
    if (worst > 1e-8) return {false, "fidelity deficit " + sci(worst)};
    return {true, "max fidelity deficit " + sci(worst)};
}

Outcome criterion_evolution() {
    auto out = fock::evolve(fock::vacuum_pair(120), 1.0, 0.5, 0.01, 200, 1e-9);
    const double occ = fock::expectation(out, fock::Observable::NumberA);
    const double target = std::sinh(1.0) * std::sinh(1.0);
    if (std::abs(occ - target) > 1e-7)
        return {false, "occupation " + sci(occ) + " vs " + sci(target)};
    const double fid = fock::fidelity(out, fock::build_squeezed(1.0, 120));
    if (fid < 1.0 - 1e-7) return {false, "fidelity deficit " + sci(1.0 - fid)};
    return {true, "occupation dev " + sci(std::abs(occ - target)) + ", fidelity deficit " +
                      sci(1.0 - fid)};
}

Outcome criterion_charge() {
    auto initial = fock::FullGridState::basis(1, 0, 60);
    const double drift = fock::charge_conservation_probe(initial, 1.0, 0.3, 2.0, 41, 1e-12);
    if (drift >= 1e-9) return {false, "drift " + sci(drift)};
    return {true, "max drift " + sci(drift)};
}

Outcome criterion_lyapunov() {
    double worst = 0.0;
    for (double gamma : {0.25, 0.5, 1.0}) {
        for (double dtheta : {1e-6, 1e-4, 1e-2}) {
            auto grid = uniform_grid(1, gamma);
            MemoryCode a(grid, {1.0});
            MemoryCode b(grid, {1.0 - dtheta});
            std::vector<double> times(25);
            const double t_lo = (2.0 + 1.0) / gamma, t_hi = (10.0 + 1.0) / gamma;
            for (int i = 0; i < 25; ++i) times[i] = t_lo + (t_hi - t_lo) * i / 24.0;
            auto fit = lyapunov_estimate(divergence_series(a, b, times)[0]);
            worst = std::max(worst, std::abs(fit.exponent / (2.0 * gamma) - 1.0));
        }
    }
    if (worst >= 0.02) return {false, "relative error " + sci(worst)};
    return {true, "max relative error " + sci(worst)};
}

Outcome criterion_inequivalence() {
    double worst = 0.0, previous = 2.0;
    const double per_mode = std::log(std::cosh(1.0));
    for (std::size_t m : {1u, 2u, 5u, 10u, 20u}) {
        auto grid = uniform_grid(m, 0.5);
        EvolvedState a(MemoryCode(grid, std::vector<double>(m, 0.0)), 0.0);
        EvolvedState b(MemoryCode(grid, std::vector<double>(m, 1.0)), 0.0);
        const double lg = log_abs_overlap(a, b);
        worst = std::max(worst, std::abs(lg + m * per_mode) / (m * per_mode));
        const double o = overlap(a, b);
        if (!(o < previous)) return {false, "not decreasing at M = " + std::to_string(m)};
        previous = o;
    }
    if (worst >= 1e-10) return {false, "log-space deviation " + sci(worst)};
    return {true, "max log-space deviation " + sci(worst)};
}

Outcome criterion_attractor() {
    double worst = 0.0;
    for (std::size_t m : {1u, 2u, 5u, 10u}) {
        auto grid = uniform_grid(m, 0.5);
        const double t = 24.0;  // Gamma t = 12 per mode
        for (double theta : {0.0, 0.7}) {
            MemoryCode code(grid, std::vector<double>(m, theta));
            const double value = overlap(EvolvedState(code, t), EvolvedState(code, 0.0)) *
                                 std::exp(grid->gamma_sum() * t);
            worst = std::max(worst, std::abs(value - std::pow(2.0, m)) / std::pow(2.0, m));
        }
    }
    if (worst >= 1e-6) return {false, "relative error " + sci(worst)};
    return {true, "max relative error " + sci(worst)};
}

Outcome criterion_entropy_divergence() {
    auto grid = uniform_grid(1, 0.5);
    MemoryCode a(grid, {1.0});
    MemoryCode b(grid, {1.0 - 1e-3});
    auto result = entropy_divergence_check(a, b, 6.0, 1e-3);
    if (result.relative_gap >= 1e-6) return {false, "gap " + sci(result.relative_gap)};
    return {true, "gap " + sci(result.relative_gap)};
}

Outcome criterion_oscillator() {
    osc::OscParams p{1.0, 0.2, 1.0};

    auto constrained = osc::integrate(p, osc::OscState{1.0, 0.0, 0.0, 0.0}, 50.0, 1e-3);
    for (const auto& s : constrained.states)
        if (std::abs(s.y) > 1e-12 || std::abs(s.vy) > 1e-12)
            return {false, "constraint violation |y| = " + sci(std::abs(s.y))};
    const double x_rate = osc::envelope_rate(constrained, false).rate;
    if (std::abs(x_rate + 0.1) > 0.001) return {false, "x rate " + sci(x_rate)};

    auto mirrored = osc::integrate(p, osc::OscState{1.0, 0.0, 1e-8, 0.0}, 50.0, 1e-3);
    const double y_rate = osc::envelope_rate(mirrored, true).rate;
    if (std::abs(y_rate - 0.1) > 0.001) return {false, "y rate " + sci(y_rate)};

    auto skew = osc::integrate(p, osc::OscState{1.0, 0.0, 0.5, -0.2}, 20.0, 1e-3);
    const double h0 = skew.h.front();
    double drift = 0.0;
    for (double h : skew.h) drift = std::max(drift, std::abs(h - h0) / std::abs(h0));
    if (drift >= 1e-8) return {false, "h drift " + sci(drift)};

    return {true, "x rate " + sci(x_rate) + ", y rate " + sci(y_rate) + ", h drift " +
                      sci(drift)};
}

// ---- criterion 10: CLI determinism -----------------------------------------

const char* kCliConfig = R"({
  "grid": [{"omega": 1.0, "gamma": 0.5}, {"omega": 2.0, "gamma": 0.25}],
  "codes": {"a": [1.0, 0.5], "b": [1.001, 0.5], "zero": [0.0, 0.0]},
  "times": {"t_start": 0.0, "t_end": 20.0, "samples": 41},
  "oracle": {"tolerance": 1e-12},
  "evolve": {"code": "a"},
  "chaos": {"code_a": "a", "code_b": "b", "window": [8.0, 20.0]},
  "overlap": {"code_a": "a", "code_b": "b"},
  "entropy": {"code": "a"},
  "associate": {"threshold": 0.05},
  "oracle_check": {"r_values": [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0]},
  "oscillator": {"m": 1.0, "gamma": 0.2, "k": 1.0, "x0": 1.0, "vx0": 0.0,
                 "y0": 1e-8, "vy0": 0.0, "t_end": 50.0, "dt": 0.001}
})";

int run_cli(const std::string& cli, const std::string& args) {
    const std::string command = "\"" + cli + "\" " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(command.c_str());
#ifdef __unix__
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
#else
    return status;
#endif
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome criterion_cli_determinism(const std::string& cli, const fs::path& scratch) {
    fs::create_directories(scratch);
    const fs::path config = scratch / "run.json";
    {
        std::ofstream out(config);
        out << kCliConfig;
    }
    const std::vector<std::string> subcommands = {"evolve",    "chaos",        "overlap",
                                                  "entropy",   "associate",    "oracle-check",
                                                  "oscillator"};
    std::size_t compared = 0;
    for (const auto& sub : subcommands) {
        const fs::path out1 = scratch / (sub + "_1");
        const fs::path out2 = scratch / (sub + "_2");
        for (const fs::path& out : {out1, out2}) {
            fs::create_directories(out);
            const int code = run_cli(cli, sub + " --config \"" + config.string() +
                                              "\" --out \"" + out.string() + "\"");
            if (code != 0)
                return {false, sub + " exited with " + std::to_string(code)};
        }
        for (const auto& entry : fs::directory_iterator(out1)) {
            const fs::path twin = out2 / entry.path().filename();
            if (!fs::exists(twin))
                return {false, sub + ": missing " + twin.filename().string()};
            if (slurp(entry.path()) != slurp(twin))
                return {false, sub + ": " + entry.path().filename().string() + " differs"};
            ++compared;
        }
        if (fs::is_empty(out1)) return {false, sub + ": produced no output"};
    }
    return {true, std::to_string(compared) + " files byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: dqm_acceptance <path-to-cli> <scratch-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path scratch = argv[2];

    run_criterion(1, "oracle equivalence across the r range", 5.0, criterion_oracle_equivalence);
    run_criterion(2, "generator exponential vs closed form", 5.0, criterion_generator);
    run_criterion(3, "Hamiltonian evolution of the vacuum", 10.0, criterion_evolution);
    run_criterion(4, "charge conservation on the full grid", 0.0, criterion_charge);
    run_criterion(5, "Lyapunov exponent recovery", 2.0, criterion_lyapunov);
    run_criterion(6, "overlap decay with mode count", 0.0, criterion_inequivalence);
    run_criterion(7, "attractor escape law", 0.0, criterion_attractor);
    run_criterion(8, "entropy--divergence relation", 0.0, criterion_entropy_divergence);
    run_criterion(9, "doubled oscillator invariants", 0.0, criterion_oscillator);
    run_criterion(10, "CLI determinism", 0.0,
                  [&] { return criterion_cli_determinism(cli, scratch); });

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
