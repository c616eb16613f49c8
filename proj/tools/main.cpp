#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "commands.hpp"
#include "config.hpp"

namespace {

// exit codes: 0 success, 1 computation error, 2 config/validation error
constexpr int kComputationExit = 1;
constexpr int kValidationExit = 2;

void emit_error(const std::string& code, const std::string& message,
                std::optional<long> index = std::nullopt) {
    nlohmann::json err = {{"code", code}, {"message", message}};
    if (index) err["index"] = *index;
    std::cerr << nlohmann::json{{"error", err}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative quantum memory simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    app.add_option("--config", config_path, "run configuration (JSON)")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);

    auto* evolve = app.add_subcommand("evolve", "state evolution table for one code");
    auto* chaos = app.add_subcommand("chaos", "divergence, Lyapunov, lifetimes, crossings");
    auto* overlap = app.add_subcommand("overlap", "pairwise overlap along the time grid");
    auto* entropy = app.add_subcommand("entropy", "entanglement entropy along the time grid");
    auto* associate = app.add_subcommand("associate", "overlap threshold events between codes");
    auto* oracle = app.add_subcommand("oracle-check", "closed forms vs the Fock oracle");
    auto* oscillator = app.add_subcommand("oscillator", "doubled damped oscillator trajectory");
    for (auto* sub : {evolve, chaos, overlap, entropy, associate, oracle, oscillator})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("Usage", e.what());
        return kValidationExit;
    }

    try {
        const dqm::cli::RunConfig config = dqm::cli::load_config(config_path);
        const std::filesystem::path out(out_dir);
        if (evolve->parsed()) dqm::cli::cmd_evolve(config, out);
        if (chaos->parsed()) dqm::cli::cmd_chaos(config, out);
        if (overlap->parsed()) dqm::cli::cmd_overlap(config, out);
        if (entropy->parsed()) dqm::cli::cmd_entropy(config, out);
        if (associate->parsed()) dqm::cli::cmd_associate(config, out);
        if (oracle->parsed()) {
            if (!dqm::cli::cmd_oracle_check(config, out, threads)) {
                emit_error("OracleDeviation", "some formula deviates by 1e-8 or more");
                return kComputationExit;
            }
        }
        if (oscillator->parsed()) dqm::cli::cmd_oscillator(config, out);
    } catch (const dqm::Error& e) {
        emit_error(e.name(), e.what(), e.index());
        return e.kind() == dqm::ErrorKind::Validation ? kValidationExit : kComputationExit;
    } catch (const std::exception& e) {
        emit_error("Internal", e.what());
        return kComputationExit;
    }
    return 0;
}
