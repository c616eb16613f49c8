#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqm/mode_space.hpp"

namespace dqm::cli {

struct TimeGridSpec {
    double t_start = 0.0;
    double t_end = 0.0;
    int samples = 0;  // >= 2
    std::vector<double> make() const;
};

struct OracleSettings {
    double tolerance = 1e-12;  // in (0, 1e-3]
    std::optional<int> n_max_cap;
};

struct ChaosOptions {
    std::string code_a;
    std::string code_b;
    std::optional<std::pair<double, double>> window;
};

struct OverlapOptions {
    std::string code_a;
    std::string code_b;
};

struct AssociateOptions {
    double threshold = 0.0;
    std::vector<std::string> codes;  // empty: every named code
};

struct OscillatorOptions {
    double m = 1.0;
    double gamma = 0.0;
    double k = 1.0;
    double x0 = 0.0, vx0 = 0.0, y0 = 0.0, vy0 = 0.0;
    double t_end = 0.0;
    double dt = 0.0;
};

struct RunConfig {
    std::vector<ModeSpec> grid_specs;
    std::map<std::string, std::vector<double>> codes;  // ordered for determinism
    std::optional<TimeGridSpec> times;
    OracleSettings oracle;

    std::optional<std::string> evolve_code;
    std::optional<ChaosOptions> chaos;
    std::optional<OverlapOptions> overlap;
    std::optional<std::string> entropy_code;
    std::optional<AssociateOptions> associate;
    std::optional<std::vector<double>> oracle_check_r;
    std::optional<OscillatorOptions> oscillator;
};

RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text);

GridPtr make_grid(const RunConfig& config);

// Looks a named theta-list up and attaches it to the grid. A list whose length
// does not match the grid is reported as GridMismatch (the code belongs to a
// different grid).
MemoryCode resolve_code(const RunConfig& config, const GridPtr& grid,
                        const std::string& name);

// Times from the config's time grid; ConfigInvalid("times") when absent.
std::vector<double> require_times(const RunConfig& config);

}  // namespace dqm::cli
