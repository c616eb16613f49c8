#include "config.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace dqm::cli {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& why) {
    throw Error(ErrorCode::ConfigInvalid, path + ": " + why);
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) invalid(path, "expected a number");
    return j.get<double>();
}

double field_number(const json& obj, const std::string& section, const char* key) {
    const std::string path = section + "." + key;
    if (!obj.contains(key)) invalid(path, "missing");
    return number_at(obj.at(key), path);
}

int field_int(const json& obj, const std::string& section, const char* key) {
    const std::string path = section + "." + key;
    if (!obj.contains(key)) invalid(path, "missing");
    if (!obj.at(key).is_number_integer()) invalid(path, "expected an integer");
    return obj.at(key).get<int>();
}

std::string field_string(const json& obj, const std::string& section, const char* key) {
    const std::string path = section + "." + key;
    if (!obj.contains(key) || !obj.at(key).is_string()) invalid(path, "expected a string");
    return obj.at(key).get<std::string>();
}

std::vector<double> number_list(const json& j, const std::string& path) {
    if (!j.is_array()) invalid(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number_at(j.at(i), path + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

std::vector<double> TimeGridSpec::make() const {
    std::vector<double> out(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        out[static_cast<std::size_t>(i)] =
            t_start + (t_end - t_start) * static_cast<double>(i) /
                          static_cast<double>(samples - 1);
    return out;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        invalid("config", e.what());
    }
    if (!j.is_object()) invalid("config", "expected a JSON object");

    RunConfig cfg;

    if (!j.contains("grid")) invalid("grid", "missing");
    if (!j.at("grid").is_array() || j.at("grid").empty())
        invalid("grid", "expected a nonempty array");
    for (std::size_t i = 0; i < j.at("grid").size(); ++i) {
        const json& entry = j.at("grid").at(i);
        const std::string path = "grid[" + std::to_string(i) + "]";
        if (!entry.is_object()) invalid(path, "expected an object");
        ModeSpec spec;
        spec.omega = field_number(entry, path, "omega");
        spec.gamma = field_number(entry, path, "gamma");
        if (entry.contains("energy"))
            spec.energy = number_at(entry.at("energy"), path + ".energy");
        cfg.grid_specs.push_back(spec);
    }

    if (j.contains("codes")) {
        if (!j.at("codes").is_object()) invalid("codes", "expected an object");
        for (const auto& [name, thetas] : j.at("codes").items())
            cfg.codes[name] = number_list(thetas, "codes." + name);
    }

    if (j.contains("times")) {
        const json& t = j.at("times");
        if (!t.is_object()) invalid("times", "expected an object");
        TimeGridSpec spec;
        spec.t_start = field_number(t, "times", "t_start");
        spec.t_end = field_number(t, "times", "t_end");
        spec.samples = field_int(t, "times", "samples");
        if (!std::isfinite(spec.t_start) || spec.t_start < 0.0)
            invalid("times.t_start", "must be finite and >= 0");
        if (!std::isfinite(spec.t_end) || spec.t_end <= spec.t_start)
            invalid("times.t_end", "must be > t_start");
        if (spec.samples < 2) invalid("times.samples", "must be >= 2");
        cfg.times = spec;
    }

    if (j.contains("oracle")) {
        const json& o = j.at("oracle");
        if (!o.is_object()) invalid("oracle", "expected an object");
        if (o.contains("tolerance"))
            cfg.oracle.tolerance = number_at(o.at("tolerance"), "oracle.tolerance");
        if (o.contains("n_max_cap")) {
            if (!o.at("n_max_cap").is_number_integer())
                invalid("oracle.n_max_cap", "expected an integer");
            cfg.oracle.n_max_cap = o.at("n_max_cap").get<int>();
            if (*cfg.oracle.n_max_cap < 0) invalid("oracle.n_max_cap", "must be >= 0");
        }
    }
    if (!(cfg.oracle.tolerance > 0.0) || cfg.oracle.tolerance > 1e-3)
        invalid("oracle.tolerance", "must lie in (0, 1e-3]");

    if (j.contains("evolve"))
        cfg.evolve_code = field_string(j.at("evolve"), "evolve", "code");

    if (j.contains("chaos")) {
        const json& c = j.at("chaos");
        ChaosOptions opts;
        if (!c.is_object() || !c.contains("code_a") || !c.contains("code_b"))
            throw Error(ErrorCode::NeedTwoCodes, "chaos needs code_a and code_b");
        opts.code_a = field_string(c, "chaos", "code_a");
        opts.code_b = field_string(c, "chaos", "code_b");
        if (c.contains("window")) {
            auto w = number_list(c.at("window"), "chaos.window");
            if (w.size() != 2 || !(w[0] < w[1]))
                invalid("chaos.window", "expected [t_lo, t_hi] with t_lo < t_hi");
            opts.window = std::make_pair(w[0], w[1]);
        }
        cfg.chaos = opts;
    }

    if (j.contains("overlap")) {
        const json& o = j.at("overlap");
        if (!o.is_object() || !o.contains("code_a") || !o.contains("code_b"))
            throw Error(ErrorCode::NeedTwoCodes, "overlap needs code_a and code_b");
        cfg.overlap = OverlapOptions{field_string(o, "overlap", "code_a"),
                                     field_string(o, "overlap", "code_b")};
    }

    if (j.contains("entropy"))
        cfg.entropy_code = field_string(j.at("entropy"), "entropy", "code");

    if (j.contains("associate")) {
        const json& a = j.at("associate");
        if (!a.is_object()) invalid("associate", "expected an object");
        AssociateOptions opts;
        opts.threshold = field_number(a, "associate", "threshold");
        if (a.contains("codes")) {
            if (!a.at("codes").is_array()) invalid("associate.codes", "expected an array");
            for (const auto& name : a.at("codes")) {
                if (!name.is_string()) invalid("associate.codes", "expected strings");
                opts.codes.push_back(name.get<std::string>());
            }
        }
        cfg.associate = opts;
    }

    if (j.contains("oracle_check")) {
        const json& o = j.at("oracle_check");
        if (!o.is_object() || !o.contains("r_values"))
            invalid("oracle_check.r_values", "missing");
        cfg.oracle_check_r = number_list(o.at("r_values"), "oracle_check.r_values");
        if (cfg.oracle_check_r->empty()) invalid("oracle_check.r_values", "empty");
    }

    if (j.contains("oscillator")) {
        const json& o = j.at("oscillator");
        if (!o.is_object()) invalid("oscillator", "expected an object");
        OscillatorOptions opts;
        opts.m = field_number(o, "oscillator", "m");
        opts.gamma = field_number(o, "oscillator", "gamma");
        opts.k = field_number(o, "oscillator", "k");
        opts.x0 = field_number(o, "oscillator", "x0");
        opts.vx0 = field_number(o, "oscillator", "vx0");
        opts.y0 = field_number(o, "oscillator", "y0");
        opts.vy0 = field_number(o, "oscillator", "vy0");
        opts.t_end = field_number(o, "oscillator", "t_end");
        opts.dt = field_number(o, "oscillator", "dt");
        if (!(opts.dt > 0.0)) invalid("oscillator.dt", "must be > 0");
        if (!(opts.t_end >= opts.dt)) invalid("oscillator.t_end", "must be >= dt");
        cfg.oscillator = opts;
    }

    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) invalid("config", "cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_config(text);
}

GridPtr make_grid(const RunConfig& config) { return build_grid(config.grid_specs); }

MemoryCode resolve_code(const RunConfig& config, const GridPtr& grid,
                        const std::string& name) {
    auto it = config.codes.find(name);
    if (it == config.codes.end())
        throw Error(ErrorCode::UnknownCode, "no code named '" + name + "'");
    if (it->second.size() != grid->size())
        throw Error(ErrorCode::GridMismatch,
                    "code '" + name + "' has " + std::to_string(it->second.size()) +
                        " thetas but the grid has " + std::to_string(grid->size()) +
                        " modes");
    return MemoryCode(grid, it->second);
}

std::vector<double> require_times(const RunConfig& config) {
    if (!config.times)
        throw Error(ErrorCode::ConfigInvalid, "times: section required by this command");
    return config.times->make();
}

}  // namespace dqm::cli
