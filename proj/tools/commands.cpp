#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "json.hpp"

#include "csv.hpp"
#include "dqm/analytics.hpp"
#include "dqm/chaos.hpp"
#include "dqm/fock_oracle.hpp"
#include "dqm/oscillator.hpp"

namespace dqm::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void cmd_evolve(const RunConfig& config, const fs::path& out_dir) {
    if (!config.evolve_code)
        throw Error(ErrorCode::ConfigInvalid, "evolve.code: missing");
    auto grid = make_grid(config);
    MemoryCode code = resolve_code(config, grid, *config.evolve_code);
    auto times = require_times(config);

    EvolvedState initial(code, times.front());
    CsvWriter csv;
    std::vector<std::string> header = {"t"};
    for (std::size_t k = 0; k < grid->size(); ++k) header.push_back("r_" + std::to_string(k));
    for (std::size_t k = 0; k < grid->size(); ++k) header.push_back("N_" + std::to_string(k));
    header.insert(header.end(), {"S", "overlap0", "envelope"});
    csv.row_vector(header);

    for (double t : times) {
        EvolvedState state(code, t);
        std::vector<std::string> row = {fmt(t)};
        for (std::size_t k = 0; k < grid->size(); ++k)
            row.push_back(fmt(squeeze_parameter(state, k)));
        for (std::size_t k = 0; k < grid->size(); ++k)
            row.push_back(fmt(occupation(state, k)));
        row.push_back(fmt(entanglement_entropy(state)));
        row.push_back(fmt(overlap(state, initial)));
        row.push_back(fmt(decay_envelope(code, t)));
        csv.row_vector(row);
    }
    write_atomic(out_dir / "evolve.csv", csv.text());
}

void cmd_chaos(const RunConfig& config, const fs::path& out_dir) {
    if (!config.chaos)
        throw Error(ErrorCode::NeedTwoCodes, "chaos: section missing");
    auto grid = make_grid(config);
    MemoryCode a = resolve_code(config, grid, config.chaos->code_a);
    MemoryCode b = resolve_code(config, grid, config.chaos->code_b);
    auto times = require_times(config);

    auto series = divergence_series(a, b, times);

    CsvWriter div;
    std::vector<std::string> header = {"t"};
    for (std::size_t k = 0; k < grid->size(); ++k)
        header.push_back("dN_" + std::to_string(k));
    for (std::size_t k = 0; k < grid->size(); ++k)
        header.push_back("dN_linear_" + std::to_string(k));
    div.row_vector(header);
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<std::string> row = {fmt(times[i])};
        for (const auto& s : series) row.push_back(fmt(s.delta_n[i]));
        for (const auto& s : series) row.push_back(fmt(s.delta_n_linear[i]));
        div.row_vector(row);
    }
    write_atomic(out_dir / "divergence.csv", div.text());

    CsvWriter lya;
    lya.header({"mode_index", "exponent", "reference_2gamma", "t_lo", "t_hi", "residual",
                "samples", "status"});
    const double w_lo = config.chaos->window ? config.chaos->window->first : times.front();
    const double w_hi = config.chaos->window ? config.chaos->window->second : times.back();
    for (const auto& s : series) {
        try {
            auto fit = lyapunov_estimate(s, w_lo, w_hi);
            lya.row(s.mode.index, fit.exponent, fit.reference, fit.t_lo, fit.t_hi,
                    fit.residual, fit.samples, "ok");
        } catch (const Error& e) {
            lya.row(s.mode.index, "nan", fmt(2.0 * s.mode.gamma), "nan", "nan", "nan", 0,
                    e.name());
        }
    }
    write_atomic(out_dir / "lyapunov.csv", lya.text());

    auto report = lifetimes(a);
    CsvWriter life;
    life.header({"mode_index", "theta", "gamma", "lifetime", "flagged"});
    for (std::size_t k = 0; k < a.size(); ++k) {
        const bool flagged =
            std::find(report.flagged.begin(), report.flagged.end(), k) != report.flagged.end();
        life.row(grid->mode(k).index, a.thetas()[k], grid->mode(k).gamma,
                 report.lifetimes[k], flagged ? 1 : 0);
    }
    write_atomic(out_dir / "lifetimes.csv", life.text());
    json summary = {{"tau_max", report.tau_max},
                    {"tau_min", report.tau_min},
                    {"recognition_window", report.recognition_window}};
    write_atomic(out_dir / "lifetimes_summary.json", summary.dump(2) + "\n");

    auto crossings = crossing_times(a, b);
    CsvWriter cross;
    cross.header({"mode_index", "theta_a", "theta_b", "t_star", "t_star_approx"});
    for (std::size_t k = 0; k < crossings.size(); ++k)
        cross.row(crossings[k].mode.index, a.thetas()[k], b.thetas()[k],
                  crossings[k].exact, crossings[k].paper_approx);
    write_atomic(out_dir / "crossings.csv", cross.text());
}

void cmd_overlap(const RunConfig& config, const fs::path& out_dir) {
    if (!config.overlap)
        throw Error(ErrorCode::NeedTwoCodes, "overlap: section missing");
    auto grid = make_grid(config);
    MemoryCode a = resolve_code(config, grid, config.overlap->code_a);
    MemoryCode b = resolve_code(config, grid, config.overlap->code_b);
    auto times = require_times(config);

    CsvWriter csv;
    csv.header({"t", "overlap", "log_abs_overlap"});
    for (double t : times) {
        EvolvedState sa(a, t), sb(b, t);
        csv.row(t, overlap(sa, sb), log_abs_overlap(sa, sb));
    }
    write_atomic(out_dir / "overlap.csv", csv.text());
}

void cmd_entropy(const RunConfig& config, const fs::path& out_dir) {
    if (!config.entropy_code)
        throw Error(ErrorCode::ConfigInvalid, "entropy.code: missing");
    auto grid = make_grid(config);
    MemoryCode code = resolve_code(config, grid, *config.entropy_code);
    auto times = require_times(config);

    CsvWriter csv;
    std::vector<std::string> header = {"t"};
    for (std::size_t k = 0; k < grid->size(); ++k)
        header.push_back("S_" + std::to_string(k));
    header.push_back("S_total");
    csv.row_vector(header);
    for (double t : times) {
        EvolvedState state(code, t);
        std::vector<std::string> row = {fmt(t)};
        double total = 0.0;
        for (std::size_t k = 0; k < grid->size(); ++k) {
            const double s = mode_entropy(squeeze_parameter(state, k));
            total += s;
            row.push_back(fmt(s));
        }
        row.push_back(fmt(total));
        csv.row_vector(row);
    }
    write_atomic(out_dir / "entropy.csv", csv.text());
}

void cmd_associate(const RunConfig& config, const fs::path& out_dir) {
    if (!config.associate)
        throw Error(ErrorCode::ConfigInvalid, "associate: section missing");
    auto grid = make_grid(config);
    std::vector<std::string> names = config.associate->codes;
    if (names.empty())
        for (const auto& [name, thetas] : config.codes) names.push_back(name);
    std::vector<MemoryCode> codes;
    codes.reserve(names.size());
    for (const auto& name : names) codes.push_back(resolve_code(config, grid, name));
    auto times = require_times(config);

    auto events = association_events(codes, times, config.associate->threshold);
    CsvWriter csv;
    csv.header({"code_a", "code_b", "t", "overlap"});
    for (const auto& e : events) csv.row(names[e.i], names[e.j], e.t, e.overlap);
    write_atomic(out_dir / "associations.csv", csv.text());
}

namespace {

struct FormulaReport {
    double max_dev = 0.0;
    int n_max_used = 0;
    double leakage = 0.0;
    std::string error;

    void absorb(double dev, int n_max, double leak) {
        max_dev = std::max(max_dev, dev);
        n_max_used = std::max(n_max_used, n_max);
        leakage = std::max(leakage, leak);
    }
};

struct PerR {
    bool ok = false;
    std::string error;
    int n_max = 0;
    double leakage = 0.0;
    double dev_occupation = 0.0;
    double dev_entropy = 0.0;
    double dev_schmidt = 0.0;
    double dev_pair = 0.0;
};

int policy_n_max(double r, const OracleSettings& oracle) {
    const int required = std::max(16, fock::required_n_max(r, oracle.tolerance));
    if (oracle.n_max_cap && required > *oracle.n_max_cap)
        throw Error(ErrorCode::TruncationTooSmall,
                    "r = " + fmt(r) + " needs n_max = " + std::to_string(required) +
                        " above the cap " + std::to_string(*oracle.n_max_cap));
    return required;
}

PerR evaluate_r(double r, const OracleSettings& oracle) {
    PerR rec;
    try {
        rec.n_max = policy_n_max(r, oracle);
        auto grid = build_grid({ModeSpec{1.0, 0.5, std::nullopt}});
        auto state = fock::build_squeezed(r, rec.n_max);
        rec.leakage = state.leakage();

        EvolvedState analytic(MemoryCode(grid, {-r}), 0.0);
        rec.dev_occupation =
            std::abs(fock::expectation(state, fock::Observable::NumberA) -
                     occupation(analytic, 0));
        rec.dev_entropy =
            std::abs(fock::oracle_entropy(state, 2.0 * oracle.tolerance + 1e-15) -
                     entanglement_entropy(analytic));
        auto w = schmidt_weights(analytic, 0, rec.n_max);
        for (int n = 0; n <= rec.n_max; ++n) {
            const double p = state.amp(n) * state.amp(n);
            rec.dev_schmidt = std::max(
                rec.dev_schmidt, std::abs(p - w.weights[static_cast<std::size_t>(n)]));
        }
        const double pair_ref = std::sinh(r) * std::cosh(r);
        rec.dev_pair = std::abs(fock::expectation(state, fock::Observable::PairCreation) -
                                pair_ref);
        rec.ok = true;
    } catch (const Error& e) {
        rec.error = e.name();
    }
    return rec;
}

}  // namespace

bool cmd_oracle_check(const RunConfig& config, const fs::path& out_dir, int threads) {
    if (!config.oracle_check_r)
        throw Error(ErrorCode::ConfigInvalid, "oracle_check.r_values: missing");
    const auto& rs = *config.oracle_check_r;

    std::vector<PerR> records(rs.size());
    const auto eval_at = [&](std::size_t i) { records[i] = evaluate_r(rs[i], config.oracle); };
    if (threads > 1) {
        std::atomic<std::size_t> next{0};
        const auto worker = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < rs.size();) eval_at(i);
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
    } else {
        for (std::size_t i = 0; i < rs.size(); ++i) eval_at(i);
    }

    FormulaReport occupation_report, entropy_report, schmidt_report, pair_report,
        overlap_report;
    for (const auto& rec : records) {
        for (FormulaReport* rep :
             {&occupation_report, &entropy_report, &schmidt_report, &pair_report})
            if (!rec.ok && rep->error.empty()) rep->error = rec.error;
        if (!rec.ok) continue;
        occupation_report.absorb(rec.dev_occupation, rec.n_max, rec.leakage);
        entropy_report.absorb(rec.dev_entropy, rec.n_max, rec.leakage);
        schmidt_report.absorb(rec.dev_schmidt, rec.n_max, rec.leakage);
        pair_report.absorb(rec.dev_pair, rec.n_max, rec.leakage);
    }

    // pairwise overlaps against the closed form 1/cosh(r_i - r_j)
    try {
        for (std::size_t i = 0; i < rs.size(); ++i) {
            for (std::size_t j = i; j < rs.size(); ++j) {
                const int n_max =
                    std::max(policy_n_max(rs[i], config.oracle), policy_n_max(rs[j], config.oracle));
                auto si = fock::build_squeezed(rs[i], n_max);
                auto sj = fock::build_squeezed(rs[j], n_max);
                const double ref = 1.0 / std::cosh(rs[i] - rs[j]);
                overlap_report.absorb(std::abs(fock::inner_product(si, sj) - ref), n_max,
                                      std::max(si.leakage(), sj.leakage()));
            }
        }
    } catch (const Error& e) {
        overlap_report.error = e.name();
    }

    const auto to_json = [](const FormulaReport& rep) {
        if (!rep.error.empty()) return json{{"error", rep.error}};
        return json{{"max_dev", rep.max_dev},
                    {"n_max_used", rep.n_max_used},
                    {"leakage", rep.leakage}};
    };
    json formulas = {{"occupation", to_json(occupation_report)},
                     {"overlap", to_json(overlap_report)},
                     {"schmidt_weights", to_json(schmidt_report)},
                     {"entropy", to_json(entropy_report)},
                     {"pair_creation", to_json(pair_report)}};

    bool pass = true;
    for (const FormulaReport* rep : {&occupation_report, &overlap_report, &schmidt_report,
                                     &entropy_report, &pair_report})
        pass = pass && rep->error.empty() && rep->max_dev < 1e-8;

    json report = {{"tolerance", config.oracle.tolerance},
                   {"r_values", rs},
                   {"formulas", formulas},
                   {"pass", pass}};
    write_atomic(out_dir / "oracle_check.json", report.dump(2) + "\n");
    return pass;
}

void cmd_oscillator(const RunConfig& config, const fs::path& out_dir) {
    if (!config.oscillator)
        throw Error(ErrorCode::ConfigInvalid, "oscillator: section missing");
    const auto& o = *config.oscillator;
    osc::OscParams params{o.m, o.gamma, o.k};
    osc::OscState initial{o.x0, o.vx0, o.y0, o.vy0};
    auto traj = osc::integrate(params, initial, o.t_end, o.dt);

    CsvWriter csv;
    csv.header({"t", "x", "v_x", "y", "v_y", "h"});
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        csv.row(traj.times[i], traj.states[i].x, traj.states[i].vx, traj.states[i].y,
                traj.states[i].vy, traj.h[i]);
    write_atomic(out_dir / "oscillator.csv", csv.text());

    const double h0 = traj.h.front();
    double drift = 0.0;
    for (double h : traj.h) drift = std::max(drift, std::abs(h - h0));

    const auto fit_or_null = [&](bool mirror) -> json {
        try {
            auto fit = osc::envelope_rate(traj, mirror);
            return json{{"rate", fit.rate}, {"residual", fit.residual},
                        {"extrema", fit.extrema}};
        } catch (const Error&) {
            return nullptr;
        }
    };

    json summary = {{"h_initial", h0},
                    {"h_max_abs_drift", drift},
                    {"h_max_rel_drift", h0 != 0.0 ? json(drift / std::abs(h0)) : json(nullptr)},
                    {"x_envelope", fit_or_null(false)},
                    {"y_envelope", fit_or_null(true)},
                    {"x_reference_rate", -params.damping / (2.0 * params.mass)},
                    {"y_reference_rate", params.damping / (2.0 * params.mass)},
                    {"underdamped", params.underdamped()}};
    write_atomic(out_dir / "oscillator_summary.json", summary.dump(2) + "\n");
}

}  // namespace dqm::cli
