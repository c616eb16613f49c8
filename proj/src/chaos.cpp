#include "dqm/chaos.hpp"

#include <algorithm>
#include <cmath>

#include "dqm/detail/linear_fit.hpp"

namespace dqm {

namespace {

void check_times(std::span<const double> times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]))
            throw Error(ErrorCode::NonFinite, "time sample " + std::to_string(i),
                        static_cast<long>(i));
        if (i > 0 && times[i] <= times[i - 1])
            throw Error(ErrorCode::UnorderedTimes,
                        "times must be strictly increasing (sample " + std::to_string(i) + ")",
                        static_cast<long>(i));
    }
}

// sinh^2(u) - sinh^2(v) evaluated as sinh(u+v) sinh(u-v): avoids cancellation
// for nearby arguments.
double sinh_sq_diff(double u, double v) {
    return std::sinh(u + v) * std::sinh(u - v);
}

}  // namespace

std::vector<DivergenceSeries> divergence_series(const MemoryCode& a,
                                                const MemoryCode& b,
                                                std::span<const double> times) {
    detail::require_same_grid(a, b);
    check_times(times);
    std::vector<DivergenceSeries> out;
    out.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const Mode& mode = a.grid().mode(k);
        DivergenceSeries s;
        s.mode = mode;
        s.delta_theta = a.thetas()[k] - b.thetas()[k];
        s.times.assign(times.begin(), times.end());
        s.delta_n.resize(times.size());
        s.delta_n_linear.resize(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double ra = mode.gamma * times[i] - a.thetas()[k];
            const double rb = mode.gamma * times[i] - b.thetas()[k];
            s.delta_n[i] = sinh_sq_diff(rb, ra);
            s.delta_n_linear[i] = std::sinh(2.0 * ra) * s.delta_theta;
        }
        out.push_back(std::move(s));
    }
    return out;
}

DivergenceRate divergence_rate(const MemoryCode& a, const MemoryCode& b, double t,
                               std::size_t k) {
    detail::require_same_grid(a, b);
    const Mode& mode = a.grid().mode(k);
    const double ra = mode.gamma * t - a.thetas()[k];
    const double rb = mode.gamma * t - b.thetas()[k];
    const double delta_theta = a.thetas()[k] - b.thetas()[k];
    DivergenceRate rate;
    rate.linearized = 2.0 * mode.gamma * std::cosh(2.0 * ra) * delta_theta;
    rate.exact = mode.gamma * (std::sinh(2.0 * rb) - std::sinh(2.0 * ra));
    return rate;
}

LyapunovFit lyapunov_estimate(const DivergenceSeries& series) {
    if (series.times.empty())
        throw Error(ErrorCode::InsufficientSamples, "empty series");
    return lyapunov_estimate(series, series.times.front(), series.times.back());
}

LyapunovFit lyapunov_estimate(const DivergenceSeries& series, double t_lo, double t_hi) {
    std::vector<double> ts, logs;
    int sign = 0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        if (t < t_lo || t > t_hi) continue;
        const double dn = series.delta_n[i];
        if (dn == 0.0)
            throw Error(ErrorCode::WindowContainsZeroCrossing,
                        "Delta N vanishes at t = " + std::to_string(t));
        const int s = dn > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign)
            throw Error(ErrorCode::WindowContainsZeroCrossing,
                        "Delta N changes sign inside the window near t = " + std::to_string(t));
        ts.push_back(t);
        logs.push_back(std::log(std::abs(dn)));
    }
    if (ts.size() < 8)
        throw Error(ErrorCode::InsufficientSamples,
                    "need >= 8 samples in the window, got " + std::to_string(ts.size()));
    const detail::LineFit fit = detail::fit_line(ts, logs);
    LyapunovFit out;
    out.mode = series.mode;
    out.exponent = fit.slope;
    out.reference = 2.0 * series.mode.gamma;
    out.t_lo = ts.front();
    out.t_hi = ts.back();
    out.residual = fit.rms;
    out.samples = static_cast<int>(ts.size());
    return out;
}

LifetimeReport lifetimes(const MemoryCode& code) {
    LifetimeReport report;
    report.lifetimes.resize(code.size());
    for (std::size_t k = 0; k < code.size(); ++k) {
        const Mode& mode = code.grid().mode(k);
        report.lifetimes[k] = code.thetas()[k] / mode.gamma;
        if (code.thetas()[k] < 0.0) report.flagged.push_back(k);
    }
    report.tau_max = *std::max_element(report.lifetimes.begin(), report.lifetimes.end());
    report.tau_min = *std::min_element(report.lifetimes.begin(), report.lifetimes.end());
    report.recognition_window = report.tau_max - report.tau_min;
    return report;
}

std::vector<CrossingTime> crossing_times(const MemoryCode& a, const MemoryCode& b) {
    detail::require_same_grid(a, b);
    std::vector<CrossingTime> out;
    out.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const Mode& mode = a.grid().mode(k);
        CrossingTime c;
        c.mode = mode;
        // Delta N vanishes where the two arguments are opposite.
        c.exact = (a.thetas()[k] + b.thetas()[k]) / (2.0 * mode.gamma);
        c.paper_approx = a.thetas()[k] / mode.gamma;
        out.push_back(c);
    }
    return out;
}

std::vector<AssociationEvent> association_events(std::span<const MemoryCode> codes,
                                                 std::span<const double> t_grid,
                                                 double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw Error(ErrorCode::BadThreshold,
                    "threshold must lie in (0, 1), got " + std::to_string(threshold));
    check_times(t_grid);
    for (std::size_t i = 1; i < codes.size(); ++i)
        detail::require_same_grid(codes[0], codes[i]);
    std::vector<AssociationEvent> events;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        for (std::size_t j = i + 1; j < codes.size(); ++j) {
            for (double t : t_grid) {
                const double o =
                    overlap(EvolvedState(codes[i], t), EvolvedState(codes[j], t));
                if (std::abs(o) >= threshold)
                    events.push_back(AssociationEvent{i, j, t, o});
            }
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const AssociationEvent& lhs, const AssociationEvent& rhs) {
                         if (std::abs(lhs.overlap) != std::abs(rhs.overlap))
                             return std::abs(lhs.overlap) > std::abs(rhs.overlap);
                         if (lhs.i != rhs.i) return lhs.i < rhs.i;
                         if (lhs.j != rhs.j) return lhs.j < rhs.j;
                         return lhs.t < rhs.t;
                     });
    return events;
}

EntropyDivergence entropy_divergence_check(const MemoryCode& a, const MemoryCode& b,
                                           double t, double dt,
                                           std::optional<double> fixed_beta) {
    detail::require_same_grid(a, b);
    if (!(dt > 0.0)) throw Error(ErrorCode::ConfigInvalid, "dt: must be > 0");
    EntropyDivergence result;
    result.lhs_per_mode.resize(a.size());
    result.rhs_per_mode.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const Mode& mode = a.grid().mode(k);
        const double theta_a = a.thetas()[k];
        const double theta_b = b.thetas()[k];
        const double delta_theta = theta_a - theta_b;
        const double ra = mode.gamma * t - theta_a;
        const double rb = mode.gamma * t - theta_b;
        if (ra == 0.0 || rb == 0.0)
            throw Error(ErrorCode::ZeroSqueeze,
                        "quasi-equilibrium beta undefined at mode " + std::to_string(k),
                        static_cast<long>(k));
        // analytic entropy differential along each trajectory:
        // dS/dt = -gamma sinh(2r) ln tanh^2 r
        const auto entropy_rate = [&mode](double r) {
            return -mode.gamma * std::sinh(2.0 * r) * std::log(std::tanh(r) * std::tanh(r));
        };
        const double beta_a =
            fixed_beta ? *fixed_beta : -std::log(std::tanh(ra) * std::tanh(ra)) / mode.energy;
        const double beta_b =
            fixed_beta ? *fixed_beta : -std::log(std::tanh(rb) * std::tanh(rb)) / mode.energy;
        const double rhs = (entropy_rate(rb) / beta_b - entropy_rate(ra) / beta_a) * dt;
        // linearized divergence rate anchored at the midpoint code, second
        // order in delta_theta
        const double r_mid = mode.gamma * t - 0.5 * (theta_a + theta_b);
        const double lhs =
            2.0 * mode.energy * mode.gamma * std::cosh(2.0 * r_mid) * delta_theta * dt;
        result.lhs_per_mode[k] = lhs;
        result.rhs_per_mode[k] = rhs;
        result.lhs += lhs;
        result.rhs += rhs;
    }
    const double scale = std::max(std::abs(result.lhs), std::abs(result.rhs));
    result.relative_gap = scale == 0.0 ? 0.0 : std::abs(result.lhs - result.rhs) / scale;
    return result;
}

}  // namespace dqm
