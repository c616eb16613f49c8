#include "dqm/oscillator.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "dqm/detail/linear_fit.hpp"

namespace dqm::osc {

void validate(const OscParams& params) {
    if (!std::isfinite(params.mass) || params.mass <= 0.0)
        throw Error(ErrorCode::ConfigInvalid, "oscillator.m: must be > 0");
    if (!std::isfinite(params.stiffness) || params.stiffness <= 0.0)
        throw Error(ErrorCode::ConfigInvalid, "oscillator.k: must be > 0");
    if (!std::isfinite(params.damping) || params.damping < 0.0)
        throw Error(ErrorCode::ConfigInvalid, "oscillator.gamma: must be >= 0");
}

namespace {

struct Derivative {
    double dx, dvx, dy, dvy;
};

Derivative rhs(const OscParams& p, const OscState& s) {
    // m x'' = -gamma x' - k x ; m y'' = +gamma y' - k y
    return Derivative{
        s.vx,
        (-p.damping * s.vx - p.stiffness * s.x) / p.mass,
        s.vy,
        (p.damping * s.vy - p.stiffness * s.y) / p.mass,
    };
}

OscState advance(const OscParams& p, const OscState& s, double dt) {
    const auto step = [&](const OscState& base, const Derivative& d, double h) {
        return OscState{base.x + h * d.dx, base.vx + h * d.dvx, base.y + h * d.dy,
                        base.vy + h * d.dvy};
    };
    const Derivative k1 = rhs(p, s);
    const Derivative k2 = rhs(p, step(s, k1, dt / 2.0));
    const Derivative k3 = rhs(p, step(s, k2, dt / 2.0));
    const Derivative k4 = rhs(p, step(s, k3, dt));
    return OscState{
        s.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
        s.vx + dt / 6.0 * (k1.dvx + 2.0 * k2.dvx + 2.0 * k3.dvx + k4.dvx),
        s.y + dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
        s.vy + dt / 6.0 * (k1.dvy + 2.0 * k2.dvy + 2.0 * k3.dvy + k4.dvy),
    };
}

bool finite(const OscState& s) {
    return std::isfinite(s.x) && std::isfinite(s.vx) && std::isfinite(s.y) &&
           std::isfinite(s.vy);
}

}  // namespace

double conserved_h(const OscState& state, const OscParams& params) {
    return params.mass * state.vx * state.vy + params.stiffness * state.x * state.y;
}

OscillatorTrajectory integrate(const OscParams& params, const OscState& initial,
                               double t_end, double dt) {
    validate(params);
    if (!(dt > 0.0)) throw Error(ErrorCode::ConfigInvalid, "dt: must be > 0");
    if (!(t_end >= dt)) throw Error(ErrorCode::ConfigInvalid, "t_end: must be >= dt");
    if (!finite(initial))
        throw Error(ErrorCode::NonFinite, "initial state", std::nullopt,
                    ErrorKind::Validation);

    const long steps = static_cast<long>(std::llround(t_end / dt));
    OscillatorTrajectory traj;
    traj.params = params;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.h.reserve(steps + 1);

    OscState s = initial;
    traj.times.push_back(0.0);
    traj.states.push_back(s);
    traj.h.push_back(conserved_h(s, params));
    for (long i = 1; i <= steps; ++i) {
        s = advance(params, s, dt);
        const double t = static_cast<double>(i) * dt;
        if (!finite(s))
            throw Error(ErrorCode::NonFinite,
                        "trajectory left double range at t = " + std::to_string(t),
                        i, ErrorKind::Computation);
        traj.times.push_back(t);
        traj.states.push_back(s);
        traj.h.push_back(conserved_h(s, params));
    }
    return traj;
}

double analytic_x(const OscParams& params, double x0, double v0, double t) {
    validate(params);
    if (!params.underdamped())
        throw Error(ErrorCode::Overdamped,
                    "closed-form reference requires gamma^2 < 4 m k");
    const double lambda = params.damping / (2.0 * params.mass);
    const double omega =
        std::sqrt(params.stiffness / params.mass - lambda * lambda);
    return std::exp(-lambda * t) *
           (x0 * std::cos(omega * t) + (v0 + lambda * x0) / omega * std::sin(omega * t));
}

EnvelopeFit envelope_rate(const OscillatorTrajectory& trajectory, bool mirror) {
    // Log-linear fit through |coordinate| at velocity sign changes. Successive
    // extrema of e^{at} cos(wt + phi) lie on a self-similar envelope, so the
    // fit recovers the exponent a.
    std::vector<double> ts, logs;
    const auto coord = [&](const OscState& s) { return mirror ? s.y : s.x; };
    const auto vel = [&](const OscState& s) { return mirror ? s.vy : s.vx; };
    for (std::size_t i = 1; i < trajectory.states.size(); ++i) {
        const double v0 = vel(trajectory.states[i - 1]);
        const double v1 = vel(trajectory.states[i]);
        if (v0 == 0.0 || v0 * v1 > 0.0) continue;
        const double a = std::abs(coord(trajectory.states[i]));
        if (a <= 0.0) continue;
        ts.push_back(trajectory.times[i]);
        logs.push_back(std::log(a));
    }
    if (ts.size() < 4)
        throw Error(ErrorCode::InsufficientSamples,
                    "need >= 4 extrema for the envelope fit, got " +
                        std::to_string(ts.size()));
    const detail::LineFit fit = detail::fit_line(ts, logs);
    EnvelopeFit out;
    out.rate = fit.slope;
    out.residual = fit.rms;
    out.extrema = static_cast<int>(ts.size());
    return out;
}

}  // namespace dqm::osc
