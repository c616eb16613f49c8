#pragma once

#include <vector>

#include "dqm/errors.hpp"

namespace dqm::osc {

// Classical doubled damped oscillator:
//   m x'' = -gamma x' - k x        (damped)
//   m y'' = +gamma y' - k y        (time-reversed mirror)
// The y = 0 manifold is an exact solution family on which the system reduces
// to the ordinary damped oscillator.

struct OscParams {
    double mass = 1.0;
    double damping = 0.0;    // mechanical resistance gamma >= 0
    double stiffness = 1.0;  // k > 0

    bool underdamped() const noexcept {
        return damping * damping < 4.0 * mass * stiffness;
    }
};

void validate(const OscParams& params);

struct OscState {
    double x = 0.0;
    double vx = 0.0;
    double y = 0.0;
    double vy = 0.0;
};

struct OscillatorTrajectory {
    OscParams params;
    std::vector<double> times;
    std::vector<OscState> states;
    std::vector<double> h;  // m vx vy + k x y, recorded each step
};

// Fixed-step classic RK4; local error O(dt^5). Throws NonFinite with the
// overflow time if the mirror growth leaves double range.
OscillatorTrajectory integrate(const OscParams& params, const OscState& initial,
                               double t_end, double dt);

// Underdamped closed form used as reference; Overdamped otherwise.
double analytic_x(const OscParams& params, double x0, double v0, double t);

// h = m vx vy + k x y; constant along exact solutions, zero on y = 0.
double conserved_h(const OscState& state, const OscParams& params);

struct EnvelopeFit {
    double rate = 0.0;      // slope of ln|amplitude| at extrema; -gamma/2m for x
    double residual = 0.0;  // RMS of the log-linear fit
    int extrema = 0;
};

// Log-linear regression on extrema of x (mirror = false) or y (mirror = true).
EnvelopeFit envelope_rate(const OscillatorTrajectory& trajectory, bool mirror);

}  // namespace dqm::osc
