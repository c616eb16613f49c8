#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dqm/analytics.hpp"
#include "dqm/mode_space.hpp"

namespace dqm {

// Chaos diagnostics on trajectories in memory space. Conventions follow the
// code-difference definition delta_theta_k = theta_a_k - theta_b_k and
// Delta N_k(t) = N_b_k(t) - N_a_k(t).

struct DivergenceSeries {
    Mode mode;
    double delta_theta = 0.0;
    std::vector<double> times;
    std::vector<double> delta_n;         // exact: sinh^2(g t - th_b) - sinh^2(g t - th_a)
    std::vector<double> delta_n_linear;  // first order: sinh(2(g t - th_a)) * delta_theta
};

std::vector<DivergenceSeries> divergence_series(const MemoryCode& a,
                                                const MemoryCode& b,
                                                std::span<const double> times);

struct DivergenceRate {
    double linearized = 0.0;  // 2 gamma cosh(2(gamma t - theta_a)) * delta_theta
    double exact = 0.0;       // gamma [sinh(2(gamma t - th_b)) - sinh(2(gamma t - th_a))]
};

DivergenceRate divergence_rate(const MemoryCode& a, const MemoryCode& b, double t,
                               std::size_t k);

struct LyapunovFit {
    Mode mode;
    double exponent = 0.0;   // least-squares slope of ln|Delta N| vs t
    double reference = 0.0;  // 2 gamma_k
    double t_lo = 0.0;
    double t_hi = 0.0;
    double residual = 0.0;   // RMS of the log-linear fit
    int samples = 0;
};

// Fits over [t_lo, t_hi] (defaults to the full series). Refuses windows with
// fewer than 8 samples or containing a sign change of Delta N.
LyapunovFit lyapunov_estimate(const DivergenceSeries& series);
LyapunovFit lyapunov_estimate(const DivergenceSeries& series, double t_lo, double t_hi);

struct LifetimeReport {
    std::vector<double> lifetimes;     // t_k = theta_k / gamma_k
    std::vector<std::size_t> flagged;  // modes with theta_k < 0 (negative lifetime)
    double tau_max = 0.0;
    double tau_min = 0.0;
    double recognition_window = 0.0;   // tau_max - tau_min
};

LifetimeReport lifetimes(const MemoryCode& code);

struct CrossingTime {
    Mode mode;
    double exact = 0.0;         // (theta_a + theta_b) / (2 gamma)
    double paper_approx = 0.0;  // theta_a / gamma, first order in delta_theta
};

// Times where Delta N_k(t) vanishes (the two sinh^2 arguments are opposite).
std::vector<CrossingTime> crossing_times(const MemoryCode& a, const MemoryCode& b);

struct AssociationEvent {
    std::size_t i = 0;
    std::size_t j = 0;
    double t = 0.0;
    double overlap = 0.0;
};

// All pairs (i < j) and grid times with |overlap| >= threshold, sorted by
// descending |overlap| (ties by i, j, t for deterministic output).
std::vector<AssociationEvent> association_events(std::span<const MemoryCode> codes,
                                                 std::span<const double> t_grid,
                                                 double threshold);

struct EntropyDivergence {
    double lhs = 0.0;  // sum_k 2 E g cosh(2(g t - thbar)) dtheta dt, thbar midpoint
    double rhs = 0.0;  // sum_k (1/beta'_k) dS'_k - (1/beta_k) dS_k
    double relative_gap = 0.0;
    std::vector<double> lhs_per_mode;
    std::vector<double> rhs_per_mode;
};

// Entropy route vs divergence route for the energy flux difference of two
// nearby trajectories over [t, t + dt]. dS is the analytic entropy
// differential along each trajectory; beta is the per-mode quasi-equilibrium
// value of each trajectory at t unless fixed_beta overrides it (diagnostic
// mode, no small-gap guarantee). The linearized side is anchored at the
// midpoint code so the gap is second order in delta_theta.
EntropyDivergence entropy_divergence_check(const MemoryCode& a, const MemoryCode& b,
                                           double t, double dt,
                                           std::optional<double> fixed_beta = std::nullopt);

}  // namespace dqm
