#include <cmath>
#include <vector>

#include "doctest.h"
#include "dqm/chaos.hpp"

using namespace dqm;

namespace {

GridPtr single(double gamma = 0.5) {
    return build_grid({ModeSpec{1.0, gamma, std::nullopt}});
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

}  // namespace

TEST_CASE("divergence series, exact and linearized") {
    auto grid = single();
    MemoryCode a(grid, {1.0});
    MemoryCode b(grid, {1.01});
    auto times = linspace(0.0, 20.0, 11);

    auto zero = divergence_series(a, a, times);
    for (double d : zero[0].delta_n) CHECK(d == 0.0);
    for (double d : zero[0].delta_n_linear) CHECK(d == 0.0);

    auto series = divergence_series(a, b, times);
    REQUIRE(series.size() == 1);
    CHECK(series[0].delta_theta == doctest::Approx(-0.01).epsilon(1e-12));
    CHECK(series[0].delta_n[0] == doctest::Approx(0.036647254143695226).epsilon(1e-12));
    CHECK(series[0].delta_n_linear[0] ==
          doctest::Approx(0.036268604078470185).epsilon(1e-12));

    // |Delta N| grows like exp(2 gamma t) once past the crossing
    const double t1 = times[9], t2 = times[10];
    const double growth = std::log(std::abs(series[0].delta_n[10]) /
                                   std::abs(series[0].delta_n[9]));
    CHECK(growth == doctest::Approx(2.0 * 0.5 * (t2 - t1)).epsilon(1e-3));

    CHECK_THROWS_AS(divergence_series(a, b, std::vector<double>{1.0, 1.0}), Error);
    auto other = single(0.25);
    CHECK_THROWS_AS(divergence_series(a, MemoryCode(other, {1.0}), times), Error);
}

TEST_CASE("divergence rate") {
    auto grid = single();
    MemoryCode a(grid, {1.0});
    MemoryCode b(grid, {0.99});  // delta_theta = +0.01

    CHECK(divergence_rate(a, a, 3.0, 0).linearized == 0.0);
    CHECK(divergence_rate(a, a, 3.0, 0).exact == 0.0);

    CHECK(divergence_rate(a, b, 2.0, 0).linearized == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(divergence_rate(a, b, 6.0, 0).linearized ==
          doctest::Approx(0.2730823283601649).epsilon(1e-12));

    // exact rate against a central finite difference of the exact series
    for (double t : {0.5, 2.5, 6.0, 9.0}) {
        const double h = 1e-6;
        auto series = divergence_series(a, b, std::vector<double>{t - h, t + h});
        const double fd = (series[0].delta_n[1] - series[0].delta_n[0]) / (2.0 * h);
        const double exact = divergence_rate(a, b, t, 0).exact;
        CHECK(std::abs(fd - exact) / std::abs(exact) < 1e-6);
    }
}

TEST_CASE("lyapunov estimate recovers 2 gamma") {
    for (double gamma : {0.25, 0.5, 1.0}) {
        auto grid = single(gamma);
        MemoryCode a(grid, {1.0});
        MemoryCode b(grid, {1.0 - 1e-3});
        // window Gamma t - theta in [2, 10]
        auto times = linspace((2.0 + 1.0) / gamma, (10.0 + 1.0) / gamma, 25);
        auto fit = lyapunov_estimate(divergence_series(a, b, times)[0]);
        CHECK(fit.exponent == doctest::Approx(2.0 * gamma).epsilon(0.02));
        CHECK(fit.reference == 2.0 * gamma);
        CHECK(fit.samples == 25);
        CHECK(fit.residual >= 0.0);
    }
}

TEST_CASE("lyapunov estimate refuses bad windows") {
    auto grid = single();
    MemoryCode a(grid, {1.0});
    MemoryCode b(grid, {1.001});
    // the crossing sits at t* = (theta_a + theta_b) / (2 gamma) = 2.001
    auto straddling = divergence_series(a, b, linspace(0.0, 8.0, 30));
    try {
        lyapunov_estimate(straddling[0]);
        FAIL("expected WindowContainsZeroCrossing");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WindowContainsZeroCrossing);
    }

    auto short_series = divergence_series(a, b, linspace(8.0, 10.0, 5));
    try {
        lyapunov_estimate(short_series[0]);
        FAIL("expected InsufficientSamples");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientSamples);
    }

    // restricting the window past the crossing makes the same series usable
    auto wide = divergence_series(a, b, linspace(0.0, 20.0, 81));
    auto fit = lyapunov_estimate(wide[0], 8.0, 20.0);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.02));
    CHECK(fit.t_lo >= 8.0);
}

TEST_CASE("lifetimes and the recognition window") {
    auto grid = single();
    auto report = lifetimes(MemoryCode(grid, {1.0}));
    CHECK(report.lifetimes[0] == 2.0);
    CHECK(report.recognition_window == 0.0);
    CHECK(report.flagged.empty());

    auto grid2 = build_grid({ModeSpec{1.0, 0.5, std::nullopt}, ModeSpec{1.0, 0.25, std::nullopt}});
    auto r2 = lifetimes(MemoryCode(grid2, {1.0, 1.0}));
    CHECK(r2.tau_max == 4.0);
    CHECK(r2.tau_min == 2.0);
    CHECK(r2.recognition_window == 2.0);

    CHECK(lifetimes(MemoryCode(grid, {0.0})).lifetimes[0] == 0.0);

    auto flagged = lifetimes(MemoryCode(grid, {-1.0}));
    CHECK(flagged.lifetimes[0] == -2.0);
    REQUIRE(flagged.flagged.size() == 1);
    CHECK(flagged.flagged[0] == 0);
}

TEST_CASE("crossing times") {
    auto grid = single();
    auto degenerate = crossing_times(MemoryCode(grid, {1.0}), MemoryCode(grid, {1.0}));
    CHECK(degenerate[0].exact == 2.0);
    CHECK(degenerate[0].paper_approx == 2.0);

    auto close = crossing_times(MemoryCode(grid, {1.0}), MemoryCode(grid, {1.01}));
    CHECK(close[0].exact == doctest::Approx(2.01).epsilon(1e-12));
    CHECK(close[0].paper_approx == 2.0);

    auto gridg1 = single(1.0);
    auto wide = crossing_times(MemoryCode(gridg1, {0.0}), MemoryCode(gridg1, {2.0}));
    CHECK(wide[0].exact == 1.0);

    // the exact crossing is where the divergence vanishes
    MemoryCode a(grid, {1.0}), b(grid, {1.25});
    const double t_star = crossing_times(a, b)[0].exact;
    auto series = divergence_series(a, b, std::vector<double>{t_star});
    CHECK(std::abs(series[0].delta_n[0]) < 1e-12);
}

TEST_CASE("association events") {
    auto grid2 = build_grid({ModeSpec{1.0, 0.5, std::nullopt}, ModeSpec{1.0, 0.5, std::nullopt}});
    std::vector<double> zeros2 = {0.0, 0.0}, ones2 = {1.0, 1.0};
    std::vector<MemoryCode> pair2 = {MemoryCode(grid2, zeros2), MemoryCode(grid2, ones2)};
    auto t_grid = linspace(0.0, 4.0, 5);

    auto events2 = association_events(pair2, t_grid, 0.05);
    CHECK(events2.size() == 5);  // cosh(1)^-2 = 0.42 at every grid point
    CHECK(events2[0].overlap == doctest::Approx(1.0 / std::cosh(1.0) / std::cosh(1.0)));

    std::vector<MemoryCode> identical = {MemoryCode(grid2, ones2), MemoryCode(grid2, ones2)};
    auto all = association_events(identical, t_grid, 0.999);
    CHECK(all.size() == 5);
    for (const auto& e : all) CHECK(e.overlap == 1.0);

    // ten modes kill the overlap below the same threshold
    std::vector<ModeSpec> specs(10, ModeSpec{1.0, 0.5, std::nullopt});
    auto grid10 = build_grid(specs);
    std::vector<MemoryCode> pair10 = {MemoryCode(grid10, std::vector<double>(10, 0.0)),
                                      MemoryCode(grid10, std::vector<double>(10, 1.0))};
    CHECK(association_events(pair10, t_grid, 0.05).empty());

    CHECK_THROWS_AS(association_events(pair2, t_grid, 0.0), Error);
    CHECK_THROWS_AS(association_events(pair2, t_grid, 1.5), Error);
}

TEST_CASE("entropy--divergence relation under quasi-equilibrium") {
    auto grid = single();
    MemoryCode a(grid, {1.0});

    auto same = entropy_divergence_check(a, a, 6.0, 1e-3);
    CHECK(same.lhs == 0.0);
    CHECK(same.rhs == 0.0);
    CHECK(same.relative_gap == 0.0);

    MemoryCode b(grid, {1.0 - 1e-3});
    auto result = entropy_divergence_check(a, b, 6.0, 1e-3);
    CHECK(result.relative_gap < 1e-6);
    CHECK(result.lhs == doctest::Approx(result.rhs).epsilon(1e-5));
    CHECK(result.lhs > 0.0);

    // fixed global beta away from quasi-equilibrium: reported, not asserted
    auto off = entropy_divergence_check(a, b, 6.0, 1e-3, 0.3);
    CHECK(off.relative_gap > 1e-3);

    // beta undefined where the squeeze crosses zero
    CHECK_THROWS_AS(entropy_divergence_check(a, b, 2.0, 1e-3), Error);
}

TEST_CASE("trajectories never cross and escape the attractor exponentially") {
    // self-overlap falls monotonically in |t - t'| and in mode count
    for (std::size_t m : {1u, 3u}) {
        std::vector<ModeSpec> specs(m, ModeSpec{1.0, 0.5, std::nullopt});
        auto grid = build_grid(specs);
        MemoryCode code(grid, std::vector<double>(m, 0.7));
        double previous = 1.0;
        for (double dt = 0.5; dt <= 6.0; dt += 0.5) {
            const double o = overlap(EvolvedState(code, 3.0 + dt), EvolvedState(code, 3.0));
            CHECK(o < previous);
            CHECK(o < 1.0);
            previous = o;
        }
    }

    // overlap never returns to one for distinct codes at any sampled pair
    auto grid = single();
    MemoryCode a(grid, {1.0}), b(grid, {1.3});
    for (double t = 0.0; t <= 10.0; t += 0.5)
        for (double tp = 0.0; tp <= 10.0; tp += 0.5)
            CHECK(overlap(EvolvedState(a, t), EvolvedState(b, tp)) < 1.0);

    // attractor escape: overlap with the initial state times e^{sum Gamma t} -> 2^M
    for (std::size_t m : {1u, 3u, 10u}) {
        std::vector<ModeSpec> specs(m, ModeSpec{1.0, 0.5, std::nullopt});
        auto gm = build_grid(specs);
        MemoryCode vac(gm, std::vector<double>(m, 0.0));
        const double t = 24.0;  // Gamma t = 12 per mode
        const double value = overlap(EvolvedState(vac, t), EvolvedState(vac, 0.0)) *
                             std::exp(gm->gamma_sum() * t);
        CHECK(std::abs(value - std::pow(2.0, m)) / std::pow(2.0, m) < 1e-6);
    }
}
