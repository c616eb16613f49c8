#include "dqm/analytics.hpp"

#include <cmath>
#include <numbers>

namespace dqm {

namespace {

// ln cosh without overflow for large |x|; exactly 0 at 0 so that the
// self-overlap comes out as exactly 1.
double log_cosh(double x) {
    if (x == 0.0) return 0.0;
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

}  // namespace

double squeeze_parameter(const EvolvedState& state, std::size_t k) {
    const Mode& mode = state.grid().mode(k);
    return mode.gamma * state.time() - state.code().thetas()[k];
}

double occupation(const EvolvedState& state, std::size_t k) {
    const double s = std::sinh(squeeze_parameter(state, k));
    return s * s;
}

std::vector<double> occupations(const EvolvedState& state) {
    std::vector<double> ns(state.grid().size());
    for (std::size_t k = 0; k < ns.size(); ++k) ns[k] = occupation(state, k);
    return ns;
}

double log_abs_overlap(const EvolvedState& a, const EvolvedState& b) {
    detail::require_same_grid(a.code(), b.code());
    double sum = 0.0;
    for (std::size_t k = 0; k < a.grid().size(); ++k) {
        const double dr = squeeze_parameter(a, k) - squeeze_parameter(b, k);
        sum -= log_cosh(dr);
    }
    return sum;
}

double overlap(const EvolvedState& a, const EvolvedState& b) {
    return std::exp(log_abs_overlap(a, b));
}

double decay_envelope(const MemoryCode& code, double t) {
    if (!(t >= 0.0)) throw Error(ErrorCode::ConfigInvalid, "t: must be >= 0");
    return std::exp(-t * code.grid().gamma_sum());
}

SchmidtWeights schmidt_weights(const EvolvedState& state, std::size_t k, int n_max) {
    if (n_max < 0)
        throw Error(ErrorCode::NegativeTruncation, "n_max must be >= 0");
    SchmidtWeights w;
    w.mode = state.grid().mode(k);
    w.n_max = n_max;
    const double r = squeeze_parameter(state, k);
    const double t2 = std::tanh(r) * std::tanh(r);
    const double c2 = std::cosh(r) * std::cosh(r);
    w.weights.resize(static_cast<std::size_t>(n_max) + 1);
    double wn = 1.0 / c2;  // W_0
    for (int n = 0; n <= n_max; ++n) {
        w.weights[static_cast<std::size_t>(n)] = wn;
        wn *= t2;
    }
    w.tail = std::pow(t2, n_max + 1);
    return w;
}

double mode_entropy(double r) {
    if (r == 0.0) return 0.0;
    const double s2 = std::sinh(r) * std::sinh(r);
    const double c2 = 1.0 + s2;
    return c2 * std::log(c2) - s2 * std::log(s2);
}

double entanglement_entropy(const EvolvedState& state) {
    double sum = 0.0;
    for (std::size_t k = 0; k < state.grid().size(); ++k)
        sum += mode_entropy(squeeze_parameter(state, k));
    return sum;
}

ThermalDiagnostics thermal_diagnostics(const EvolvedState& state, std::size_t k) {
    ThermalDiagnostics d;
    d.mode = state.grid().mode(k);
    d.r = squeeze_parameter(state, k);
    if (d.r == 0.0)
        throw Error(ErrorCode::ZeroSqueeze,
                    "beta is undefined at r = 0 (mode " + std::to_string(k) + ")",
                    static_cast<long>(k));
    const double t2 = std::tanh(d.r) * std::tanh(d.r);  // = exp(-beta E)
    d.beta = -std::log(t2) / d.mode.energy;
    d.bose_occupation = t2 / (1.0 - t2);  // 1/(e^{beta E} - 1), equals sinh^2 r
    const double sc = std::sinh(d.r) * std::cosh(d.r);
    d.pair_lhs = std::sinh(d.r) * std::sinh(d.r);
    d.pair_rhs = t2 * sc;
    return d;
}

}  // namespace dqm
