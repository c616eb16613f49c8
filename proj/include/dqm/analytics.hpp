#pragma once

#include <span>
#include <vector>

#include "dqm/mode_space.hpp"

namespace dqm {

// Closed-form quantities of the evolved memory state. Every function here has
// an independent truncated-Fock counterpart in fock_oracle.hpp.

// r_k(t) = gamma_k t - theta_k. The t = 0 pair amplitude is tanh(r)^n / cosh(r)
// with r(0) = -theta.
double squeeze_parameter(const EvolvedState& state, std::size_t k);

// N_k(theta, t) = sinh^2(gamma_k t - theta_k); equal for mirror modes.
double occupation(const EvolvedState& state, std::size_t k);
std::vector<double> occupations(const EvolvedState& state);

// log |<a|b>| = -sum_k ln cosh(r_k^a - r_k^b). Kept in log space so that large
// mode counts underflow in the final exp only.
double log_abs_overlap(const EvolvedState& a, const EvolvedState& b);

// <a|b> = prod_k 1/cosh(r_k^a - r_k^b); equals 1 iff all arguments vanish.
double overlap(const EvolvedState& a, const EvolvedState& b);

// exp(-t sum_k gamma_k); the asymptotic envelope of the self-overlap decay.
double decay_envelope(const MemoryCode& code, double t);

struct SchmidtWeights {
    Mode mode;
    int n_max = 0;
    std::vector<double> weights;  // W_n = tanh^{2n}(r) / cosh^2(r)
    double tail = 0.0;            // tanh^{2(n_max+1)}(r), so sum + tail == 1
};

SchmidtWeights schmidt_weights(const EvolvedState& state, std::size_t k, int n_max);

// Per-mode entanglement entropy, cosh^2 r ln cosh^2 r - sinh^2 r ln sinh^2 r.
double mode_entropy(double r);

// Sum of mode_entropy over the grid; equals -sum_n W_n ln W_n mode by mode.
double entanglement_entropy(const EvolvedState& state);

struct ThermalDiagnostics {
    Mode mode;
    double r = 0.0;
    double beta = 0.0;             // from tanh^2 r = exp(-beta E)
    double bose_occupation = 0.0;  // 1/(e^{beta E} - 1) = sinh^2 r
    // Boltzmann-weighted pair expectation, reported without asserting equality:
    double pair_lhs = 0.0;  // sinh^2 r
    double pair_rhs = 0.0;  // e^{-beta E} * <A+ Atilde+> = tanh^2 r * sinh r cosh r
};

// Quasi-equilibrium diagnostics; undefined at r = 0 (ZeroSqueeze).
ThermalDiagnostics thermal_diagnostics(const EvolvedState& state, std::size_t k);

}  // namespace dqm
