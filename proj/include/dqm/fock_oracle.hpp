#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dqm/errors.hpp"

namespace dqm::fock {

// Brute-force verification engine on a truncated Fock space. The Hamiltonian
// and the generator are sums of commuting per-mode terms, so everything here
// works one mode at a time; multimode quantities are products or sums of
// per-mode results.
//
// All amplitudes are real. Pair creation/annihilation preserves n - ntilde,
// so states reachable from the doubled vacuum live in the pair sector
// |n, ntilde = n> and a vector of length n_max + 1 suffices.

class PairSectorState {
public:
    explicit PairSectorState(std::vector<double> amps);

    int n_max() const noexcept { return static_cast<int>(amps_.size()) - 1; }
    std::span<const double> amps() const noexcept { return amps_; }
    double amp(int n) const;

    double norm_sq() const noexcept;
    double leakage() const noexcept { return 1.0 - norm_sq(); }

private:
    std::vector<double> amps_;
};

PairSectorState vacuum_pair(int n_max);

// Closed-form two-mode squeezed vacuum: c_n = tanh(r)^n / cosh(r).
PairSectorState build_squeezed(double r, int n_max);

// Smallest n_max whose geometric tail tanh^{2(n_max+1)}|r| is below tolerance.
int required_n_max(double r, double tolerance);
double tail_bound(double r, int n_max);

// Numerically exponentiates -iG(theta) on the doubled vacuum. -iG restricted
// to the pair sector is the real tridiagonal map n -> n±1 with coefficients
// -theta(n+1) and +theta n; the result equals build_squeezed(-theta).
PairSectorState apply_generator(double theta, int n_max, double tolerance = 1e-6);

// Propagates exp(-iHt) for one mode, dt at a time. The free part annihilates
// the pair sector, leaving the real antisymmetric pair map scaled by gamma;
// each step is applied as a scaled Taylor expansion of the exponential with
// truncation below 1e-12 per step (the flow is orthogonal, so norms hold).
PairSectorState evolve(const PairSectorState& state, double omega, double gamma,
                       double dt, int steps, double tolerance = 1e-6);

enum class Observable { NumberA, NumberATilde, PairCreation, PairAnnihilation };

// Accepts "N_A", "N_Atilde", "pair_creation"/"AdagAtildedag", "pair_annihilation"/"AAtilde".
Observable observable_from_name(std::string_view name);

double expectation(const PairSectorState& state, Observable observable);

double inner_product(const PairSectorState& a, const PairSectorState& b);
double fidelity(const PairSectorState& a, const PairSectorState& b);

// Entropy of the reduced non-tilde sector: p_n = c_n^2 / sum c^2, -sum p ln p.
double oracle_entropy(const PairSectorState& state, double tolerance = 1e-6);

// Full (n, m) grid, needed only off the pair sector. Amplitudes are real: the
// free-part phases exp(-i omega (n-m) t) are constant along the interaction
// coupling (n, m) -> (n±1, m±1) and drop out of number expectations.
class FullGridState {
public:
    static FullGridState basis(int n, int m, int n_max);

    int n_max() const noexcept { return n_max_; }
    double amp(int n, int m) const;
    double norm_sq() const noexcept;
    double charge() const;  // <N_A - N_Atilde>, normalized

    friend FullGridState evolve_full(const FullGridState& state, double omega,
                                     double gamma, double dt, int steps);

private:
    FullGridState(int n_max, std::vector<double> amps);

    int n_max_;
    std::vector<double> amps_;  // row-major (n_max+1) x (n_max+1)
};

FullGridState evolve_full(const FullGridState& state, double omega, double gamma,
                          double dt, int steps);

// Evolves under the full doubled Hamiltonian and reports the maximum drift of
// <N_A - N_Atilde> over `samples` equally spaced times in [0, t_final].
double charge_conservation_probe(const FullGridState& initial, double omega,
                                 double gamma, double t_final, int samples = 41,
                                 double tolerance = 1e-6);

}  // namespace dqm::fock
