#include "dqm/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace dqm::fock {

namespace {

void check_finite(std::span<const double> amps) {
    for (std::size_t n = 0; n < amps.size(); ++n)
        if (!std::isfinite(amps[n]))
            throw Error(ErrorCode::NonFiniteAmplitude,
                        "amplitude at n = " + std::to_string(n), static_cast<long>(n));
}

// y = K x on the pair sector: K|n> = (n+1)|n+1> - n|n-1>, antisymmetric, so
// exp(s K) is orthogonal for any real s.
void pair_apply(std::span<const double> x, std::span<double> y) {
    const std::size_t dim = x.size();
    for (std::size_t n = 0; n < dim; ++n) {
        double v = 0.0;
        if (n > 0) v += static_cast<double>(n) * x[n - 1];
        if (n + 1 < dim) v -= static_cast<double>(n + 1) * x[n + 1];
        y[n] = v;
    }
}

// Applies exp(s K) to v by scaling and squaring in vector form: s is split
// into 2^m substeps with |s_sub| * norm_bound <= 0.5, each substep applied as
// a Taylor sum to 18 terms (remainder < 0.5^19/19! ~ 1e-23). Works for any
// nested-apply operator, so the full-grid probe reuses it.
template <typename Apply>
void exp_apply(const Apply& apply, double s, double norm_bound, std::vector<double>& v) {
    if (s == 0.0) return;
    const double scale = std::abs(s) * norm_bound;
    int m = 0;
    while (scale / std::pow(2.0, m) > 0.5 && m < 62) ++m;
    const long substeps = 1L << m;
    const double s_sub = s / static_cast<double>(substeps);
    constexpr int kTerms = 18;

    std::vector<double> term(v.size()), scratch(v.size());
    for (long step = 0; step < substeps; ++step) {
        term = v;
        for (int j = 1; j <= kTerms; ++j) {
            apply(term, scratch);
            const double f = s_sub / static_cast<double>(j);
            for (std::size_t i = 0; i < v.size(); ++i) {
                term[i] = scratch[i] * f;
                v[i] += term[i];
            }
        }
    }
}

// Column-sum bound for the pair-sector map: |K|_1 <= 2*dim - 1.
double pair_norm_bound(std::size_t dim) { return 2.0 * static_cast<double>(dim); }

}  // namespace

PairSectorState::PairSectorState(std::vector<double> amps) : amps_(std::move(amps)) {
    if (amps_.empty())
        throw Error(ErrorCode::NegativeTruncation, "state needs n_max >= 0");
    check_finite(amps_);
}

double PairSectorState::amp(int n) const {
    if (n < 0 || n >= static_cast<int>(amps_.size()))
        throw Error(ErrorCode::IndexOutOfRange, "n = " + std::to_string(n),
                    static_cast<long>(n));
    return amps_[static_cast<std::size_t>(n)];
}

double PairSectorState::norm_sq() const noexcept {
    double s = 0.0;
    for (double a : amps_) s += a * a;
    return s;
}

PairSectorState vacuum_pair(int n_max) {
    if (n_max < 0)
        throw Error(ErrorCode::NegativeTruncation, "n_max = " + std::to_string(n_max));
    std::vector<double> amps(static_cast<std::size_t>(n_max) + 1, 0.0);
    amps[0] = 1.0;
    return PairSectorState(std::move(amps));
}

PairSectorState build_squeezed(double r, int n_max) {
    if (n_max < 0)
        throw Error(ErrorCode::NegativeTruncation, "n_max = " + std::to_string(n_max));
    std::vector<double> amps(static_cast<std::size_t>(n_max) + 1);
    const double t = std::tanh(r);
    const double c0 = 1.0 / std::cosh(r);
    double a = c0;
    for (int n = 0; n <= n_max; ++n) {
        amps[static_cast<std::size_t>(n)] = a;
        a *= t;
    }
    return PairSectorState(std::move(amps));
}

double tail_bound(double r, int n_max) {
    const double t = std::abs(std::tanh(r));
    if (t == 0.0) return 0.0;
    return std::exp(2.0 * (n_max + 1) * std::log(t));
}

int required_n_max(double r, double tolerance) {
    if (!(tolerance > 0.0))
        throw Error(ErrorCode::ConfigInvalid, "tolerance: must be > 0");
    const double t = std::abs(std::tanh(r));
    if (t == 0.0) return 0;
    const double n = std::log(tolerance) / (2.0 * std::log(t));
    return std::max(0, static_cast<int>(std::ceil(n)));
}

PairSectorState apply_generator(double theta, int n_max, double tolerance) {
    if (n_max < 0)
        throw Error(ErrorCode::NegativeTruncation, "n_max = " + std::to_string(n_max));
    const double tail = tail_bound(theta, n_max);
    if (tail > tolerance)
        throw Error(ErrorCode::TruncationTooSmall,
                    "predicted leakage " + std::to_string(tail) + " exceeds tolerance at n_max = " +
                        std::to_string(n_max));
    std::vector<double> v(static_cast<std::size_t>(n_max) + 1, 0.0);
    v[0] = 1.0;
    // -iG(theta) = -theta K, so the result is build_squeezed(-theta).
    exp_apply(pair_apply, -theta, pair_norm_bound(v.size()), v);
    check_finite(v);
    return PairSectorState(std::move(v));
}

PairSectorState evolve(const PairSectorState& state, double /*omega*/, double gamma,
                       double dt, int steps, double tolerance) {
    // The free part is proportional to n - ntilde and annihilates the pair
    // sector, so omega does not enter; d/dt c = gamma K c.
    if (!(dt > 0.0) && steps > 0) throw Error(ErrorCode::ConfigInvalid, "dt: must be > 0");
    if (steps < 0) throw Error(ErrorCode::ConfigInvalid, "steps: must be >= 0");
    std::vector<double> v(state.amps().begin(), state.amps().end());
    const double bound = pair_norm_bound(v.size());
    for (int step = 0; step < steps; ++step) {
        exp_apply(pair_apply, gamma * dt, bound, v);
        check_finite(v);
    }
    PairSectorState out{std::move(v)};
    // The truncated flow is orthogonal, so lost mass shows up as amplitude
    // piled against the boundary rather than as norm loss; check both.
    const int top = std::max(0, out.n_max() - std::max(1, out.n_max() / 10));
    double boundary = 0.0;
    for (int n = top; n <= out.n_max(); ++n) boundary += out.amp(n) * out.amp(n);
    if (out.leakage() > tolerance || boundary > tolerance)
        throw Error(ErrorCode::TruncationTooSmall,
                    "boundary mass " + std::to_string(boundary) + " exceeds tolerance");
    return out;
}

Observable observable_from_name(std::string_view name) {
    if (name == "N_A") return Observable::NumberA;
    if (name == "N_Atilde") return Observable::NumberATilde;
    if (name == "pair_creation" || name == "AdagAtildedag") return Observable::PairCreation;
    if (name == "pair_annihilation" || name == "AAtilde") return Observable::PairAnnihilation;
    throw Error(ErrorCode::UnknownObservable, std::string(name));
}

double expectation(const PairSectorState& state, Observable observable) {
    const auto amps = state.amps();
    const std::size_t dim = amps.size();
    double sum = 0.0;
    switch (observable) {
        case Observable::NumberA:
        case Observable::NumberATilde:
            // equal numbers in the pair sector
            for (std::size_t n = 1; n < dim; ++n)
                sum += static_cast<double>(n) * amps[n] * amps[n];
            return sum;
        case Observable::PairCreation:
            for (std::size_t n = 0; n + 1 < dim; ++n)
                sum += static_cast<double>(n + 1) * amps[n] * amps[n + 1];
            return sum;
        case Observable::PairAnnihilation:
            for (std::size_t n = 1; n < dim; ++n)
                sum += static_cast<double>(n) * amps[n] * amps[n - 1];
            return sum;
    }
    throw Error(ErrorCode::UnknownObservable, "unhandled observable tag");
}

double inner_product(const PairSectorState& a, const PairSectorState& b) {
    const std::size_t dim = std::min(a.amps().size(), b.amps().size());
    double s = 0.0;
    for (std::size_t n = 0; n < dim; ++n) s += a.amps()[n] * b.amps()[n];
    return s;
}

double fidelity(const PairSectorState& a, const PairSectorState& b) {
    return std::abs(inner_product(a, b)) / std::sqrt(a.norm_sq() * b.norm_sq());
}

double oracle_entropy(const PairSectorState& state, double tolerance) {
    if (state.leakage() > tolerance)
        throw Error(ErrorCode::TruncationTooSmall,
                    "leakage " + std::to_string(state.leakage()) + " exceeds tolerance");
    const double norm = state.norm_sq();
    double s = 0.0;
    for (double a : state.amps()) {
        const double p = a * a / norm;
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

FullGridState::FullGridState(int n_max, std::vector<double> amps)
    : n_max_(n_max), amps_(std::move(amps)) {}

FullGridState FullGridState::basis(int n, int m, int n_max) {
    if (n_max < 0)
        throw Error(ErrorCode::NegativeTruncation, "n_max = " + std::to_string(n_max));
    if (n < 0 || m < 0 || n > n_max || m > n_max)
        throw Error(ErrorCode::IndexOutOfRange,
                    "basis (" + std::to_string(n) + ", " + std::to_string(m) + ")");
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
    std::vector<double> amps(dim * dim, 0.0);
    amps[static_cast<std::size_t>(n) * dim + static_cast<std::size_t>(m)] = 1.0;
    return FullGridState(n_max, std::move(amps));
}

double FullGridState::amp(int n, int m) const {
    if (n < 0 || m < 0 || n > n_max_ || m > n_max_)
        throw Error(ErrorCode::IndexOutOfRange,
                    "(" + std::to_string(n) + ", " + std::to_string(m) + ")");
    const std::size_t dim = static_cast<std::size_t>(n_max_) + 1;
    return amps_[static_cast<std::size_t>(n) * dim + static_cast<std::size_t>(m)];
}

double FullGridState::norm_sq() const noexcept {
    double s = 0.0;
    for (double a : amps_) s += a * a;
    return s;
}

double FullGridState::charge() const {
    const std::size_t dim = static_cast<std::size_t>(n_max_) + 1;
    double q = 0.0;
    for (std::size_t n = 0; n < dim; ++n)
        for (std::size_t m = 0; m < dim; ++m) {
            const double a = amps_[n * dim + m];
            q += (static_cast<double>(n) - static_cast<double>(m)) * a * a;
        }
    return q / norm_sq();
}

namespace {

// Full-grid pair map: (n, m) -> sqrt((n+1)(m+1)) (n+1, m+1) - sqrt(n m) (n-1, m-1).
// Preserves the stripe n - m, hence the conserved charge.
struct FullApply {
    std::size_t dim;
    void operator()(std::span<const double> x, std::span<double> y) const {
        for (std::size_t n = 0; n < dim; ++n) {
            for (std::size_t m = 0; m < dim; ++m) {
                double v = 0.0;
                if (n > 0 && m > 0)
                    v += std::sqrt(static_cast<double>(n) * static_cast<double>(m)) *
                         x[(n - 1) * dim + (m - 1)];
                if (n + 1 < dim && m + 1 < dim)
                    v -= std::sqrt(static_cast<double>(n + 1) * static_cast<double>(m + 1)) *
                         x[(n + 1) * dim + (m + 1)];
                y[n * dim + m] = v;
            }
        }
    }
};

}  // namespace

FullGridState evolve_full(const FullGridState& state, double /*omega*/, double gamma,
                          double dt, int steps) {
    const std::size_t dim = static_cast<std::size_t>(state.n_max_) + 1;
    std::vector<double> v = state.amps_;
    const FullApply apply{dim};
    // sqrt((n+1)(m+1)) <= dim, two terms per column
    const double bound = 2.0 * static_cast<double>(dim);
    for (int step = 0; step < steps; ++step) {
        exp_apply(apply, gamma * dt, bound, v);
        check_finite(v);
    }
    return FullGridState(state.n_max_, std::move(v));
}

double charge_conservation_probe(const FullGridState& initial, double omega,
                                 double gamma, double t_final, int samples,
                                 double tolerance) {
    if (samples < 2) throw Error(ErrorCode::ConfigInvalid, "samples: must be >= 2");
    if (!(t_final > 0.0)) throw Error(ErrorCode::ConfigInvalid, "t_final: must be > 0");
    if (std::abs(initial.norm_sq() - 1.0) > 1e-9)
        throw Error(ErrorCode::ConfigInvalid, "initial state must be normalized");
    const double q0 = initial.charge();
    const double dt = t_final / static_cast<double>(samples - 1);
    FullGridState current = initial;
    double drift = 0.0;
    for (int i = 1; i < samples; ++i) {
        current = evolve_full(current, omega, gamma, dt, 1);
        drift = std::max(drift, std::abs(current.charge() - q0));
    }
    // boundary mass along the top row and column signals truncation reflection
    const std::size_t dim = static_cast<std::size_t>(current.n_max()) + 1;
    double boundary = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double a = current.amp(static_cast<int>(dim) - 1, static_cast<int>(i));
        const double b = current.amp(static_cast<int>(i), static_cast<int>(dim) - 1);
        boundary += a * a + b * b;
    }
    if (boundary > tolerance)
        throw Error(ErrorCode::TruncationTooSmall,
                    "boundary mass " + std::to_string(boundary) + " exceeds tolerance");
    return drift;
}

}  // namespace dqm::fock
