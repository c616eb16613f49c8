#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dqm/errors.hpp"

namespace dqm {

// One field degree of freedom. Units: hbar = k_B = 1, energy defaults to omega.
struct Mode {
    int index = 0;
    double omega = 0.0;   // angular frequency
    double gamma = 0.0;   // damping constant, > 0
    double energy = 0.0;  // mode energy, > 0
};

struct ModeSpec {
    double omega;
    double gamma;
    std::optional<double> energy;  // defaults to omega
};

// Finite ordered stand-in for the continuous mode label. Immutable once built.
class ModeGrid {
public:
    const std::vector<Mode>& modes() const noexcept { return modes_; }
    const Mode& mode(std::size_t k) const;
    std::size_t size() const noexcept { return modes_.size(); }
    double gamma_sum() const noexcept { return gamma_sum_; }

    bool operator==(const ModeGrid& other) const noexcept;

    friend std::shared_ptr<const ModeGrid> build_grid(std::span<const ModeSpec> specs);

private:
    explicit ModeGrid(std::vector<Mode> modes);

    std::vector<Mode> modes_;
    double gamma_sum_ = 0.0;
};

using GridPtr = std::shared_ptr<const ModeGrid>;

// Validates specs (finite, gamma > 0, default energy rule) and freezes the grid.
GridPtr build_grid(std::span<const ModeSpec> specs);
GridPtr build_grid(std::initializer_list<ModeSpec> specs);

// A theta-set labelling one vacuum; occupations are N_k = sinh^2(theta_k).
class MemoryCode {
public:
    MemoryCode(GridPtr grid, std::vector<double> thetas);

    const ModeGrid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::span<const double> thetas() const noexcept { return thetas_; }
    double theta(std::size_t k) const;
    std::size_t size() const noexcept { return thetas_.size(); }

    std::vector<double> occupations() const;

private:
    GridPtr grid_;
    std::vector<double> thetas_;
};

// Inverse of the occupation map: theta_k = asinh(sqrt(N_k)).
MemoryCode code_from_occupations(GridPtr grid, std::span<const double> occupations);

struct CodeDistance {
    std::vector<double> delta_n;  // per mode, N_b - N_a
    double max_abs = 0.0;
};

// Occupation-space separation of two codes at t = 0.
CodeDistance code_distance_at_zero(const MemoryCode& a, const MemoryCode& b);

// A code evolved to time t; per-mode squeeze parameter is r_k(t) = gamma_k t - theta_k.
class EvolvedState {
public:
    EvolvedState(MemoryCode code, double time);

    const MemoryCode& code() const noexcept { return code_; }
    double time() const noexcept { return time_; }
    const ModeGrid& grid() const noexcept { return code_.grid(); }

private:
    MemoryCode code_;
    double time_;
};

namespace detail {
void require_same_grid(const MemoryCode& a, const MemoryCode& b);
}

}  // namespace dqm
