#include "dqm/mode_space.hpp"

#include <cmath>
#include <utility>

namespace dqm {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::NonPositiveGamma: return "NonPositiveGamma";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NegativeOccupation: return "NegativeOccupation";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::ZeroSqueeze: return "ZeroSqueeze";
        case ErrorCode::UnorderedTimes: return "UnorderedTimes";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::WindowContainsZeroCrossing: return "WindowContainsZeroCrossing";
        case ErrorCode::BadThreshold: return "BadThreshold";
        case ErrorCode::NegativeTruncation: return "NegativeTruncation";
        case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorCode::NonFiniteAmplitude: return "NonFiniteAmplitude";
        case ErrorCode::UnknownObservable: return "UnknownObservable";
        case ErrorCode::UnknownCode: return "UnknownCode";
        case ErrorCode::NeedTwoCodes: return "NeedTwoCodes";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::Overdamped: return "Overdamped";
    }
    return "UnknownError";
}

ErrorKind default_kind(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroSqueeze:
        case ErrorCode::WindowContainsZeroCrossing:
        case ErrorCode::TruncationTooSmall:
        case ErrorCode::NonFiniteAmplitude:
        case ErrorCode::Overdamped:
            return ErrorKind::Computation;
        default:
            return ErrorKind::Validation;
    }
}

ModeGrid::ModeGrid(std::vector<Mode> modes) : modes_(std::move(modes)) {
    for (const Mode& m : modes_) gamma_sum_ += m.gamma;
}

const Mode& ModeGrid::mode(std::size_t k) const {
    if (k >= modes_.size())
        throw Error(ErrorCode::IndexOutOfRange,
                    "mode index " + std::to_string(k) + " on a grid of size " +
                        std::to_string(modes_.size()),
                    static_cast<long>(k));
    return modes_[k];
}

bool ModeGrid::operator==(const ModeGrid& other) const noexcept {
    if (modes_.size() != other.modes_.size()) return false;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        const Mode& a = modes_[k];
        const Mode& b = other.modes_[k];
        if (a.omega != b.omega || a.gamma != b.gamma || a.energy != b.energy)
            return false;
    }
    return true;
}

GridPtr build_grid(std::span<const ModeSpec> specs) {
    if (specs.empty()) throw Error(ErrorCode::EmptyGrid, "a grid needs at least one mode");
    std::vector<Mode> modes;
    modes.reserve(specs.size());
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const ModeSpec& s = specs[k];
        const double energy = s.energy.value_or(s.omega);
        if (!std::isfinite(s.omega) || !std::isfinite(s.gamma) || !std::isfinite(energy))
            throw Error(ErrorCode::NonFinite, "mode " + std::to_string(k),
                        static_cast<long>(k));
        if (s.gamma <= 0.0)
            throw Error(ErrorCode::NonPositiveGamma,
                        "gamma must be > 0 at mode " + std::to_string(k),
                        static_cast<long>(k));
        if (s.omega < 0.0)
            throw Error(ErrorCode::NonFinite,
                        "omega must be >= 0 at mode " + std::to_string(k),
                        static_cast<long>(k));
        if (energy <= 0.0)
            throw Error(ErrorCode::NonFinite,
                        "energy must be > 0 at mode " + std::to_string(k),
                        static_cast<long>(k));
        modes.push_back(Mode{static_cast<int>(k), s.omega, s.gamma, energy});
    }
    return GridPtr(new ModeGrid(std::move(modes)));
}

GridPtr build_grid(std::initializer_list<ModeSpec> specs) {
    return build_grid(std::span<const ModeSpec>(specs.begin(), specs.size()));
}

MemoryCode::MemoryCode(GridPtr grid, std::vector<double> thetas)
    : grid_(std::move(grid)), thetas_(std::move(thetas)) {
    if (!grid_) throw Error(ErrorCode::EmptyGrid, "code without a grid");
    if (thetas_.size() != grid_->size())
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(thetas_.size()) + " thetas for " +
                        std::to_string(grid_->size()) + " modes");
    for (std::size_t k = 0; k < thetas_.size(); ++k)
        if (!std::isfinite(thetas_[k]))
            throw Error(ErrorCode::NonFinite, "theta at mode " + std::to_string(k),
                        static_cast<long>(k));
}

double MemoryCode::theta(std::size_t k) const {
    grid_->mode(k);  // bounds check with the shared error
    return thetas_[k];
}

std::vector<double> MemoryCode::occupations() const {
    std::vector<double> ns(thetas_.size());
    for (std::size_t k = 0; k < thetas_.size(); ++k) {
        const double s = std::sinh(thetas_[k]);
        ns[k] = s * s;
    }
    return ns;
}

MemoryCode code_from_occupations(GridPtr grid, std::span<const double> occupations) {
    if (!grid) throw Error(ErrorCode::EmptyGrid, "code without a grid");
    if (occupations.size() != grid->size())
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(occupations.size()) + " occupations for " +
                        std::to_string(grid->size()) + " modes");
    std::vector<double> thetas(occupations.size());
    for (std::size_t k = 0; k < occupations.size(); ++k) {
        const double n = occupations[k];
        if (!std::isfinite(n))
            throw Error(ErrorCode::NonFinite, "occupation at mode " + std::to_string(k),
                        static_cast<long>(k));
        if (n < 0.0)
            throw Error(ErrorCode::NegativeOccupation,
                        "occupation at mode " + std::to_string(k),
                        static_cast<long>(k));
        thetas[k] = std::asinh(std::sqrt(n));
    }
    return MemoryCode(std::move(grid), std::move(thetas));
}

namespace detail {
void require_same_grid(const MemoryCode& a, const MemoryCode& b) {
    if (a.grid_ptr() == b.grid_ptr()) return;
    if (!(a.grid() == b.grid()))
        throw Error(ErrorCode::GridMismatch, "codes live on different grids");
}
}  // namespace detail

CodeDistance code_distance_at_zero(const MemoryCode& a, const MemoryCode& b) {
    detail::require_same_grid(a, b);
    CodeDistance d;
    d.delta_n.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double sa = std::sinh(a.thetas()[k]);
        const double sb = std::sinh(b.thetas()[k]);
        d.delta_n[k] = sb * sb - sa * sa;
        d.max_abs = std::max(d.max_abs, std::abs(d.delta_n[k]));
    }
    return d;
}

EvolvedState::EvolvedState(MemoryCode code, double time)
    : code_(std::move(code)), time_(time) {
    if (!std::isfinite(time_) || time_ < 0.0)
        throw Error(ErrorCode::ConfigInvalid, "time: must be finite and >= 0");
}

}  // namespace dqm
