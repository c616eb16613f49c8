#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace dqm {

enum class ErrorCode {
    EmptyGrid,
    NonPositiveGamma,
    NonFinite,
    LengthMismatch,
    NegativeOccupation,
    GridMismatch,
    IndexOutOfRange,
    ZeroSqueeze,
    UnorderedTimes,
    InsufficientSamples,
    WindowContainsZeroCrossing,
    BadThreshold,
    NegativeTruncation,
    TruncationTooSmall,
    NonFiniteAmplitude,
    UnknownObservable,
    UnknownCode,
    NeedTwoCodes,
    ConfigInvalid,   // also used for generic precondition violations (carries a field path)
    Overdamped,
};

// Validation errors are bad inputs (CLI exit 2); computation errors arise
// mid-run from otherwise valid inputs (CLI exit 1).
enum class ErrorKind { Validation, Computation };

const char* error_name(ErrorCode code);
ErrorKind default_kind(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<long> index = std::nullopt)
        : std::runtime_error(std::string(error_name(code)) + ": " + message),
          code_(code), index_(index), kind_(default_kind(code)) {}

    Error(ErrorCode code, const std::string& message, std::optional<long> index,
          ErrorKind kind)
        : std::runtime_error(std::string(error_name(code)) + ": " + message),
          code_(code), index_(index), kind_(kind) {}

    ErrorCode code() const noexcept { return code_; }
    std::optional<long> index() const noexcept { return index_; }
    ErrorKind kind() const noexcept { return kind_; }
    const char* name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
    std::optional<long> index_;
    ErrorKind kind_;
};

}  // namespace dqm
