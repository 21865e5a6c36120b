#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rgss {

/// Stable, machine-readable error categories. The string form returned by
/// `to_string` is part of the wire contract and must not change.
enum class ErrorCode {
    InvalidArgument,
    TleChecksum,
    TleLength,
    TleFormat,
    TleCatalogMismatch,
    StaleElements,
    DecayedOrbit,
    BeyondHorizon,
    UnknownBand,
    EmptyRange,
    EmptyPeriod,
    InvalidGeometry,
    SchemaViolation,
    DuplicateSatellite,
    NotFound,
    SourceUnavailable,
    Busy,
    Io,
    Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace rgss
