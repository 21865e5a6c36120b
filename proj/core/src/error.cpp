#include "rgss/error.hpp"

namespace rgss {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::TleChecksum: return "tle_checksum";
    case ErrorCode::TleLength: return "tle_length";
    case ErrorCode::TleFormat: return "tle_format";
    case ErrorCode::TleCatalogMismatch: return "tle_catalog_mismatch";
    case ErrorCode::StaleElements: return "stale_elements";
    case ErrorCode::DecayedOrbit: return "decayed_orbit";
    case ErrorCode::BeyondHorizon: return "beyond_horizon";
    case ErrorCode::UnknownBand: return "unknown_band";
    case ErrorCode::EmptyRange: return "empty_range";
    case ErrorCode::EmptyPeriod: return "empty_period";
    case ErrorCode::InvalidGeometry: return "invalid_geometry";
    case ErrorCode::SchemaViolation: return "schema_violation";
    case ErrorCode::DuplicateSatellite: return "duplicate_satellite";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::SourceUnavailable: return "source_unavailable";
    case ErrorCode::Busy: return "busy";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Internal: return "internal";
    }
    return "internal";
}

}  // namespace rgss
