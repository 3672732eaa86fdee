#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geonet {

enum class ErrorCode {
    DegenerateSegment,
    DegenerateTriangle,
    WideAngleTriangle,
    DegenerateTerminals,
    UnknownVertex,
    IsolatedVertex,
    OverlayEdges,
    VertexCollision,
    DegreeTooLarge,
    SearchBudgetExceeded,
    NotAGeodesicNet,
    InvariantViolation,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateSegment: return "DegenerateSegment";
        case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
        case ErrorCode::WideAngleTriangle: return "WideAngleTriangle";
        case ErrorCode::DegenerateTerminals: return "DegenerateTerminals";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::IsolatedVertex: return "IsolatedVertex";
        case ErrorCode::OverlayEdges: return "OverlayEdges";
        case ErrorCode::VertexCollision: return "VertexCollision";
        case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
        case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorCode::NotAGeodesicNet: return "NotAGeodesicNet";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace geonet
