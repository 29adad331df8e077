#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fairedge {

enum class ErrorCode {
    // graph
    DuplicateEdge,
    SelfLoop,
    VertexOutOfRange,
    IsolatedVertex,
    SelfLoopQuery,
    MissingEdge,
    ParseError,
    // treap
    PositionOutOfRange,
    DuplicatePayload,
    RangeInvalid,
    PayloadAbsent,
    // walk / digraph
    NoUnmatchedStart,
    NotCovered,
    NotConverged,
    NotStronglyConnected,
    // altpath
    WalkInconsistent,
    WrongParity,
    NotAlternating,
    InvariantViolation,
    // fairmatch
    DegreeMismatch,
    InvalidConfig,
    // coloring
    PaletteTooSmall,
    EpsilonOutOfRange,
    UncoloredEdge,
    // harness
    InfeasibleParameters,
    TooManyEdges,
};

inline std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code so
/// callers (tests, the CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::SelfLoopQuery: return "SelfLoopQuery";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::DuplicatePayload: return "DuplicatePayload";
    case ErrorCode::RangeInvalid: return "RangeInvalid";
    case ErrorCode::PayloadAbsent: return "PayloadAbsent";
    case ErrorCode::NoUnmatchedStart: return "NoUnmatchedStart";
    case ErrorCode::NotCovered: return "NotCovered";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::WalkInconsistent: return "WalkInconsistent";
    case ErrorCode::WrongParity: return "WrongParity";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::PaletteTooSmall: return "PaletteTooSmall";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::UncoloredEdge: return "UncoloredEdge";
    case ErrorCode::InfeasibleParameters: return "InfeasibleParameters";
    case ErrorCode::TooManyEdges: return "TooManyEdges";
    }
    return "Unknown";
}

} // namespace fairedge
