#include "ploop/error.hpp"

namespace ploop {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedSerial: return "MalformedSerial";
        case ErrorCode::MalformedURI: return "MalformedURI";
        case ErrorCode::Malformed: return "Malformed";
        case ErrorCode::MissingUniqueId: return "MissingUniqueId";
        case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
        case ErrorCode::NegativeTime: return "NegativeTime";
        case ErrorCode::IllegalTransition: return "IllegalTransition";
        case ErrorCode::EmptyConditions: return "EmptyConditions";
        case ErrorCode::InvalidCondition: return "InvalidCondition";
        case ErrorCode::InvalidPolicy: return "InvalidPolicy";
        case ErrorCode::InvalidModeForActivity: return "InvalidModeForActivity";
        case ErrorCode::EmptyFeedback: return "EmptyFeedback";
        case ErrorCode::InvalidThreshold: return "InvalidThreshold";
        case ErrorCode::UnhandledMessage: return "UnhandledMessage";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::UnknownAgent: return "UnknownAgent";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::Partitioned: return "Partitioned";
        case ErrorCode::MissingCatchAll: return "MissingCatchAll";
        case ErrorCode::InvalidLatency: return "InvalidLatency";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IncomparableRuns: return "IncomparableRuns";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::AgentInFlight: return "AgentInFlight";
    }
    return "Unknown";
}

}  // namespace ploop
