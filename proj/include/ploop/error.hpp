#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ploop {

enum class ErrorCode {
    MalformedSerial,
    MalformedURI,
    Malformed,
    MissingUniqueId,
    NonMonotonicTime,
    NegativeTime,
    IllegalTransition,
    EmptyConditions,
    InvalidCondition,
    InvalidPolicy,
    InvalidModeForActivity,
    EmptyFeedback,
    InvalidThreshold,
    UnhandledMessage,
    UnknownNode,
    UnknownAgent,
    DuplicateId,
    Partitioned,
    MissingCatchAll,
    InvalidLatency,
    ParseError,
    ValidationError,
    IncomparableRuns,
    InvariantViolation,
    AgentInFlight,
};

std::string_view to_string(ErrorCode code);

/// Every fallible operation in the library throws this, tagged with the
/// contract error it represents.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ploop
