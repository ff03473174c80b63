#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ploop/types.hpp"

namespace ploop {

/// One line of the simulation log. Serialised as a JSON object with the
/// fixed field order tick, event_kind, node, agent, msg_id, detail.
struct LoggedEvent {
    Tick tick = 0;
    std::string kind;
    std::string node;
    std::string agent;
    std::optional<MessageId> msg_id;
    std::string detail;  // space separated key=value pairs

    friend bool operator==(const LoggedEvent&, const LoggedEvent&) = default;
};

std::string to_json_line(const LoggedEvent& event);

/// Throws Error{ParseError}.
LoggedEvent parse_json_line(std::string_view line);

void write_log(std::ostream& out, const std::vector<LoggedEvent>& events);

/// Throws Error{ParseError} with the offending line number.
std::vector<LoggedEvent> read_log(std::istream& in);

/// Builds a `key=value key=value` detail string. Values are
/// percent-escaped so they never contain spaces.
class Detail {
public:
    Detail& add(std::string_view key, std::string_view value);
    Detail& add(std::string_view key, long long value);
    std::string str() const { return text_; }
    operator std::string() const { return text_; }

private:
    std::string text_;
};

std::map<std::string, std::string> parse_detail(std::string_view detail);

}  // namespace ploop
