#include "ploop/event_log.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"
#include "ploop/error.hpp"

namespace ploop {

std::string to_json_line(const LoggedEvent& event) {
    nlohmann::ordered_json j;
    j["tick"] = event.tick;
    j["event_kind"] = event.kind;
    j["node"] = event.node;
    j["agent"] = event.agent;
    j["msg_id"] = event.msg_id ? nlohmann::ordered_json(*event.msg_id) : nlohmann::ordered_json(nullptr);
    j["detail"] = event.detail;
    return j.dump();
}

LoggedEvent parse_json_line(std::string_view line) {
    try {
        const auto j = nlohmann::json::parse(line);
        LoggedEvent e;
        e.tick = j.at("tick").get<Tick>();
        e.kind = j.at("event_kind").get<std::string>();
        e.node = j.at("node").get<std::string>();
        e.agent = j.at("agent").get<std::string>();
        if (!j.at("msg_id").is_null()) e.msg_id = j.at("msg_id").get<MessageId>();
        e.detail = j.at("detail").get<std::string>();
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

void write_log(std::ostream& out, const std::vector<LoggedEvent>& events) {
    for (const auto& e : events) out << to_json_line(e) << '\n';
}

std::vector<LoggedEvent> read_log(std::istream& in) {
    std::vector<LoggedEvent> events;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            events.push_back(parse_json_line(line));
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, "log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return events;
}

namespace {

std::string escape(std::string_view value) {
    std::string out;
    for (char c : value) {
        if (c == '%')
            out += "%25";
        else if (c == ' ')
            out += "%20";
        else if (c == '\n')
            out += "%0A";
        else
            out += c;
    }
    return out;
}

std::string unescape(std::string_view value) {
    std::string out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i] == '%' && i + 2 < value.size()) {
            const auto code = value.substr(i + 1, 2);
            if (code == "25") { out += '%'; i += 2; continue; }
            if (code == "20") { out += ' '; i += 2; continue; }
            if (code == "0A") { out += '\n'; i += 2; continue; }
        }
        out += value[i];
    }
    return out;
}

}  // namespace

Detail& Detail::add(std::string_view key, std::string_view value) {
    if (!text_.empty()) text_ += ' ';
    text_ += key;
    text_ += '=';
    text_ += escape(value);
    return *this;
}

Detail& Detail::add(std::string_view key, long long value) { return add(key, std::to_string(value)); }

std::map<std::string, std::string> parse_detail(std::string_view detail) {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos < detail.size()) {
        auto end = detail.find(' ', pos);
        if (end == std::string_view::npos) end = detail.size();
        const auto token = detail.substr(pos, end - pos);
        if (const auto eq = token.find('='); eq != std::string_view::npos)
            out[std::string(token.substr(0, eq))] = unescape(token.substr(eq + 1));
        pos = end + 1;
    }
    return out;
}

}  // namespace ploop
