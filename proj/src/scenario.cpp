#include "ploop/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ploop/error.hpp"

namespace ploop {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ValidationError, what); }

bool is_token(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
        const auto c = static_cast<unsigned char>(ch);
        return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == ':';
    });
}

// -- reading -----------------------------------------------------------------

const json& field(const json& obj, std::string_view key, const std::string& where) {
    if (!obj.is_object()) throw Error(ErrorCode::ParseError, where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::ParseError, where + "." + std::string(key) + " is missing");
    return *it;
}

template <class T>
T get(const json& obj, std::string_view key, const std::string& where) {
    const auto& v = field(obj, key, where);
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::ParseError, where + "." + std::string(key) + " has the wrong type");
    }
}

template <class T>
T get_or(const json& obj, std::string_view key, const std::string& where, T fallback) {
    if (!obj.contains(key)) return fallback;
    return get<T>(obj, key, where);
}

const json& array_field(const json& obj, std::string_view key, const std::string& where, bool required = true) {
    static const json empty = json::array();
    if (!required && !obj.contains(key)) return empty;
    const auto& v = field(obj, key, where);
    if (!v.is_array()) throw Error(ErrorCode::ParseError, where + "." + std::string(key) + " must be an array");
    return v;
}

template <class E>
E enum_value(std::optional<E> parsed, std::string_view text, const std::string& where) {
    if (!parsed) invalid(where + ": unknown value '" + std::string(text) + "'");
    return *parsed;
}

ProductId product_value(const std::string& text, const std::string& where) {
    try {
        return parse_product_id(text);
    } catch (const Error& e) {
        invalid(where + ": " + e.what());
    }
}

std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

Payload read_payload(const json& j, const std::string& where) {
    const auto kind = get<std::string>(j, "kind", where);
    const auto product = product_value(get<std::string>(j, "product", where), where + ".product");
    if (kind == "sensor_batch") {
        SensorBatch batch{product, {}, get_or<bool>(j, "environmental", where, false)};
        const auto& events = array_field(j, "events", where);
        for (std::size_t i = 0; i < events.size(); ++i) {
            const auto w = at(where + ".events", i);
            batch.events.push_back(SensorEvent{.sensor = get<std::string>(events[i], "sensor", w),
                                               .value = get<double>(events[i], "value", w),
                                               .unit = get_or<std::string>(events[i], "unit", w, ""),
                                               .sim_time = 0});
        }
        return batch;
    }
    if (kind == "customer_feedback") return CustomerFeedback{product, get<std::string>(j, "text", where)};
    if (kind == "fault") return FaultReport{product, get<std::string>(j, "description", where)};
    if (kind == "retirement") {
        RetirementNotice notice{product, {}};
        const auto& conditions = array_field(j, "conditions", where);
        for (std::size_t i = 0; i < conditions.size(); ++i) {
            const auto w = at(where + ".conditions", i);
            notice.conditions.push_back(ComponentCondition{.component = get<std::string>(conditions[i], "component", w),
                                                           .condition = get<double>(conditions[i], "condition", w),
                                                           .hazardous = get_or<bool>(conditions[i], "hazardous", w, false)});
        }
        return notice;
    }
    invalid(where + ".kind: unknown stimulus kind '" + kind + "'");
}

Stimulus read_stimulus(const json& j, const std::string& where) {
    auto payload = read_payload(j, where);
    auto key = get_or<std::string>(j, "key", where, default_routing_key(payload));
    return Stimulus{.tick = get<Tick>(j, "tick", where),
                    .node = NodeId(get<std::string>(j, "node", where)),
                    .routing_key = std::move(key),
                    .payload = std::move(payload)};
}

Scenario read_scenario(const json& root) {
    const std::string r = "scenario";
    const int format = get<int>(root, "format", r);
    if (format != kScenarioFormat) invalid("unsupported scenario format " + std::to_string(format));

    Scenario sc;
    sc.name = get<std::string>(root, "name", r);
    sc.seed = get_or<std::uint64_t>(root, "seed", r, 0);
    sc.horizon = get<Tick>(root, "horizon", r);

    const auto& nodes = array_field(root, "nodes", r);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto w = at("nodes", i);
        const auto kind = get<std::string>(nodes[i], "kind", w);
        sc.nodes.push_back({NodeId(get<std::string>(nodes[i], "id", w)),
                            enum_value(node_kind_from_string(kind), kind, w + ".kind")});
    }

    const auto& agents = array_field(root, "agents", r);
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto w = at("agents", i);
        const auto& a = agents[i];
        AgentDecl decl;
        decl.id = AgentId(get<std::string>(a, "id", w));
        const auto role = get<std::string>(a, "role", w);
        decl.role = enum_value(agent_role_from_string(role), role, w + ".role");
        decl.home = NodeId(get<std::string>(a, "home", w));
        for (const auto& hop : get_or<std::vector<std::string>>(a, "itinerary", w, {})) decl.itinerary.emplace_back(hop);
        if (a.contains("product") && !a.at("product").is_null())
            decl.product = product_value(get<std::string>(a, "product", w), w + ".product");
        decl.generation = get_or<int>(a, "generation", w, 1);
        if (a.contains("capabilities")) {
            decl.capabilities = {};
            for (const auto& name : get<std::vector<std::string>>(a, "capabilities", w))
                decl.capabilities.insert(enum_value(capability_from_string(name), name, w + ".capabilities"));
        }
        const auto phase = get_or<std::string>(a, "phase", w, "EOL_Use");
        decl.phase = enum_value(phase_from_string(phase), phase, w + ".phase");
        sc.agents.push_back(std::move(decl));
    }

    const auto& routing = array_field(root, "routing", r);
    for (std::size_t i = 0; i < routing.size(); ++i) {
        const auto w = at("routing", i);
        sc.routing.push_back({get<std::string>(routing[i], "pattern", w),
                              get<std::vector<std::string>>(routing[i], "recipients", w)});
    }

    const auto& latencies = array_field(root, "latency", r, false);
    for (std::size_t i = 0; i < latencies.size(); ++i) {
        const auto w = at("latency", i);
        sc.latencies.push_back({NodeId(get<std::string>(latencies[i], "a", w)),
                                NodeId(get<std::string>(latencies[i], "b", w)), get<Tick>(latencies[i], "ticks", w)});
    }

    const auto& partitions = array_field(root, "partitions", r, false);
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        const auto w = at("partitions", i);
        sc.partitions.push_back({NodeId(get<std::string>(partitions[i], "a", w)),
                                 NodeId(get<std::string>(partitions[i], "b", w)), get<Tick>(partitions[i], "from", w),
                                 get<Tick>(partitions[i], "to", w)});
    }

    const auto& stimuli = array_field(root, "stimuli", r, false);
    for (std::size_t i = 0; i < stimuli.size(); ++i) sc.stimuli.push_back(read_stimulus(stimuli[i], at("stimuli", i)));

    if (root.contains("parameters")) {
        const auto& p = root.at("parameters");
        const std::string w = "parameters";
        auto& out = sc.params;
        out.trigger_threshold = get_or<int>(p, "trigger_threshold", w, out.trigger_threshold);
        if (p.contains("eol_policy")) {
            const auto& pol = p.at("eol_policy");
            out.eol_policy.reuse_threshold = get<double>(pol, "reuse", w + ".eol_policy");
            out.eol_policy.component_threshold = get<double>(pol, "component", w + ".eol_policy");
            out.eol_policy.reclaim_threshold = get<double>(pol, "reclaim", w + ".eol_policy");
        }
        out.feedback_loop = get_or<bool>(p, "feedback_loop", w, out.feedback_loop);
        out.design_ticks = get_or<Tick>(p, "design_ticks", w, out.design_ticks);
        out.manufacture_ticks = get_or<Tick>(p, "manufacture_ticks", w, out.manufacture_ticks);
        out.default_latency = get_or<Tick>(p, "default_latency", w, out.default_latency);
        out.latency_jitter = get_or<Tick>(p, "latency_jitter", w, out.latency_jitter);
        if (p.contains("repository_node") && !p.at("repository_node").is_null())
            out.repository_node = NodeId(get<std::string>(p, "repository_node", w));
    }
    return sc;
}

// -- writing -----------------------------------------------------------------

ordered_json write_stimulus(const Stimulus& s) {
    ordered_json j;
    j["tick"] = s.tick;
    j["node"] = s.node.str();
    j["key"] = s.routing_key;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SensorBatch>) {
                j["kind"] = "sensor_batch";
                j["product"] = p.product.render();
                j["environmental"] = p.environmental;
                j["events"] = ordered_json::array();
                for (const auto& e : p.events) {
                    ordered_json ev;
                    ev["sensor"] = e.sensor;
                    ev["value"] = e.value;
                    ev["unit"] = e.unit;
                    j["events"].push_back(std::move(ev));
                }
            } else if constexpr (std::is_same_v<T, CustomerFeedback>) {
                j["kind"] = "customer_feedback";
                j["product"] = p.product.render();
                j["text"] = p.text;
            } else if constexpr (std::is_same_v<T, FaultReport>) {
                j["kind"] = "fault";
                j["product"] = p.product.render();
                j["description"] = p.description;
            } else if constexpr (std::is_same_v<T, RetirementNotice>) {
                j["kind"] = "retirement";
                j["product"] = p.product.render();
                j["conditions"] = ordered_json::array();
                for (const auto& c : p.conditions) {
                    ordered_json cj;
                    cj["component"] = c.component;
                    cj["condition"] = c.condition;
                    cj["hazardous"] = c.hazardous;
                    j["conditions"].push_back(std::move(cj));
                }
            } else {
                invalid("stimulus payload " + std::string(payload_kind(s.payload)) + " cannot be scripted");
            }
        },
        s.payload);
    return j;
}

}  // namespace

std::string default_routing_key(const Payload& payload) {
    if (const auto* batch = std::get_if<SensorBatch>(&payload)) return batch->environmental ? "sensor.env" : "sensor.use";
    if (std::holds_alternative<CustomerFeedback>(payload)) return "customer.feedback";
    if (std::holds_alternative<FaultReport>(payload)) return "product.fault";
    if (std::holds_alternative<RetirementNotice>(payload)) return "product.retire";
    if (std::holds_alternative<ServiceOrder>(payload)) return "service.order";
    if (std::holds_alternative<KnowledgeNotice>(payload)) return "knowledge.record";
    if (std::holds_alternative<DesignTrigger>(payload)) return "design.trigger";
    return "eol.disposition";
}

Scenario parse_scenario(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line/column.
        const auto offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
        const auto line_start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
        const auto column = offset - (line_start == std::string_view::npos ? 0 : line_start + 1) + 1;
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
    }
    auto scenario = read_scenario(root);
    validate_scenario(scenario);
    return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void validate_scenario(const Scenario& sc) {
    if (sc.name.empty() || !is_token(sc.name)) invalid("scenario name must be a non-empty token");
    if (sc.horizon < 1) invalid("horizon must be >= 1");

    std::set<NodeId> nodes;
    for (const auto& n : sc.nodes) {
        if (!is_token(n.id.str())) invalid("node id '" + n.id.str() + "' must be a non-empty token");
        if (!nodes.insert(n.id).second) invalid("duplicate node id '" + n.id.str() + "'");
    }
    auto require_node = [&](const NodeId& id, const std::string& where) {
        if (!nodes.contains(id)) invalid(where + " references unknown node '" + id.str() + "'");
    };

    std::set<AgentId> agents;
    std::set<ProductId> products;
    for (const auto& a : sc.agents) {
        const auto where = "agent '" + a.id.str() + "'";
        if (!is_token(a.id.str())) invalid("agent id '" + a.id.str() + "' must be a non-empty token");
        if (!agents.insert(a.id).second) invalid("duplicate agent id '" + a.id.str() + "'");
        require_node(a.home, where);
        for (const auto& hop : a.itinerary) require_node(hop, where + " itinerary");
        if (a.role == AgentRole::AgentProduct && !a.product) invalid(where + " is an AgentProduct without a product");
        if (a.generation < 1) invalid(where + " generation must be >= 1");
        if (a.product) {
            if (!a.capabilities.contains(PeidCapability::UniqueID))
                invalid(where + " binds a PEID without UniqueID");
            products.insert(*a.product);
        }
    }

    if (sc.routing.empty() || sc.routing.back().pattern != "*")
        invalid("routing table must end with the catch-all rule '*'");
    for (const auto& rule : sc.routing)
        if (rule.pattern.empty()) invalid("routing rule with empty pattern");

    for (const auto& l : sc.latencies) {
        require_node(l.a, "latency");
        require_node(l.b, "latency");
        if (l.ticks < 1) invalid("latency between '" + l.a.str() + "' and '" + l.b.str() + "' must be >= 1");
    }
    for (const auto& p : sc.partitions) {
        require_node(p.a, "partition");
        require_node(p.b, "partition");
        if (p.a == p.b) invalid("partition of node '" + p.a.str() + "' with itself");
        if (p.from < 1 || p.from > p.to) invalid("partition range must satisfy 1 <= from <= to");
    }

    for (const auto& s : sc.stimuli) {
        const auto where = "stimulus at tick " + std::to_string(s.tick);
        require_node(s.node, where);
        if (s.tick < 1 || s.tick > sc.horizon) invalid(where + " lies outside 1..horizon");
        if (s.routing_key.empty()) invalid(where + " has an empty routing key");
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (requires { p.product; })
                    if (!products.contains(p.product))
                        invalid(where + " references unbound product '" + p.product.render() + "'");
                if constexpr (std::is_same_v<T, CustomerFeedback>)
                    if (p.text.empty()) invalid(where + " has empty feedback text");
                if constexpr (std::is_same_v<T, RetirementNotice>) {
                    if (p.conditions.empty()) invalid(where + " has no component conditions");
                    for (const auto& c : p.conditions)
                        if (!(c.condition >= 0.0 && c.condition <= 1.0))
                            invalid(where + " condition of '" + c.component + "' outside [0,1]");
                }
            },
            s.payload);
    }

    const auto& p = sc.params;
    if (p.trigger_threshold < 1) invalid("trigger_threshold must be >= 1");
    try {
        p.eol_policy.validate();
    } catch (const Error& e) {
        invalid(e.what());
    }
    if (p.design_ticks < 1 || p.manufacture_ticks < 1) invalid("design_ticks and manufacture_ticks must be >= 1");
    if (p.default_latency < 1) invalid("default_latency must be >= 1");
    if (p.latency_jitter < 0) invalid("latency_jitter must be >= 0");
    if (p.repository_node) require_node(*p.repository_node, "repository_node");
}

std::string save_scenario(const Scenario& sc) {
    ordered_json root;
    root["format"] = kScenarioFormat;
    root["name"] = sc.name;
    root["seed"] = sc.seed;
    root["horizon"] = sc.horizon;

    root["nodes"] = ordered_json::array();
    for (const auto& n : sc.nodes) root["nodes"].push_back({{"id", n.id.str()}, {"kind", to_string(n.kind)}});

    root["agents"] = ordered_json::array();
    for (const auto& a : sc.agents) {
        ordered_json j;
        j["id"] = a.id.str();
        j["role"] = to_string(a.role);
        j["home"] = a.home.str();
        j["itinerary"] = ordered_json::array();
        for (const auto& hop : a.itinerary) j["itinerary"].push_back(hop.str());
        j["product"] = a.product ? ordered_json(a.product->render()) : ordered_json(nullptr);
        j["generation"] = a.generation;
        j["capabilities"] = ordered_json::array();
        for (auto c : kAllCapabilities)
            if (a.capabilities.contains(c)) j["capabilities"].push_back(to_string(c));
        j["phase"] = to_string(a.phase);
        root["agents"].push_back(std::move(j));
    }

    root["routing"] = ordered_json::array();
    for (const auto& rule : sc.routing) {
        ordered_json j;
        j["pattern"] = rule.pattern;
        j["recipients"] = rule.recipients;
        root["routing"].push_back(std::move(j));
    }

    root["latency"] = ordered_json::array();
    for (const auto& l : sc.latencies) {
        ordered_json j;
        j["a"] = l.a.str();
        j["b"] = l.b.str();
        j["ticks"] = l.ticks;
        root["latency"].push_back(std::move(j));
    }

    root["partitions"] = ordered_json::array();
    for (const auto& p : sc.partitions) {
        ordered_json j;
        j["a"] = p.a.str();
        j["b"] = p.b.str();
        j["from"] = p.from;
        j["to"] = p.to;
        root["partitions"].push_back(std::move(j));
    }

    root["stimuli"] = ordered_json::array();
    for (const auto& s : sc.stimuli) root["stimuli"].push_back(write_stimulus(s));

    ordered_json params;
    params["trigger_threshold"] = sc.params.trigger_threshold;
    params["eol_policy"] = ordered_json::object();
    params["eol_policy"]["reuse"] = sc.params.eol_policy.reuse_threshold;
    params["eol_policy"]["component"] = sc.params.eol_policy.component_threshold;
    params["eol_policy"]["reclaim"] = sc.params.eol_policy.reclaim_threshold;
    params["feedback_loop"] = sc.params.feedback_loop;
    params["design_ticks"] = sc.params.design_ticks;
    params["manufacture_ticks"] = sc.params.manufacture_ticks;
    params["default_latency"] = sc.params.default_latency;
    params["latency_jitter"] = sc.params.latency_jitter;
    params["repository_node"] =
        sc.params.repository_node ? ordered_json(sc.params.repository_node->str()) : ordered_json(nullptr);
    root["parameters"] = std::move(params);

    return root.dump(2) + "\n";
}

World build_world(const Scenario& sc, std::optional<std::uint64_t> seed_override) {
    WorldConfig config{.params = {.trigger_threshold = sc.params.trigger_threshold,
                                  .eol_policy = sc.params.eol_policy,
                                  .feedback_loop = sc.params.feedback_loop},
                       .default_latency = sc.params.default_latency,
                       .latency_jitter = sc.params.latency_jitter,
                       .design_ticks = sc.params.design_ticks,
                       .manufacture_ticks = sc.params.manufacture_ticks,
                       .repository_node = sc.params.repository_node};
    World world(seed_override.value_or(sc.seed), std::move(config));
    for (const auto& n : sc.nodes) world.register_node(n.kind, n.id);
    for (const auto& l : sc.latencies) world.set_latency(l.a, l.b, l.ticks);
    for (const auto& p : sc.partitions) world.schedule_partition(p.a, p.b, p.from, p.to);
    world.set_routing(RoutingTable(sc.routing));

    std::set<ProductId> seen;
    for (const auto& a : sc.agents) {
        if (a.product && seen.insert(*a.product).second)
            world.add_product(ProductInstance{
                .peid = Peid(*a.product, a.capabilities), .generation = a.generation, .phase = a.phase});
        world.spawn_agent(make_agent(a.id, a.role, a.home, a.product, a.generation, a.itinerary));
    }
    for (const auto& s : sc.stimuli) world.schedule_stimulus(s);
    return world;
}

}  // namespace ploop
