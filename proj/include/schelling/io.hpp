#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "schelling/dynamics.hpp"
#include "schelling/reductions.hpp"

namespace schelling::io {

// Insertion-ordered documents keep the serialized field order canonical, so
// files are diff-able and round-trips are bit-stable.
using json = nlohmann::ordered_json;

inline json rational_to_json(const Rational& r) {
    return json{{"num", r.numerator()}, {"den", r.denominator()}};
}

inline Rational rational_from_json(const json& j) {
    return Rational(j.at("num").get<long long>(), j.at("den").get<long long>());
}

// Assignments serialize as an object keyed by agent id.
inline json assignment_to_json(const Assignment& a) {
    json out = json::object();
    const std::vector<int>& map = a.agent_to_node();
    for (size_t id = 0; id < map.size(); ++id) out[std::to_string(id)] = map[id];
    return out;
}

inline Assignment assignment_from_json(const json& j) {
    std::vector<int> agent_to_node(j.size(), -1);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const unsigned long id = std::stoul(it.key());
        if (id >= agent_to_node.size())
            throw std::invalid_argument("assignment must map agent ids 0..count-1");
        agent_to_node[id] = it.value().get<int>();
    }
    return Assignment(std::move(agent_to_node));
}

inline json game_to_json(const Game& g) {
    json doc;
    doc["n"] = g.n();
    json edges = json::array();
    for (auto [u, v] : g.topology().edges()) edges.push_back(json::array({u, v}));
    doc["edges"] = std::move(edges);
    doc["k"] = g.k();
    json agents = json::array();
    for (const AgentSpec& a : g.agents()) {
        json spec;
        spec["id"] = a.agent_id;
        spec["type"] = a.type_index;
        spec["role"] = a.role == Role::Stubborn ? "stubborn" : "strategic";
        if (a.role == Role::Stubborn) spec["node"] = *a.fixed_node;
        agents.push_back(std::move(spec));
    }
    doc["agents"] = std::move(agents);
    return doc;
}

inline Game game_from_json(const json& doc) {
    const int n = doc.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const json& e : doc.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    std::vector<AgentSpec> agents;
    for (const json& spec : doc.at("agents")) {
        const std::string role = spec.at("role").get<std::string>();
        if (role != "stubborn" && role != "strategic")
            throw std::invalid_argument("unknown agent role " + role);
        const bool stubborn = role == "stubborn";
        agents.push_back({spec.at("id").get<int>(), spec.at("type").get<int>(),
                          stubborn ? Role::Stubborn : Role::Strategic,
                          stubborn ? std::optional<int>(spec.at("node").get<int>()) : std::nullopt});
    }
    return Game(Topology(n, std::move(edges)), std::move(agents), doc.at("k").get<int>());
}

inline json source_graph_to_json(const SourceGraph& h) {
    json doc;
    doc["n"] = h.node_count;
    json edges = json::array();
    for (auto [u, v] : h.edges) edges.push_back(json::array({u, v}));
    doc["edges"] = std::move(edges);
    return doc;
}

inline SourceGraph source_graph_from_json(const json& doc) {
    SourceGraph h;
    h.node_count = doc.at("n").get<int>();
    for (const json& e : doc.at("edges")) h.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return h;
}

// Game file with the generator's reference assignments and description.
inline json instance_to_json(const NamedInstance& inst) {
    json doc = game_to_json(inst.game);
    json refs = json::object();
    for (const auto& [name, assignment] : inst.reference_assignments)
        refs[name] = assignment_to_json(assignment);
    doc["references"] = std::move(refs);
    doc["provenance"] = inst.provenance;
    return doc;
}

// Game file with the reduction's parameters and per-node component labels.
inline json reduction_to_json(const ReductionOutput& out) {
    json doc = game_to_json(out.game);
    json params = json::object();
    for (const auto& [key, value] : out.parameters) params[key] = rational_to_json(value);
    doc["parameters"] = std::move(params);
    doc["component_map"] = out.component_map;
    doc["provenance"] = out.provenance;
    return doc;
}

// Graphviz export: one statement per node, labeled with the occupying (or
// pinned) agent's type, shaped by role (box = stubborn, ellipse = strategic).
// Without an assignment, nodes not pinned by a stubborn agent read "open".
inline std::string to_dot(const Game& g, const Assignment* assignment = nullptr) {
    std::vector<int> pinned(static_cast<size_t>(g.n()), -1);
    for (const AgentSpec& a : g.agents())
        if (a.role == Role::Stubborn) pinned[static_cast<size_t>(*a.fixed_node)] = a.agent_id;
    std::ostringstream out;
    out << "graph game {\n";
    for (int v = 0; v < g.n(); ++v) {
        const int agent_id = assignment ? assignment->agent_at(v) : pinned[static_cast<size_t>(v)];
        std::string label = "open";
        bool stubborn = false;
        if (agent_id >= 0) {
            const AgentSpec& a = g.agent(agent_id);
            label = "t" + std::to_string(a.type_index);
            stubborn = a.role == Role::Stubborn;
        }
        out << "  " << v << " [label=\"" << label << "\", shape=" << (stubborn ? "box" : "ellipse")
            << "];\n";
    }
    for (auto [u, v] : g.topology().edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string verdict_name(DynamicsVerdict::Kind kind) {
    switch (kind) {
        case DynamicsVerdict::Kind::ReachedEquilibrium: return "reached-equilibrium";
        case DynamicsVerdict::Kind::StepCapExhausted: return "step-cap-exhausted";
        case DynamicsVerdict::Kind::CycleDetected: return "cycle-detected";
    }
    return "unknown";
}

inline json trace_to_json(const DynamicsTrace& trace) {
    json doc;
    doc["initial"] = assignment_to_json(trace.initial);
    json steps = json::array();
    for (const SwapMove& m : trace.steps) {
        json step;
        step["agent_i"] = m.agent_i;
        step["agent_j"] = m.agent_j;
        step["before_i"] = rational_to_json(m.before_i.value());
        step["after_i"] = rational_to_json(m.after_i.value());
        step["before_j"] = rational_to_json(m.before_j.value());
        step["after_j"] = rational_to_json(m.after_j.value());
        steps.push_back(std::move(step));
    }
    doc["steps"] = std::move(steps);
    doc["final"] = assignment_to_json(trace.final);
    doc["verdict"] = verdict_name(trace.verdict.kind);
    if (trace.verdict.kind == DynamicsVerdict::Kind::CycleDetected)
        doc["cycle_period"] = trace.verdict.cycle_period;
    return doc;
}

inline json ratio_value_to_json(const RatioValue& v) {
    switch (v.kind) {
        case RatioValue::Kind::Finite: return rational_to_json(v.value);
        case RatioValue::Kind::Unbounded: return json("unbounded");
        case RatioValue::Kind::NoEquilibrium: return json("no-equilibrium");
    }
    return json();
}

inline json ratio_report_to_json(const RatioReport& r) {
    json doc;
    doc["metric"] = r.metric == MetricKind::SocialWelfare ? "sw" : "di";
    doc["kind"] = r.kind == RatioKind::PoA ? "poa" : "pos";
    doc["value"] = ratio_value_to_json(r.value);
    doc["optimum_value"] = rational_to_json(r.optimum_value);
    doc["optimum_pattern"] = r.optimum_pattern.type_of_node;
    doc["equilibrium_count"] = r.equilibrium_count;
    if (r.equilibrium_value) doc["equilibrium_value"] = rational_to_json(*r.equilibrium_value);
    if (r.equilibrium_pattern) doc["equilibrium_pattern"] = r.equilibrium_pattern->type_of_node;
    return doc;
}

}  // namespace schelling::io
