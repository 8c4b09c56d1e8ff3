#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schelling/topology.hpp"

namespace schelling {

enum class Role { Strategic, Stubborn };

// One agent. Stubborn agents are pinned to fixed_node, never initiate or
// accept swaps, contribute 0 utility themselves, but count as neighbors and
// potential friends of everyone else.
struct AgentSpec {
    int agent_id = 0;
    int type_index = 0;
    Role role = Role::Strategic;
    std::optional<int> fixed_node;  // set iff role == Stubborn
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(const std::string& code) const {
        for (const auto& v : violations)
            if (v.code == code) return true;
        return false;
    }
};

// A game couples a board with an agent population. Construction enforces the
// structural basics needed for the object to be usable at all (dense unique
// agent ids, stubborn agents carrying an in-range fixed node); everything
// else (agent count vs node count, connectivity, type hygiene) is reported
// by validate_game rather than thrown, so malformed inputs can be described.
class Game {
public:
    Game(Topology topology, std::vector<AgentSpec> agents, int type_count)
        : topology_(std::move(topology)), agents_(std::move(agents)), type_count_(type_count) {
        std::sort(agents_.begin(), agents_.end(),
                  [](const AgentSpec& a, const AgentSpec& b) { return a.agent_id < b.agent_id; });
        for (size_t i = 0; i < agents_.size(); ++i) {
            const AgentSpec& a = agents_[i];
            if (a.agent_id != static_cast<int>(i))
                throw std::invalid_argument("agent ids must be exactly 0..count-1");
            if (a.role == Role::Stubborn) {
                if (!a.fixed_node)
                    throw std::invalid_argument("stubborn agent " + std::to_string(a.agent_id) +
                                                " has no fixed node");
                if (*a.fixed_node < 0 || *a.fixed_node >= topology_.node_count())
                    throw std::invalid_argument("stubborn agent " + std::to_string(a.agent_id) +
                                                " fixed to out-of-range node");
            } else if (a.fixed_node) {
                throw std::invalid_argument("strategic agent " + std::to_string(a.agent_id) +
                                            " must not carry a fixed node");
            }
        }
    }

    const Topology& topology() const { return topology_; }
    const std::vector<AgentSpec>& agents() const { return agents_; }
    int k() const { return type_count_; }
    int n() const { return topology_.node_count(); }
    int agent_count() const { return static_cast<int>(agents_.size()); }

    const AgentSpec& agent(int agent_id) const {
        if (agent_id < 0 || agent_id >= agent_count())
            throw std::out_of_range("unknown agent id " + std::to_string(agent_id));
        return agents_[static_cast<size_t>(agent_id)];
    }

    bool is_strategic(int agent_id) const { return agent(agent_id).role == Role::Strategic; }

    std::vector<int> strategic_agents() const {
        std::vector<int> ids;
        for (const auto& a : agents_)
            if (a.role == Role::Strategic) ids.push_back(a.agent_id);
        return ids;
    }

    std::vector<int> stubborn_agents() const {
        std::vector<int> ids;
        for (const auto& a : agents_)
            if (a.role == Role::Stubborn) ids.push_back(a.agent_id);
        return ids;
    }

    // Nodes not claimed by any stubborn agent, ascending.
    std::vector<int> open_nodes() const {
        std::vector<char> taken(static_cast<size_t>(n()), 0);
        for (const auto& a : agents_)
            if (a.role == Role::Stubborn) taken[static_cast<size_t>(*a.fixed_node)] = 1;
        std::vector<int> nodes;
        for (int v = 0; v < n(); ++v)
            if (!taken[static_cast<size_t>(v)]) nodes.push_back(v);
        return nodes;
    }

    std::vector<int> type_counts() const {
        std::vector<int> counts(static_cast<size_t>(std::max(type_count_, 0)), 0);
        for (const auto& a : agents_)
            if (a.type_index >= 0 && a.type_index < type_count_)
                ++counts[static_cast<size_t>(a.type_index)];
        return counts;
    }

    std::vector<int> strategic_type_counts() const {
        std::vector<int> counts(static_cast<size_t>(std::max(type_count_, 0)), 0);
        for (const auto& a : agents_)
            if (a.role == Role::Strategic && a.type_index >= 0 && a.type_index < type_count_)
                ++counts[static_cast<size_t>(a.type_index)];
        return counts;
    }

private:
    Topology topology_;
    std::vector<AgentSpec> agents_;
    int type_count_;
};

inline ValidationReport validate_game(const Game& g) {
    ValidationReport report;
    auto add = [&](std::string code, std::string message) {
        report.violations.push_back({std::move(code), std::move(message)});
    };

    if (g.agent_count() != g.n())
        add("AgentCountMismatch", std::to_string(g.agent_count()) + " agents on " +
                                      std::to_string(g.n()) + " nodes");

    if (g.k() < 2) add("BadTypeCount", "type count " + std::to_string(g.k()) + " < 2");

    std::vector<char> type_seen(static_cast<size_t>(std::max(g.k(), 0)), 0);
    std::vector<int> stubborn_node_of(static_cast<size_t>(g.n()), -1);
    for (const AgentSpec& a : g.agents()) {
        if (a.type_index < 0 || a.type_index >= g.k()) {
            add("BadTypeIndex", "agent " + std::to_string(a.agent_id) + " has type " +
                                    std::to_string(a.type_index) + " outside [0," +
                                    std::to_string(g.k()) + ")");
        } else {
            type_seen[static_cast<size_t>(a.type_index)] = 1;
        }
        if (a.role == Role::Stubborn) {
            int node = *a.fixed_node;
            int& owner = stubborn_node_of[static_cast<size_t>(node)];
            if (owner >= 0)
                add("DuplicateStubbornNode", "agents " + std::to_string(owner) + " and " +
                                                 std::to_string(a.agent_id) +
                                                 " both fixed to node " + std::to_string(node));
            else
                owner = a.agent_id;
        }
    }
    for (int t = 0; t < g.k(); ++t)
        if (!type_seen[static_cast<size_t>(t)])
            add("UnusedType", "no agent has type " + std::to_string(t));

    if (!g.topology().connected()) add("Disconnected", "topology is not connected");

    return report;
}

// Bijection agents -> nodes. The permutation property is a construction
// invariant; compatibility with a particular game (size, stubborn pinning)
// is checked by validate_assignment.
class Assignment {
public:
    explicit Assignment(std::vector<int> agent_to_node)
        : agent_to_node_(std::move(agent_to_node)),
          node_to_agent_(agent_to_node_.size(), -1) {
        const int n = static_cast<int>(agent_to_node_.size());
        for (int i = 0; i < n; ++i) {
            int v = agent_to_node_[static_cast<size_t>(i)];
            if (v < 0 || v >= n)
                throw std::invalid_argument("assignment target out of range");
            if (node_to_agent_[static_cast<size_t>(v)] != -1)
                throw std::invalid_argument("two agents assigned to node " + std::to_string(v));
            node_to_agent_[static_cast<size_t>(v)] = i;
        }
    }

    int size() const { return static_cast<int>(agent_to_node_.size()); }

    int node_of(int agent_id) const {
        if (agent_id < 0 || agent_id >= size())
            throw std::out_of_range("unknown agent id " + std::to_string(agent_id));
        return agent_to_node_[static_cast<size_t>(agent_id)];
    }

    int agent_at(int node) const {
        if (node < 0 || node >= size())
            throw std::out_of_range("node " + std::to_string(node) + " out of range");
        return node_to_agent_[static_cast<size_t>(node)];
    }

    const std::vector<int>& agent_to_node() const { return agent_to_node_; }

    void swap_agents(int i, int j) {
        if (i == j) throw std::invalid_argument("cannot swap an agent with itself");
        int vi = node_of(i), vj = node_of(j);
        agent_to_node_[static_cast<size_t>(i)] = vj;
        agent_to_node_[static_cast<size_t>(j)] = vi;
        node_to_agent_[static_cast<size_t>(vi)] = j;
        node_to_agent_[static_cast<size_t>(vj)] = i;
    }

    bool operator==(const Assignment& other) const {
        return agent_to_node_ == other.agent_to_node_;
    }

private:
    std::vector<int> agent_to_node_;
    std::vector<int> node_to_agent_;
};

inline ValidationReport validate_assignment(const Game& g, const Assignment& a) {
    ValidationReport report;
    if (a.size() != g.agent_count() || a.size() != g.n()) {
        report.violations.push_back(
            {"SizeMismatch", "assignment covers " + std::to_string(a.size()) + " agents, game has " +
                                 std::to_string(g.agent_count()) + " agents on " +
                                 std::to_string(g.n()) + " nodes"});
        return report;
    }
    for (const AgentSpec& spec : g.agents())
        if (spec.role == Role::Stubborn && a.node_of(spec.agent_id) != *spec.fixed_node)
            report.violations.push_back(
                {"StubbornMisplaced", "stubborn agent " + std::to_string(spec.agent_id) +
                                          " sits at node " + std::to_string(a.node_of(spec.agent_id)) +
                                          ", pinned to " + std::to_string(*spec.fixed_node)});
    return report;
}

}  // namespace schelling
