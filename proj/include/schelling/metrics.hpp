#pragma once

#include "schelling/model.hpp"

namespace schelling {

enum class MetricKind { SocialWelfare, DegreeOfIntegration };

// Sum of strategic agents' utilities. Stubborn agents are excluded.
inline Rational social_welfare(const Game& g, const Assignment& a) {
    detail::require_compatible(g, a);
    Rational total(0);
    for (const AgentSpec& spec : g.agents())
        if (spec.role == Role::Strategic) total += utility(g, a, spec.agent_id).value();
    return total;
}

// Number of exposed strategic agents: those with at least one neighbor of a
// different type (stubborn neighbors count).
inline int degree_of_integration(const Game& g, const Assignment& a) {
    detail::require_compatible(g, a);
    int exposed = 0;
    for (const AgentSpec& spec : g.agents()) {
        if (spec.role != Role::Strategic) continue;
        for (int w : g.topology().neighbors(a.node_of(spec.agent_id))) {
            if (g.agent(a.agent_at(w)).type_index != spec.type_index) {
                ++exposed;
                break;
            }
        }
    }
    return exposed;
}

// Total count of (strategic agent, same-type neighbor) incidences. On
// all-strategic games this is twice the number of monochromatic edges.
inline long long friend_potential(const Game& g, const Assignment& a) {
    detail::require_compatible(g, a);
    long long count = 0;
    for (const AgentSpec& spec : g.agents())
        if (spec.role == Role::Strategic)
            count += detail::friends_at(g, a, spec.agent_id, a.node_of(spec.agent_id), -1);
    return count;
}

// Total count of (strategic agent, differently-typed neighbor) incidences;
// on all-strategic games it complements friend_potential to 2|E|.
inline long long stranger_potential(const Game& g, const Assignment& a) {
    detail::require_compatible(g, a);
    long long count = 0;
    for (const AgentSpec& spec : g.agents()) {
        if (spec.role != Role::Strategic) continue;
        const int node = a.node_of(spec.agent_id);
        count += g.topology().degree(node) -
                 detail::friends_at(g, a, spec.agent_id, node, -1);
    }
    return count;
}

enum class PairBoundResult { Holds, Violated, NotTwoTypes, NotEquilibrium, ZeroUtilityPresent };

// At a two-type equilibrium where every strategic agent has positive utility,
// every cross-type strategic pair (i,j) satisfies u_i + u_j >= 1/2.
inline PairBoundResult pair_lower_bound_holds(const Game& g, const Assignment& a) {
    detail::require_compatible(g, a);
    if (g.k() != 2) return PairBoundResult::NotTwoTypes;
    if (!is_equilibrium(g, a).equilibrium) return PairBoundResult::NotEquilibrium;
    const std::vector<int> strategic = g.strategic_agents();
    for (int i : strategic)
        if (utility(g, a, i).friends == 0) return PairBoundResult::ZeroUtilityPresent;
    const Rational half(1, 2);
    for (size_t x = 0; x < strategic.size(); ++x) {
        for (size_t y = x + 1; y < strategic.size(); ++y) {
            const int i = strategic[x], j = strategic[y];
            if (g.agent(i).type_index == g.agent(j).type_index) continue;
            if (utility(g, a, i).value() + utility(g, a, j).value() < half)
                return PairBoundResult::Violated;
        }
    }
    return PairBoundResult::Holds;
}

}  // namespace schelling
