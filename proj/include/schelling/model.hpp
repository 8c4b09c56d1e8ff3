#pragma once

#include <cassert>
#include <optional>
#include <utility>

#include "schelling/game.hpp"
#include "schelling/rational.hpp"

namespace schelling {

// Exact utility of an agent: friends / degree, kept unreduced so the
// denominator is literally the degree of the occupied node. Stubborn agents
// have utility 0 by definition (represented as 0 friends over their degree).
struct Utility {
    long long friends = 0;
    long long degree = 0;

    Rational value() const { return degree == 0 ? Rational(0) : Rational(friends, degree); }
};

// Exact comparison via cross-multiplication; degree 0 means utility 0.
inline bool utility_less(const Utility& a, const Utility& b) {
    long long an = a.degree == 0 ? 0 : a.friends;
    long long ad = a.degree == 0 ? 1 : a.degree;
    long long bn = b.degree == 0 ? 0 : b.friends;
    long long bd = b.degree == 0 ? 1 : b.degree;
    return an * bd < bn * ad;
}

struct SwapMove {
    int agent_i = -1;
    int agent_j = -1;
    Utility before_i, before_j;
    Utility after_i, after_j;

    // A swap is beneficial iff both participants strictly improve.
    bool beneficial() const {
        return utility_less(before_i, after_i) && utility_less(before_j, after_j);
    }
};

namespace detail {

inline void require_compatible(const Game& g, const Assignment& a) {
    if (a.size() != g.agent_count() || a.size() != g.n())
        throw std::invalid_argument("assignment incompatible with game");
}

// Friends of agent `agent_id` if it stood at `node`, under `a` with
// `displaced` treated as absent (the swap partner about to leave).
inline long long friends_at(const Game& g, const Assignment& a, int agent_id, int node,
                            int displaced) {
    const int my_type = g.agent(agent_id).type_index;
    long long friends = 0;
    for (int w : g.topology().neighbors(node)) {
        int occupant = a.agent_at(w);
        if (occupant == agent_id || occupant == displaced) continue;
        if (g.agent(occupant).type_index == my_type) ++friends;
    }
    return friends;
}

}  // namespace detail

// Utility of an agent under an assignment. Stubborn agents get 0.
inline Utility utility(const Game& g, const Assignment& a, int agent_id) {
    detail::require_compatible(g, a);
    const AgentSpec& spec = g.agent(agent_id);
    const int node = a.node_of(agent_id);
    const long long degree = g.topology().degree(node);
    if (spec.role == Role::Stubborn) return Utility{0, degree};
    return Utility{detail::friends_at(g, a, agent_id, node, -1), degree};
}

// Raw position exchange; no role or benefit restrictions beyond i != j.
inline Assignment apply_swap(const Assignment& a, int i, int j) {
    Assignment result = a;
    result.swap_agents(i, j);
    return result;
}

// Guarded variant used by the dynamics: both participants must be strategic.
inline Assignment apply_strategic_swap(const Game& g, const Assignment& a, int i, int j) {
    if (!g.is_strategic(i) || !g.is_strategic(j))
        throw std::invalid_argument("swap participants must both be strategic");
    return apply_swap(a, i, j);
}

// Evaluates the exchange of two strategic agents, reporting utilities before
// and after. Post-swap utilities are computed in place: each agent sees the
// other's old node with the partner removed, except that a same-type partner
// on an adjacent node reappears as a friend on the vacated node.
inline SwapMove evaluate_swap(const Game& g, const Assignment& a, int i, int j) {
    detail::require_compatible(g, a);
    if (i == j) throw std::invalid_argument("cannot swap an agent with itself");
    if (!g.is_strategic(i) || !g.is_strategic(j))
        throw std::invalid_argument("swap participants must both be strategic");
    SwapMove move;
    move.agent_i = i;
    move.agent_j = j;
    const int vi = a.node_of(i), vj = a.node_of(j);
    const long long di = g.topology().degree(vi), dj = g.topology().degree(vj);
    const long long partner_friend = (g.agent(i).type_index == g.agent(j).type_index &&
                                      g.topology().adjacent(vi, vj))
                                         ? 1
                                         : 0;
    move.before_i = Utility{detail::friends_at(g, a, i, vi, -1), di};
    move.before_j = Utility{detail::friends_at(g, a, j, vj, -1), dj};
    move.after_i = Utility{detail::friends_at(g, a, i, vj, j) + partner_friend, dj};
    move.after_j = Utility{detail::friends_at(g, a, j, vi, i) + partner_friend, di};
    return move;
}

inline bool is_beneficial_swap(const Game& g, const Assignment& a, int i, int j) {
    const SwapMove move = evaluate_swap(g, a, i, j);
    const bool beneficial = move.beneficial();
    // Two agents of the same type trade identical neighborhood compositions,
    // so a beneficial swap is necessarily cross-type.
    assert(!beneficial || g.agent(i).type_index != g.agent(j).type_index);
    return beneficial;
}

struct EquilibriumResult {
    bool equilibrium = false;
    // Lexicographically smallest beneficial pair (i,j), i<j, when not at
    // equilibrium.
    std::optional<std::pair<int, int>> witness;
};

inline EquilibriumResult is_equilibrium(const Game& g, const Assignment& a) {
    detail::require_compatible(g, a);
    const std::vector<int> strategic = g.strategic_agents();
    for (size_t x = 0; x < strategic.size(); ++x) {
        for (size_t y = x + 1; y < strategic.size(); ++y) {
            const int i = strategic[x], j = strategic[y];
            if (g.agent(i).type_index == g.agent(j).type_index) continue;
            if (evaluate_swap(g, a, i, j).beneficial())
                return EquilibriumResult{false, std::make_pair(i, j)};
        }
    }
    return EquilibriumResult{true, std::nullopt};
}

}  // namespace schelling
