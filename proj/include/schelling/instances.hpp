#pragma once

#include <map>
#include <string>

#include "schelling/game.hpp"

namespace schelling {

// A generated game plus canonical assignments worth talking about (known
// equilibria, planted optima, counterexample starts), keyed by role-based
// names, plus a one-line structural description.
struct NamedInstance {
    Game game;
    std::map<std::string, Assignment> reference_assignments;
    std::string provenance;
};

namespace detail {

// Strategic agents with ids grouped by type: counts[0] ids first, and so on.
inline std::vector<AgentSpec> agents_in_type_blocks(const std::vector<int>& counts) {
    std::vector<AgentSpec> agents;
    int id = 0;
    for (size_t t = 0; t < counts.size(); ++t)
        for (int c = 0; c < counts[t]; ++c)
            agents.push_back({id++, static_cast<int>(t), Role::Strategic, std::nullopt});
    return agents;
}

// Assignment sending, per type, strategic agents in ascending id order to the
// given nodes in ascending order. Requires all-strategic games.
inline Assignment assignment_by_type_nodes(const Game& g,
                                           std::vector<std::vector<int>> nodes_by_type) {
    for (auto& nodes : nodes_by_type) std::sort(nodes.begin(), nodes.end());
    std::vector<size_t> next(nodes_by_type.size(), 0);
    std::vector<int> agent_to_node(static_cast<size_t>(g.agent_count()), -1);
    for (const AgentSpec& a : g.agents()) {
        auto& cursor = next[static_cast<size_t>(a.type_index)];
        agent_to_node[static_cast<size_t>(a.agent_id)] =
            nodes_by_type[static_cast<size_t>(a.type_index)][cursor++];
    }
    return Assignment(std::move(agent_to_node));
}

}  // namespace detail

// Tree family with no swap equilibrium. k=2: the 10-node three-layer tree
// (root 0, children 1..3, two leaves each, breadth-first numbering) with 5
// red and 5 blue agents, plus the canonical non-equilibrium start. k>=3:
// root with k(k-1)-1 children, k leaves per child, k^2-2 agents per type.
inline NamedInstance nonexistence_tree(int k) {
    if (k < 2) throw std::invalid_argument("nonexistence_tree requires k >= 2");
    std::vector<std::pair<int, int>> edges;
    std::vector<int> counts;
    if (k == 2) {
        edges = {{0, 1}, {0, 2}, {0, 3}};
        int next = 4;
        for (int child = 1; child <= 3; ++child) {
            edges.emplace_back(child, next++);
            edges.emplace_back(child, next++);
        }
        counts = {5, 5};
    } else {
        const int children = k * (k - 1) - 1;
        for (int child = 1; child <= children; ++child) edges.emplace_back(0, child);
        int next = children + 1;
        for (int child = 1; child <= children; ++child)
            for (int leaf = 0; leaf < k; ++leaf) edges.emplace_back(child, next++);
        counts.assign(static_cast<size_t>(k), k * k - 2);
    }
    int n = 0;
    for (int c : counts) n += c;
    Game game(Topology(n, std::move(edges)), detail::agents_in_type_blocks(counts), k);
    std::map<std::string, Assignment> refs;
    if (k == 2)
        refs.emplace("nonequilibrium", detail::assignment_by_type_nodes(
                                           game, {{0, 1, 2, 4, 5}, {3, 6, 7, 8, 9}}));
    return NamedInstance{std::move(game), std::move(refs),
                         "three-layer tree without swap equilibria, k=" + std::to_string(k)};
}

// Star with n-2 red and 2 blue agents: the blue-center equilibrium is far
// worse than the red-center placement.
inline NamedInstance poa_star(int n) {
    if (n < 5) throw std::invalid_argument("poa_star requires n >= 5");
    std::vector<std::pair<int, int>> edges;
    for (int leaf = 1; leaf < n; ++leaf) edges.emplace_back(0, leaf);
    Game game(Topology(n, std::move(edges)), detail::agents_in_type_blocks({n - 2, 2}), 2);
    std::vector<int> red_leaves;
    for (int v = 2; v < n; ++v) red_leaves.push_back(v);
    std::map<std::string, Assignment> refs;
    refs.emplace("blue-center", detail::assignment_by_type_nodes(game, {red_leaves, {0, 1}}));
    std::vector<int> red_center{0};
    for (int v = 3; v < n; ++v) red_center.push_back(v);
    refs.emplace("red-center", detail::assignment_by_type_nodes(game, {red_center, {1, 2}}));
    return NamedInstance{std::move(game), std::move(refs),
                         "star with two blue agents, n=" + std::to_string(n)};
}

// Hub 0 joined to x leaves (nodes 1..x) and to one node of an (x-1)-clique
// (nodes x+1..2x-1); x red, x blue. With leaf_pairing, consecutive leaves
// are joined pairwise so every blue agent keeps positive utility.
inline NamedInstance clique_pendant(int x, bool leaf_pairing) {
    if (x < 3) throw std::invalid_argument("clique_pendant requires x >= 3");
    if (leaf_pairing && x % 2 != 0)
        throw std::invalid_argument("leaf pairing requires an even number of leaves");
    std::vector<std::pair<int, int>> edges;
    for (int leaf = 1; leaf <= x; ++leaf) edges.emplace_back(0, leaf);
    edges.emplace_back(0, x + 1);
    for (int u = x + 1; u < 2 * x; ++u)
        for (int v = u + 1; v < 2 * x; ++v) edges.emplace_back(u, v);
    if (leaf_pairing)
        for (int leaf = 1; leaf < x; leaf += 2) edges.emplace_back(leaf, leaf + 1);
    Game game(Topology(2 * x, std::move(edges)), detail::agents_in_type_blocks({x, x}), 2);
    std::vector<int> red_nodes{0};
    for (int v = x + 1; v < 2 * x; ++v) red_nodes.push_back(v);
    std::vector<int> blue_nodes;
    for (int v = 1; v <= x; ++v) blue_nodes.push_back(v);
    std::map<std::string, Assignment> refs;
    refs.emplace("equilibrium", detail::assignment_by_type_nodes(game, {red_nodes, blue_nodes}));
    return NamedInstance{std::move(game), std::move(refs),
                         "hub with pendant clique and " + std::to_string(x) +
                             (leaf_pairing ? " pairwise-joined leaves" : " leaves")};
}

// Cycle 0..k-1 with a pendant node k+l attached to each cycle node l; k
// types with two agents each. The shifted placement is a zero-welfare
// equilibrium, the aligned one is welfare-optimal.
inline NamedInstance cycle_pendant(int k) {
    if (k < 3) throw std::invalid_argument("cycle_pendant requires k >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < k; ++v) edges.emplace_back(v, (v + 1) % k);
    for (int v = 0; v < k; ++v) edges.emplace_back(v, k + v);
    Game game(Topology(2 * k, std::move(edges)),
              detail::agents_in_type_blocks(std::vector<int>(static_cast<size_t>(k), 2)), k);
    std::vector<std::vector<int>> shifted(static_cast<size_t>(k));
    std::vector<std::vector<int>> aligned(static_cast<size_t>(k));
    for (int t = 0; t < k; ++t) {
        shifted[static_cast<size_t>(t)] = {t, k + (t + k - 1) % k};
        aligned[static_cast<size_t>(t)] = {t, k + t};
    }
    std::map<std::string, Assignment> refs;
    refs.emplace("equilibrium", detail::assignment_by_type_nodes(game, shifted));
    refs.emplace("optimal", detail::assignment_by_type_nodes(game, aligned));
    return NamedInstance{std::move(game), std::move(refs),
                         "cycle with pendants, k=" + std::to_string(k)};
}

// Root 0 joined to hubs 1 and 2 and to 2x-1 leaves (3..2x+1); hub 1 carries
// leaves 2x+2..3x+1, hub 2 carries leaves 3x+2..4x+1; 2x+1 agents per type.
// The best equilibrium trails the planted optimum, so the stability price
// exceeds 1.
inline NamedInstance pos_tree(int x) {
    if (x < 3) throw std::invalid_argument("pos_tree requires x >= 3");
    std::vector<std::pair<int, int>> edges{{0, 1}, {0, 2}};
    for (int v = 3; v <= 2 * x + 1; ++v) edges.emplace_back(0, v);
    for (int v = 2 * x + 2; v <= 3 * x + 1; ++v) edges.emplace_back(1, v);
    for (int v = 3 * x + 2; v <= 4 * x + 1; ++v) edges.emplace_back(2, v);
    Game game(Topology(4 * x + 2, std::move(edges)),
              detail::agents_in_type_blocks({2 * x + 1, 2 * x + 1}), 2);

    // Red on the root, hub 1 with its whole subtree, and all but one root
    // leaf; blue elsewhere.
    std::vector<int> best_red{0, 1};
    for (int v = 3; v <= x + 1; ++v) best_red.push_back(v);
    for (int v = 2 * x + 2; v <= 3 * x + 1; ++v) best_red.push_back(v);
    // Red on the root, every root leaf, and one hub-1 leaf.
    std::vector<int> planted_red{0};
    for (int v = 3; v <= 2 * x + 2; ++v) planted_red.push_back(v);

    auto complement = [&](const std::vector<int>& reds) {
        std::vector<char> is_red(static_cast<size_t>(game.n()), 0);
        for (int v : reds) is_red[static_cast<size_t>(v)] = 1;
        std::vector<int> blues;
        for (int v = 0; v < game.n(); ++v)
            if (!is_red[static_cast<size_t>(v)]) blues.push_back(v);
        return blues;
    };
    std::map<std::string, Assignment> refs;
    refs.emplace("best-equilibrium",
                 detail::assignment_by_type_nodes(game, {best_red, complement(best_red)}));
    refs.emplace("planted-optimum",
                 detail::assignment_by_type_nodes(game, {planted_red, complement(planted_red)}));
    return NamedInstance{std::move(game), std::move(refs),
                         "double-hub tree, x=" + std::to_string(x)};
}

// Root 0 with children 1..k, each carrying x-1 leaves (child c holds nodes
// k+1+(c-1)(x-1) .. k+c(x-1)); type 0 has x+1 agents, every other type x.
// Filling each child subtree with one type leaves only the children exposed.
inline NamedInstance spider_tree(int k, int x) {
    if (k < 2 || x < 2) throw std::invalid_argument("spider_tree requires k >= 2 and x >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int child = 1; child <= k; ++child) edges.emplace_back(0, child);
    int next = k + 1;
    for (int child = 1; child <= k; ++child)
        for (int leaf = 0; leaf < x - 1; ++leaf) edges.emplace_back(child, next++);
    std::vector<int> counts(static_cast<size_t>(k), x);
    counts[0] = x + 1;
    Game game(Topology(k * x + 1, std::move(edges)), detail::agents_in_type_blocks(counts), k);
    std::vector<std::vector<int>> segregated(static_cast<size_t>(k));
    for (int t = 0; t < k; ++t) {
        const int child = t + 1;
        if (t == 0) segregated[0].push_back(0);
        segregated[static_cast<size_t>(t)].push_back(child);
        for (int leaf = 0; leaf < x - 1; ++leaf)
            segregated[static_cast<size_t>(t)].push_back(k + 1 + (child - 1) * (x - 1) + leaf);
    }
    std::map<std::string, Assignment> refs;
    refs.emplace("segregated-equilibrium", detail::assignment_by_type_nodes(game, segregated));
    return NamedInstance{std::move(game), std::move(refs),
                         "spider tree, k=" + std::to_string(k) + " x=" + std::to_string(x)};
}

// Path on sum(counts) nodes, all strategic, agent ids grouped by type. The
// monochromatic-blocks reference places the types as consecutive blocks.
inline NamedInstance line_game(const std::vector<int>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("line_game requires at least two types");
    int n = 0;
    for (int c : counts) {
        if (c < 2) throw std::invalid_argument("line_game requires at least two agents per type");
        n += c;
    }
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    Game game(Topology(n, std::move(edges)), detail::agents_in_type_blocks(counts),
              static_cast<int>(counts.size()));
    std::vector<int> identity(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) identity[static_cast<size_t>(i)] = i;
    std::map<std::string, Assignment> refs;
    refs.emplace("monochromatic-blocks", Assignment(std::move(identity)));
    return NamedInstance{std::move(game), std::move(refs),
                         "path with per-type counts, k=" + std::to_string(counts.size())};
}

struct StubbornStarTypeConfig {
    int strategic = 2;
    int stubborn = 1;
};

// Star game with a single strategic type-0 agent; every other type brings at
// least two strategic agents and at least one stubborn agent pinned to a
// leaf (stubborn agents take the highest-numbered leaves). Putting the lone
// agent at the center is a zero-welfare equilibrium.
inline NamedInstance stubborn_star(int k, const std::vector<StubbornStarTypeConfig>& sizes) {
    if (k < 2) throw std::invalid_argument("stubborn_star requires k >= 2");
    if (static_cast<int>(sizes.size()) != k - 1)
        throw std::invalid_argument("stubborn_star needs one config per non-zero type");
    int strategic_total = 1, stubborn_total = 0;
    for (const auto& cfg : sizes) {
        if (cfg.strategic < 2)
            throw std::invalid_argument("each non-zero type needs at least two strategic agents");
        if (cfg.stubborn < 1)
            throw std::invalid_argument("each non-zero type needs at least one stubborn agent");
        strategic_total += cfg.strategic;
        stubborn_total += cfg.stubborn;
    }
    const int n = strategic_total + stubborn_total;
    std::vector<std::pair<int, int>> edges;
    for (int leaf = 1; leaf < n; ++leaf) edges.emplace_back(0, leaf);

    std::vector<AgentSpec> agents;
    agents.push_back({0, 0, Role::Strategic, std::nullopt});
    int id = 1;
    for (int t = 1; t < k; ++t)
        for (int c = 0; c < sizes[static_cast<size_t>(t - 1)].strategic; ++c)
            agents.push_back({id++, t, Role::Strategic, std::nullopt});
    int pin = n - stubborn_total;
    for (int t = 1; t < k; ++t)
        for (int c = 0; c < sizes[static_cast<size_t>(t - 1)].stubborn; ++c)
            agents.push_back({id++, t, Role::Stubborn, pin++});
    Game game(Topology(n, std::move(edges)), std::move(agents), k);

    std::vector<int> agent_to_node(static_cast<size_t>(n), -1);
    int open = 1;
    for (const AgentSpec& a : game.agents()) {
        if (a.role == Role::Stubborn)
            agent_to_node[static_cast<size_t>(a.agent_id)] = *a.fixed_node;
        else
            agent_to_node[static_cast<size_t>(a.agent_id)] = a.agent_id == 0 ? 0 : open++;
    }
    std::map<std::string, Assignment> refs;
    refs.emplace("red-center", Assignment(std::move(agent_to_node)));
    return NamedInstance{std::move(game), std::move(refs),
                         "star with a lone type-0 agent and stubborn leaves, k=" +
                             std::to_string(k)};
}

}  // namespace schelling
