#pragma once

#include <random>

#include "schelling/game.hpp"

// Structured and randomized boards used by the verification suite and the
// test suite: paths, cycles, circulants, random connected graphs, and random
// games over them. Everything is deterministic given the caller's engine.
namespace schelling::testbeds {

inline Topology path_topology(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Topology(n, std::move(edges));
}

inline Topology cycle_topology(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Topology(n, std::move(edges));
}

// Circulant graph: v ~ v +- o (mod n) for each offset o. With distinct
// offsets < n/2 this is 2*|offsets|-regular.
inline Topology circulant_topology(int n, const std::vector<int>& offsets) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v)
        for (int o : offsets) {
            int u = v, w = (v + o) % n;
            if (u > w) std::swap(u, w);
            edges.emplace_back(u, w);
        }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Topology(n, std::move(edges));
}

// Uniform-ish random tree plus extra random edges; always connected.
inline Topology random_connected_topology(int n, int extra_edges, std::mt19937_64& engine) {
    std::vector<int> order(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<size_t>(v)] = v;
    std::shuffle(order.begin(), order.end(), engine);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) {
        int u = order[static_cast<size_t>(engine() % static_cast<std::uint64_t>(i))];
        int v = order[static_cast<size_t>(i)];
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (int added = 0, attempts = 0; added < extra_edges && attempts < 50 * (extra_edges + 1);
         ++attempts) {
        int u = static_cast<int>(engine() % static_cast<std::uint64_t>(n));
        int v = static_cast<int>(engine() % static_cast<std::uint64_t>(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        std::pair<int, int> e{u, v};
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it != edges.end() && *it == e) continue;
        edges.insert(it, e);
        ++added;
    }
    return Topology(n, std::move(edges));
}

// n agents split into k nonempty type classes, remainder spread at random.
inline std::vector<int> random_type_counts(int n, int k, std::mt19937_64& engine) {
    std::vector<int> counts(static_cast<size_t>(k), 1);
    for (int extra = n - k; extra > 0; --extra)
        ++counts[static_cast<size_t>(engine() % static_cast<std::uint64_t>(k))];
    return counts;
}

// All-strategic game whose agent ids come in type blocks: counts[0] agents
// of type 0 first, then counts[1] of type 1, and so on.
inline Game all_strategic_game(Topology topology, const std::vector<int>& type_counts) {
    std::vector<AgentSpec> agents;
    int id = 0;
    for (size_t t = 0; t < type_counts.size(); ++t)
        for (int c = 0; c < type_counts[t]; ++c)
            agents.push_back({id++, static_cast<int>(t), Role::Strategic, std::nullopt});
    return Game(std::move(topology), std::move(agents), static_cast<int>(type_counts.size()));
}

// Random game: shuffled type vector with every type present; each agent is
// stubborn with the given probability (in 1/16 steps), pinned to the node
// matching its own id so the identity assignment is always valid.
inline Game random_game(Topology topology, int k, int stubborn_sixteenths,
                        std::mt19937_64& engine) {
    const int n = topology.node_count();
    std::vector<int> counts = random_type_counts(n, k, engine);
    std::vector<int> types;
    for (int t = 0; t < k; ++t)
        types.insert(types.end(), static_cast<size_t>(counts[static_cast<size_t>(t)]), t);
    std::shuffle(types.begin(), types.end(), engine);
    std::vector<AgentSpec> agents;
    for (int id = 0; id < n; ++id) {
        const bool stubborn = static_cast<int>(engine() % 16) < stubborn_sixteenths;
        agents.push_back({id, types[static_cast<size_t>(id)],
                          stubborn ? Role::Stubborn : Role::Strategic,
                          stubborn ? std::optional<int>(id) : std::nullopt});
    }
    return Game(std::move(topology), std::move(agents), k);
}

inline Assignment identity_assignment(const Game& g) {
    std::vector<int> a(static_cast<size_t>(g.agent_count()));
    for (int i = 0; i < g.agent_count(); ++i) a[static_cast<size_t>(i)] = i;
    return Assignment(std::move(a));
}

// Stubborn agents pinned, strategic agents shuffled over the open nodes.
inline Assignment random_assignment(const Game& g, std::mt19937_64& engine) {
    std::vector<int> open = g.open_nodes();
    std::shuffle(open.begin(), open.end(), engine);
    std::vector<int> a(static_cast<size_t>(g.agent_count()), -1);
    size_t next = 0;
    for (const AgentSpec& spec : g.agents())
        a[static_cast<size_t>(spec.agent_id)] =
            spec.role == Role::Stubborn ? *spec.fixed_node : open[next++];
    return Assignment(std::move(a));
}

}  // namespace schelling::testbeds
