#pragma once

#include <map>
#include <optional>
#include <string>

#include "schelling/instances.hpp"
#include "schelling/search.hpp"

namespace schelling {

// Undirected simple graph serving as the source instance of a reduction.
struct SourceGraph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;
};

// A gadget game bundled with the construction's derived parameters, a label
// per node recording which structural component it belongs to, and a one-line
// description of the build.
struct ReductionOutput {
    Game game;
    std::map<std::string, Rational> parameters;
    std::vector<std::string> component_map;
    std::string provenance;
};

namespace detail {

// Accumulates nodes, edges, labels, and stubborn pinnings while a gadget is
// assembled node by node.
struct GadgetBuilder {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> stubborn_type;  // -1 for open nodes
    std::vector<std::string> labels;

    int add_node(std::string label, int stubborn = -1) {
        labels.push_back(std::move(label));
        stubborn_type.push_back(stubborn);
        return static_cast<int>(labels.size()) - 1;
    }
    int node_count() const { return static_cast<int>(labels.size()); }
};

// Packs the builder into a Game: strategic agents first, ids grouped by type,
// then one stubborn agent per pinned node in ascending node order.
inline Game finish_gadget(const GadgetBuilder& b, const std::vector<int>& strategic_counts,
                          int type_count) {
    std::vector<AgentSpec> agents = agents_in_type_blocks(strategic_counts);
    int id = static_cast<int>(agents.size());
    for (int v = 0; v < b.node_count(); ++v)
        if (b.stubborn_type[static_cast<size_t>(v)] >= 0)
            agents.push_back({id++, b.stubborn_type[static_cast<size_t>(v)], Role::Stubborn, v});
    return Game(Topology(b.node_count(), b.edges), std::move(agents), type_count);
}

}  // namespace detail

// Assignment placing the strategic type-0 agents on the given open nodes and
// the strategic type-1 agents on the remaining open nodes, each in ascending
// id order onto ascending nodes; stubborn agents sit at their pinned nodes.
// Requires that the strategic agents use only types 0 and 1.
inline Assignment assignment_with_reds(const Game& g, const std::vector<int>& red_nodes) {
    std::vector<int> type_of_node(static_cast<size_t>(g.n()), -1);
    for (const AgentSpec& a : g.agents())
        if (a.role == Role::Stubborn) type_of_node[static_cast<size_t>(*a.fixed_node)] = a.type_index;
    for (int v : g.open_nodes()) type_of_node[static_cast<size_t>(v)] = 1;
    for (int v : red_nodes) {
        if (v < 0 || v >= g.n() || type_of_node[static_cast<size_t>(v)] == -1)
            throw std::invalid_argument("red node " + std::to_string(v) + " is not an open node");
        if (type_of_node[static_cast<size_t>(v)] == 0)
            throw std::invalid_argument("red node " + std::to_string(v) + " listed twice");
        type_of_node[static_cast<size_t>(v)] = 0;
    }
    return assignment_from_pattern(g, TypePattern{std::move(type_of_node)});
}

// Maps a clique question (does h contain a complete subgraph on lambda nodes,
// lambda > 5?) to equilibrium existence. Three blocks joined by two bridge
// edges between stubborn pads:
//   G1: h itself, plus a pad W(v) per source node bringing every source node
//       to degree d_1 = 2*d_h + 2*lambda - 3; each W(v) holds d_h stubborn
//       reds and the rest stubborn blues.
//   G2: complete bipartite A x B with |A| = lambda - 5 open nodes and |B| =
//       4*d_1 stubborn nodes, 2*d_1 + 1 red and 2*d_1 - 1 blue.
//   G3: the ten-node no-equilibrium tree, each tree node v carrying a pad
//       Z(v) of 100*d_1 (degree-3 nodes) or 10*d_1 (leaves) stubborn agents,
//       half red and half blue.
// Strategic agents: lambda red and |X| + 5 blue, exactly filling the open
// nodes. If the reds can sit on a lambda-clique of X they are at equilibrium;
// otherwise every placement leaves some red underwater in G1 and the overflow
// pushes five of each color into the no-equilibrium tree.
inline ReductionOutput clique_to_game(const SourceGraph& h, int lambda) {
    if (lambda <= 5) throw std::invalid_argument("clique_to_game requires lambda > 5");
    Topology source(h.node_count, h.edges);
    if (!source.connected())
        throw std::invalid_argument("clique_to_game requires a connected source graph");
    const int x_count = source.node_count();
    int d_h = 0;
    for (int v = 0; v < x_count; ++v) d_h = std::max(d_h, source.degree(v));
    const long long d1 = 2LL * d_h + 2LL * lambda - 3;

    detail::GadgetBuilder b;
    for (int v = 0; v < x_count; ++v) b.add_node("G1:X");
    b.edges = source.edges();
    int first_w_pad = -1;
    for (int v = 0; v < x_count; ++v) {
        const long long pad = 2LL * d_h - source.degree(v) + 2LL * lambda - 3;
        for (long long i = 0; i < pad; ++i) {
            const int w = b.add_node("G1:W(" + std::to_string(v) + ")", i < d_h ? 0 : 1);
            if (first_w_pad < 0) first_w_pad = w;
            b.edges.emplace_back(v, w);
        }
    }
    std::vector<int> a_nodes;
    for (int i = 0; i < lambda - 5; ++i) a_nodes.push_back(b.add_node("G2:A"));
    const int first_b = b.node_count();
    for (long long i = 0; i < 4 * d1; ++i) {
        const int w = b.add_node("G2:B", i < 2 * d1 + 1 ? 0 : 1);
        for (int a : a_nodes) b.edges.emplace_back(a, w);
    }
    const int last_b = b.node_count() - 1;
    const NamedInstance tree = nonexistence_tree(2);
    const int base3 = b.node_count();
    for (int v = 0; v < tree.game.n(); ++v) b.add_node("G3:tree");
    for (auto [u, v] : tree.game.topology().edges()) b.edges.emplace_back(base3 + u, base3 + v);
    int first_z_root = -1;
    for (int v = 0; v < tree.game.n(); ++v) {
        const long long pad = tree.game.topology().degree(v) == 3 ? 100 * d1 : 10 * d1;
        for (long long i = 0; i < pad; ++i) {
            const int z = b.add_node("G3:Z(" + std::to_string(v) + ")", i < pad / 2 ? 0 : 1);
            if (first_z_root < 0) first_z_root = z;
            b.edges.emplace_back(base3 + v, z);
        }
    }
    b.edges.emplace_back(first_w_pad, first_b);
    b.edges.emplace_back(last_b, first_z_root);
    for (int v : {first_w_pad, first_b, last_b, first_z_root})
        b.labels[static_cast<size_t>(v)] += ":bridge";

    ReductionOutput out{detail::finish_gadget(b, {lambda, x_count + 5}, 2),
                        {},
                        std::move(b.labels),
                        "clique gadget: source graph padded to degree d_1 per node, complete "
                        "bipartite block, and the padded ten-node no-equilibrium tree (pads "
                        "attach to the ten tree nodes only), joined by two stubborn-pad bridges"};
    out.parameters["lambda"] = Rational(lambda);
    out.parameters["d_h"] = Rational(d_h);
    out.parameters["d_1"] = Rational(d1);
    out.parameters["chi_r"] = Rational(2 * d1 + 1, 4 * d1);
    out.parameters["chi_b"] = Rational(2 * d1 - 1, 4 * d1);
    out.parameters["psi_0"] = Rational(5 * d1 - 1, 10 * d1 + 1);
    out.parameters["psi_1"] = Rational(5 * d1 + 1, 10 * d1 + 1);
    return out;
}

// Maps a balanced min-cut question (can X split into equal halves separating
// s from t with at most w crossing edges?) to social-welfare maximization.
// The topology duplicates s and t as s0 and t0 (mirroring their edges), then
// pads every interior node with stubborn green leaves Z(v) up to the maximum
// interior degree d_0. Stubborn reds hold s and s0, stubborn blues hold t and
// t0, and |X|/2 - 1 strategic agents of each color fill the interior. The
// duplication makes every interior node's welfare contribution count its
// same-color source edges twice, giving SW = (2/d_0) * (|Y| - crossing), so a
// cut of weight at most w exists iff some assignment reaches
// xi = (2/d_0) * (|Y| - w).
inline ReductionOutput equal_min_cut_to_game(const SourceGraph& h, int s, int t, int w) {
    Topology source(h.node_count, h.edges);
    const int x_count = source.node_count();
    if (x_count % 2 != 0)
        throw std::invalid_argument("equal_min_cut_to_game requires an even node count");
    if (x_count < 4) throw std::invalid_argument("equal_min_cut_to_game requires at least 4 nodes");
    if (s < 0 || s >= x_count || t < 0 || t >= x_count)
        throw std::invalid_argument("s and t must be source nodes");
    if (s == t) throw std::invalid_argument("equal_min_cut_to_game requires distinct s and t");

    detail::GadgetBuilder b;
    for (int v = 0; v < x_count; ++v)
        b.add_node(v == s ? "X:s" : v == t ? "X:t" : "X", v == s ? 0 : v == t ? 1 : -1);
    const int s0 = b.add_node("s0", 0);
    const int t0 = b.add_node("t0", 1);
    b.edges = source.edges();
    for (int v : source.neighbors(s)) b.edges.emplace_back(v, s0);
    for (int v : source.neighbors(t)) b.edges.emplace_back(v, t0);
    std::vector<int> mirrored_degree(static_cast<size_t>(x_count), 0);
    for (auto [u, v] : b.edges) {
        if (u < x_count) ++mirrored_degree[static_cast<size_t>(u)];
        if (v < x_count) ++mirrored_degree[static_cast<size_t>(v)];
    }
    long long d0 = 0;
    for (int v = 0; v < x_count; ++v)
        if (v != s && v != t) d0 = std::max<long long>(d0, mirrored_degree[static_cast<size_t>(v)]);
    if (d0 == 0)
        throw std::invalid_argument("equal_min_cut_to_game requires an interior node with an edge");
    bool padded = false;
    for (int v = 0; v < x_count; ++v) {
        if (v == s || v == t) continue;
        for (long long i = mirrored_degree[static_cast<size_t>(v)]; i < d0; ++i) {
            b.edges.emplace_back(v, b.add_node("Z(" + std::to_string(v) + ")", 2));
            padded = true;
        }
    }
    const int per_color = x_count / 2 - 1;
    ReductionOutput out{detail::finish_gadget(b, {per_color, per_color}, padded ? 3 : 2),
                        {},
                        std::move(b.labels),
                        "balanced min-cut gadget: s and t duplicated as s0 and t0 with mirrored "
                        "edges, interior nodes padded to degree d_0 by stubborn green leaves"};
    out.parameters["w"] = Rational(w);
    out.parameters["d_0"] = Rational(d0);
    out.parameters["xi"] = Rational(2, d0) * (source.edge_count() - w);
    return out;
}

// Maps a vertex-cover question (does h have a cover of size lambda?) to
// full-exposure existence. The topology is h plus one tracker node Q(u,v) per
// source edge, adjacent to both endpoints; |X| + |Y| - lambda red and lambda
// blue agents, all strategic. Every agent can be exposed iff the blues fit on
// a vertex cover.
inline ReductionOutput vertex_cover_to_game(const SourceGraph& h, int lambda) {
    Topology source(h.node_count, h.edges);
    const int x_count = source.node_count();
    for (int v = 0; v < x_count; ++v)
        if (source.degree(v) == 0)
            throw std::invalid_argument("vertex_cover_to_game requires no isolated vertices");
    if (lambda < 1 || lambda > x_count)
        throw std::invalid_argument("lambda must be between 1 and the source node count");

    detail::GadgetBuilder b;
    for (int v = 0; v < x_count; ++v) b.add_node("X");
    b.edges = source.edges();
    for (auto [u, v] : source.edges()) {
        const int q = b.add_node("Q(" + std::to_string(u) + "," + std::to_string(v) + ")");
        b.edges.emplace_back(u, q);
        b.edges.emplace_back(v, q);
    }
    ReductionOutput out{
        detail::finish_gadget(b, {x_count + source.edge_count() - lambda, lambda}, 2),
        {},
        std::move(b.labels),
        "vertex-cover gadget: one tracker node per source edge, adjacent to both endpoints"};
    out.parameters["lambda"] = Rational(lambda);
    return out;
}

// Exhaustive search for a pattern exposing every strategic agent (degree of
// integration |R|). Returns the lexicographically first such pattern, or
// nullopt if none exists. Guardrailed like the other pattern scans.
inline std::optional<TypePattern> full_exposure_exists(const Game& g,
                                                       const SearchLimits& limits = {}) {
    const std::uint64_t total = count_type_patterns(g);
    detail::enforce_guardrail(total, limits);
    detail::PatternScanContext ctx(g);
    const long long want = static_cast<long long>(g.strategic_agents().size());
    const unsigned threads = std::max(1u, limits.threads);
    std::vector<std::optional<std::pair<std::uint64_t, TypePattern>>> hits(threads);
    detail::run_chunked(total, threads, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
        auto cursor = ctx.make_cursor(
            begin == 0 ? ctx.first_slot_types() : detail::unrank_pattern(ctx.slot_counts(), begin));
        for (std::uint64_t rank = begin; rank < end; ++rank) {
            if (ctx.degree_of_integration_pattern(cursor) == want) {
                hits[chunk].emplace(rank, ctx.to_pattern(cursor));
                return;
            }
            if (rank + 1 < end) ctx.advance(cursor);
        }
    });
    std::optional<std::pair<std::uint64_t, TypePattern>> best;
    for (auto& h : hits)
        if (h && (!best || h->first < best->first)) best = std::move(h);
    if (!best) return std::nullopt;
    return std::move(best->second);
}

}  // namespace schelling
