#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schelling {

// Undirected simple graph on nodes 0..n-1. Construction rejects self-loops,
// duplicate edges and out-of-range endpoints; connectivity is deliberately
// not required here (validation reports it at the game level, and some
// constructions legitimately produce disconnected boards).
class Topology {
public:
    Topology(int node_count, std::vector<std::pair<int, int>> edge_list)
        : node_count_(node_count), adjacency_(static_cast<size_t>(std::max(node_count, 0))) {
        if (node_count < 0) throw std::invalid_argument("node count must be nonnegative");
        edges_.reserve(edge_list.size());
        for (auto [u, v] : edge_list) {
            if (u < 0 || u >= node_count || v < 0 || v >= node_count)
                throw std::invalid_argument("edge endpoint out of range: {" + std::to_string(u) +
                                            "," + std::to_string(v) + "}");
            if (u == v)
                throw std::invalid_argument("self-loop at node " + std::to_string(u));
            if (u > v) std::swap(u, v);
            edges_.emplace_back(u, v);
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("duplicate edge");
        for (auto [u, v] : edges_) {
            adjacency_[static_cast<size_t>(u)].push_back(v);
            adjacency_[static_cast<size_t>(v)].push_back(u);
        }
        for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
    }

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // Canonical edge list: each edge as (u,v) with u<v, sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    const std::vector<int>& neighbors(int node) const {
        check_node(node);
        return adjacency_[static_cast<size_t>(node)];
    }

    int degree(int node) const {
        check_node(node);
        return static_cast<int>(adjacency_[static_cast<size_t>(node)].size());
    }

    bool adjacent(int u, int v) const {
        check_node(u);
        check_node(v);
        const auto& nbrs = adjacency_[static_cast<size_t>(u)];
        return std::binary_search(nbrs.begin(), nbrs.end(), v);
    }

    bool connected() const {
        if (node_count_ <= 1) return true;
        std::vector<char> seen(static_cast<size_t>(node_count_), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adjacency_[static_cast<size_t>(v)]) {
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        return reached == node_count_;
    }

    // True iff every node has the same degree; writes that degree if asked.
    bool regular(int* common_degree = nullptr) const {
        if (node_count_ == 0) return true;
        int d = degree(0);
        for (int v = 1; v < node_count_; ++v)
            if (degree(v) != d) return false;
        if (common_degree) *common_degree = d;
        return true;
    }

private:
    void check_node(int node) const {
        if (node < 0 || node >= node_count_)
            throw std::out_of_range("node " + std::to_string(node) + " out of range");
    }

    int node_count_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
};

}  // namespace schelling
