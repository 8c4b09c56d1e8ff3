#pragma once

#include "schelling/game.hpp"

namespace schelling {

// A run of same-type agents placed contiguously on the line.
struct Block {
    int type_index = 0;
    int size = 2;  // 2 or 3
};

class DominantTypeError : public std::invalid_argument {
public:
    explicit DominantTypeError(const std::string& what) : std::invalid_argument(what) {}
};

// Splits each type into blocks of size 2, plus one block of size 3 iff the
// count is odd (listed last, so alternation spends the small blocks first).
inline std::vector<std::vector<Block>> partition_blocks(const std::vector<int>& counts) {
    std::vector<std::vector<Block>> blocks(counts.size());
    for (size_t t = 0; t < counts.size(); ++t) {
        int c = counts[t];
        if (c < 2)
            throw std::invalid_argument("a type with fewer than two agents cannot form blocks");
        const bool odd = c % 2 != 0;
        if (odd) c -= 3;
        for (; c > 0; c -= 2) blocks[t].push_back({static_cast<int>(t), 2});
        if (odd) blocks[t].push_back({static_cast<int>(t), 3});
    }
    return blocks;
}

// Left-to-right greedy block order: start with the largest type, then always
// the largest remaining type different from the previous block (ties to the
// lowest type index); once every other type is exhausted, the rest of the
// final type follows as one run.
inline std::vector<Block> greedy_block_sequence(const std::vector<int>& counts) {
    std::vector<std::vector<Block>> blocks = partition_blocks(counts);
    const int k = static_cast<int>(counts.size());
    std::vector<int> remaining = counts;
    std::vector<size_t> cursor(counts.size(), 0);
    std::vector<Block> sequence;
    int last = -1;
    for (;;) {
        int pick = -1;
        for (int t = 0; t < k; ++t) {
            if (t == last || cursor[static_cast<size_t>(t)] >= blocks[static_cast<size_t>(t)].size())
                continue;
            if (pick < 0 || remaining[static_cast<size_t>(t)] > remaining[static_cast<size_t>(pick)])
                pick = t;
        }
        if (pick < 0) {
            // Everyone else is spent; lay down whatever the last type still has.
            if (last >= 0)
                while (cursor[static_cast<size_t>(last)] < blocks[static_cast<size_t>(last)].size())
                    sequence.push_back(blocks[static_cast<size_t>(last)]
                                             [cursor[static_cast<size_t>(last)]++]);
            return sequence;
        }
        const Block block = blocks[static_cast<size_t>(pick)][cursor[static_cast<size_t>(pick)]++];
        sequence.push_back(block);
        remaining[static_cast<size_t>(pick)] -= block.size;
        last = pick;
    }
}

// Materializes the greedy block order as an assignment on line_game(counts):
// within each type, agents in ascending id order fill that type's nodes from
// the left.
inline Assignment greedy_place(const std::vector<int>& counts) {
    const std::vector<Block> sequence = greedy_block_sequence(counts);
    int n = 0;
    for (int c : counts) n += c;
    std::vector<int> type_at_node;
    type_at_node.reserve(static_cast<size_t>(n));
    for (const Block& b : sequence)
        type_at_node.insert(type_at_node.end(), static_cast<size_t>(b.size), b.type_index);

    std::vector<int> first_id(counts.size(), 0);
    for (size_t t = 1; t < counts.size(); ++t)
        first_id[t] = first_id[t - 1] + counts[t - 1];
    std::vector<int> agent_to_node(static_cast<size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        agent_to_node[static_cast<size_t>(first_id[static_cast<size_t>(type_at_node[static_cast<size_t>(v)])]++)] = v;
    return Assignment(std::move(agent_to_node));
}

// The k+2 cap on unexposed agents under the greedy placement (two endpoints
// plus at most one size-3 block middle per type). Only applies when no type
// is dominant (more than half of all agents); checked against the actual
// placement before returning.
inline int unexposed_bound(const std::vector<int>& counts) {
    int n = 0;
    for (int c : counts) n += c;
    for (size_t t = 0; t < counts.size(); ++t)
        if (2 * counts[t] > n)
            throw DominantTypeError("type " + std::to_string(t) +
                                    " is dominant; the k+2 bound does not apply");
    const int bound = static_cast<int>(counts.size()) + 2;

    const std::vector<Block> sequence = greedy_block_sequence(counts);
    std::vector<int> type_at_node;
    for (const Block& b : sequence)
        type_at_node.insert(type_at_node.end(), static_cast<size_t>(b.size), b.type_index);
    int unexposed = 0;
    for (int v = 0; v < n; ++v) {
        const bool left_safe = v == 0 || type_at_node[static_cast<size_t>(v - 1)] ==
                                             type_at_node[static_cast<size_t>(v)];
        const bool right_safe = v == n - 1 || type_at_node[static_cast<size_t>(v + 1)] ==
                                                  type_at_node[static_cast<size_t>(v)];
        if (left_safe && right_safe) ++unexposed;
    }
    if (unexposed > bound)
        throw std::logic_error("greedy placement exceeded the k+2 unexposed bound");
    return bound;
}

}  // namespace schelling
