#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>

#include "schelling/metrics.hpp"

namespace schelling {

// How the next beneficial swap is chosen when several exist.
struct SchedulingPolicy {
    enum class Kind { LexFirst, RandomSeeded, MaxGain };
    Kind kind = Kind::LexFirst;
    std::uint64_t seed = 0;

    static SchedulingPolicy lex_first() { return {Kind::LexFirst, 0}; }
    static SchedulingPolicy random_seeded(std::uint64_t seed) {
        return {Kind::RandomSeeded, seed};
    }
    static SchedulingPolicy max_gain() { return {Kind::MaxGain, 0}; }

    bool deterministic() const { return kind != Kind::RandomSeeded; }
};

struct DynamicsVerdict {
    enum class Kind { ReachedEquilibrium, StepCapExhausted, CycleDetected };
    Kind kind = Kind::ReachedEquilibrium;
    int cycle_period = 0;  // set iff kind == CycleDetected
};

struct DynamicsTrace {
    Assignment initial;
    std::vector<SwapMove> steps;
    Assignment final;
    DynamicsVerdict verdict;
};

namespace detail {

inline std::uint64_t assignment_hash(const std::vector<int>& agent_to_node) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int v : agent_to_node) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return h;
}

// Shared pair-selection core. The engine is only consulted for RandomSeeded.
// Uniform choice goes through engine() % size rather than
// std::uniform_int_distribution, whose output is implementation-defined;
// traces must be byte-identical across standard libraries for a given seed.
inline std::optional<SwapMove> choose_move(const Game& g, const Assignment& a,
                                           const SchedulingPolicy& policy,
                                           std::mt19937_64& engine) {
    const std::vector<int> strategic = g.strategic_agents();
    std::optional<SwapMove> best;
    Rational best_gain(0);
    std::vector<SwapMove> all;
    for (size_t x = 0; x < strategic.size(); ++x) {
        for (size_t y = x + 1; y < strategic.size(); ++y) {
            const int i = strategic[x], j = strategic[y];
            if (g.agent(i).type_index == g.agent(j).type_index) continue;
            SwapMove move = evaluate_swap(g, a, i, j);
            if (!move.beneficial()) continue;
            switch (policy.kind) {
                case SchedulingPolicy::Kind::LexFirst:
                    return move;
                case SchedulingPolicy::Kind::RandomSeeded:
                    all.push_back(move);
                    break;
                case SchedulingPolicy::Kind::MaxGain: {
                    const Rational gain = (move.after_i.value() - move.before_i.value()) +
                                          (move.after_j.value() - move.before_j.value());
                    // Strict > keeps the lexicographically first pair on ties.
                    if (!best || gain > best_gain) {
                        best = move;
                        best_gain = gain;
                    }
                    break;
                }
            }
        }
    }
    if (policy.kind == SchedulingPolicy::Kind::RandomSeeded && !all.empty())
        return all[static_cast<size_t>(engine() % all.size())];
    return best;
}

}  // namespace detail

// One step of the swap dynamics: the chosen beneficial swap, or nullopt at
// equilibrium. For RandomSeeded this uses a fresh engine, so it matches the
// first step of run() with the same policy.
inline std::optional<SwapMove> step(const Game& g, const Assignment& a,
                                    const SchedulingPolicy& policy) {
    detail::require_compatible(g, a);
    std::mt19937_64 engine(policy.seed);
    return detail::choose_move(g, a, policy, engine);
}

// Runs the dynamics for at most max_steps swaps (default: n^2 when negative).
// Deterministic policies get cycle detection: states are hashed, a hash hit
// is confirmed by replaying the recorded moves, and the verdict reports the
// cycle period. Random runs skip it (revisiting a state implies no loop).
inline DynamicsTrace run(const Game& g, const Assignment& start, const SchedulingPolicy& policy,
                         long long max_steps = -1) {
    detail::require_compatible(g, start);
    if (max_steps < 0) max_steps = static_cast<long long>(g.n()) * g.n();

    DynamicsTrace trace{start, {}, start, {}};
    std::mt19937_64 engine(policy.seed);
    Assignment current = start;

    // hash -> indices of states (0 = initial) with that hash.
    std::unordered_map<std::uint64_t, std::vector<long long>> seen;
    auto state_at = [&](long long index) {
        Assignment s = start;
        for (long long t = 0; t < index; ++t)
            s.swap_agents(trace.steps[static_cast<size_t>(t)].agent_i,
                          trace.steps[static_cast<size_t>(t)].agent_j);
        return s;
    };
    if (policy.deterministic()) seen[detail::assignment_hash(start.agent_to_node())].push_back(0);

    for (long long t = 0; t < max_steps; ++t) {
        std::optional<SwapMove> move = detail::choose_move(g, current, policy, engine);
        if (!move) {
            trace.final = current;
            trace.verdict = {DynamicsVerdict::Kind::ReachedEquilibrium, 0};
            return trace;
        }
        current.swap_agents(move->agent_i, move->agent_j);
        trace.steps.push_back(*move);
        if (policy.deterministic()) {
            const long long index = t + 1;
            auto& bucket = seen[detail::assignment_hash(current.agent_to_node())];
            for (long long earlier : bucket) {
                if (state_at(earlier) == current) {
                    trace.final = current;
                    trace.verdict = {DynamicsVerdict::Kind::CycleDetected,
                                     static_cast<int>(index - earlier)};
                    return trace;
                }
            }
            bucket.push_back(index);
        }
    }
    trace.final = current;
    trace.verdict = {DynamicsVerdict::Kind::StepCapExhausted, 0};
    return trace;
}

// Friend-potential value after each prefix of the trace (length steps+1).
inline std::vector<long long> friend_potential_sequence(const Game& g,
                                                        const DynamicsTrace& trace) {
    std::vector<long long> seq;
    Assignment s = trace.initial;
    seq.push_back(friend_potential(g, s));
    for (const SwapMove& move : trace.steps) {
        s.swap_agents(move.agent_i, move.agent_j);
        seq.push_back(friend_potential(g, s));
    }
    return seq;
}

// On a regular, all-strategic game every beneficial swap strictly raises the
// friend potential; checks that along the recorded trace. Throws if the
// precondition fails (the guarantee does not apply there).
inline bool assert_potential_monotone(const Game& g, const DynamicsTrace& trace) {
    if (!g.topology().regular())
        throw std::invalid_argument("potential argument requires a regular topology");
    if (!g.stubborn_agents().empty())
        throw std::invalid_argument("potential argument requires all agents strategic");
    const std::vector<long long> seq = friend_potential_sequence(g, trace);
    for (size_t t = 1; t < seq.size(); ++t)
        if (seq[t] <= seq[t - 1]) return false;
    return true;
}

}  // namespace schelling
