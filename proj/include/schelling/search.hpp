#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include "schelling/metrics.hpp"

namespace schelling {

// A placement of types on nodes, forgetting agent identities within a type.
// Entries at stubborn-held nodes always carry the pinning agent's type; only
// the open slots vary across the enumeration.
struct TypePattern {
    std::vector<int> type_of_node;
    bool operator==(const TypePattern& other) const {
        return type_of_node == other.type_of_node;
    }
};

struct SearchLimits {
    std::uint64_t pattern_cap = 100000000ULL;  // refuse larger scans...
    bool force = false;                        // ...unless explicitly forced
    unsigned threads = 1;
};

class GuardrailError : public std::runtime_error {
public:
    GuardrailError(std::uint64_t count, std::uint64_t cap)
        : std::runtime_error("pattern count " + std::to_string(count) +
                             " exceeds the guardrail cap " + std::to_string(cap) +
                             "; pass force to proceed"),
          count_(count),
          cap_(cap) {}
    std::uint64_t count() const { return count_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t count_;
    std::uint64_t cap_;
};

namespace detail {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSaturated / b) return kSaturated;
    return a * b;
}

// C(n, r) with saturation.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        // result * (n - r + i) / i is integral at each step.
        std::uint64_t numer = n - r + i;
        std::uint64_t g = std::gcd(result, i);
        std::uint64_t res2 = result / g;
        std::uint64_t den = i / g;
        if (numer % den != 0) {
            // den divides res2 * numer overall; fall back to 128-bit.
            unsigned __int128 wide = static_cast<unsigned __int128>(res2) * numer / den;
            if (wide > kSaturated) return kSaturated;
            result = static_cast<std::uint64_t>(wide);
        } else {
            result = saturating_mul(res2, numer / den);
        }
        if (result == kSaturated) return kSaturated;
    }
    return result;
}

// Number of distinct arrangements of a multiset with the given per-type counts.
inline std::uint64_t multinomial(const std::vector<int>& counts) {
    std::uint64_t total = 0, result = 1;
    for (int c : counts) {
        total += static_cast<std::uint64_t>(c);
        result = saturating_mul(result, binomial(total, static_cast<std::uint64_t>(c)));
        if (result == kSaturated) return kSaturated;
    }
    return result;
}

// Lexicographic successor of a multiset permutation. Returns the first index
// whose entry may have changed, or -1 if v was the last permutation. Standard
// next_permutation step, exposed so callers can update derived state
// incrementally from the changed suffix.
inline int next_multiset_permutation(std::vector<int>& v) {
    const int m = static_cast<int>(v.size());
    int i = m - 2;
    while (i >= 0 && v[static_cast<size_t>(i)] >= v[static_cast<size_t>(i + 1)]) --i;
    if (i < 0) return -1;
    int j = m - 1;
    while (v[static_cast<size_t>(j)] <= v[static_cast<size_t>(i)]) --j;
    std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(j)]);
    std::reverse(v.begin() + i + 1, v.end());
    return i;
}

// Slot types (ascending node order) of the pattern with the given rank in
// lexicographic order, for the multiset described by counts.
inline std::vector<int> unrank_pattern(std::vector<int> counts, std::uint64_t rank) {
    const int k = static_cast<int>(counts.size());
    int m = 0;
    for (int c : counts) m += c;
    std::vector<int> slots;
    slots.reserve(static_cast<size_t>(m));
    for (int pos = 0; pos < m; ++pos) {
        for (int t = 0; t < k; ++t) {
            if (counts[static_cast<size_t>(t)] == 0) continue;
            --counts[static_cast<size_t>(t)];
            std::uint64_t completions = multinomial(counts);
            if (rank < completions) {
                slots.push_back(t);
                break;
            }
            rank -= completions;
            ++counts[static_cast<size_t>(t)];
        }
    }
    return slots;
}

// Per-game scaffolding for pattern scans: open slots, degrees, adjacency,
// and the per-node neighbor type counts that make the equilibrium test a
// handful of integer multiplications per candidate pair.
class PatternScanContext {
public:
    explicit PatternScanContext(const Game& g) : game_(g), n_(g.n()), k_(g.k()) {
        slots_ = g.open_nodes();
        base_types_.assign(static_cast<size_t>(n_), -1);
        for (const AgentSpec& a : g.agents())
            if (a.role == Role::Stubborn) base_types_[static_cast<size_t>(*a.fixed_node)] = a.type_index;
        slot_counts_ = g.strategic_type_counts();
        deg_.resize(static_cast<size_t>(n_));
        for (int v = 0; v < n_; ++v) deg_[static_cast<size_t>(v)] = g.topology().degree(v);

        const bool small = n_ <= 4096;
        if (small) {
            words_ = (n_ + 63) / 64;
            adj_bits_.assign(static_cast<size_t>(n_) * static_cast<size_t>(words_), 0);
            for (auto [u, v] : g.topology().edges()) {
                adj_bits_[static_cast<size_t>(u) * words_ + static_cast<size_t>(v / 64)] |=
                    1ULL << (v % 64);
                adj_bits_[static_cast<size_t>(v) * words_ + static_cast<size_t>(u / 64)] |=
                    1ULL << (u % 64);
            }
        }

        is_slot_.assign(static_cast<size_t>(n_), 0);
        for (int v : slots_) is_slot_[static_cast<size_t>(v)] = 1;
        for (size_t x = 0; x < slots_.size(); ++x)
            for (size_t y = x + 1; y < slots_.size(); ++y)
                slot_pairs_.emplace_back(slots_[x], slots_[y]);
    }

    const Game& game() const { return game_; }
    const std::vector<int>& slots() const { return slots_; }
    const std::vector<int>& slot_counts() const { return slot_counts_; }
    std::uint64_t pattern_count() const { return multinomial(slot_counts_); }

    // Lexicographically first slot-type vector.
    std::vector<int> first_slot_types() const {
        std::vector<int> v;
        for (int t = 0; t < k_; ++t)
            v.insert(v.end(), static_cast<size_t>(slot_counts_[static_cast<size_t>(t)]), t);
        return v;
    }

    bool adjacent(int u, int v) const {
        if (!adj_bits_.empty())
            return (adj_bits_[static_cast<size_t>(u) * words_ + static_cast<size_t>(v / 64)] >>
                    (v % 64)) &
                   1ULL;
        return game_.topology().adjacent(u, v);
    }

    // Mutable per-worker state for one scan position.
    struct Cursor {
        std::vector<int> slot_types;   // types on open slots, ascending node order
        std::vector<int> type_of;      // full node -> type vector
        std::vector<int> cnt;          // node*k + t -> neighbors of node with type t
        std::vector<int> scratch;      // previous suffix, for differential updates
    };

    Cursor make_cursor(std::vector<int> slot_types) const {
        Cursor c;
        c.slot_types = std::move(slot_types);
        c.type_of = base_types_;
        for (size_t s = 0; s < slots_.size(); ++s)
            c.type_of[static_cast<size_t>(slots_[s])] = c.slot_types[s];
        c.cnt.assign(static_cast<size_t>(n_) * static_cast<size_t>(k_), 0);
        for (int v = 0; v < n_; ++v)
            for (int w : game_.topology().neighbors(v))
                ++c.cnt[static_cast<size_t>(v) * k_ + static_cast<size_t>(c.type_of[static_cast<size_t>(w)])];
        return c;
    }

    // Advances to the next pattern, keeping type_of and cnt in sync. Returns
    // false when the enumeration is exhausted.
    bool advance(Cursor& c) const {
        const int m = static_cast<int>(c.slot_types.size());
        c.scratch.assign(c.slot_types.begin(), c.slot_types.end());
        const int first = next_multiset_permutation(c.slot_types);
        if (first < 0) return false;
        for (int s = first; s < m; ++s) {
            const int t_new = c.slot_types[static_cast<size_t>(s)];
            const int t_old = c.scratch[static_cast<size_t>(s)];
            if (t_new == t_old) continue;
            const int v = slots_[static_cast<size_t>(s)];
            c.type_of[static_cast<size_t>(v)] = t_new;
            for (int w : game_.topology().neighbors(v)) {
                --c.cnt[static_cast<size_t>(w) * k_ + static_cast<size_t>(t_old)];
                ++c.cnt[static_cast<size_t>(w) * k_ + static_cast<size_t>(t_new)];
            }
        }
        return true;
    }

    // Pattern-level equilibrium test. A pair of open nodes (v,w) with types
    // (a,b) admits a beneficial swap iff both relocated agents strictly gain:
    //   (cnt[w][a] - adj(v,w)) * deg[v] > cnt[v][a] * deg[w]   and
    //   (cnt[v][b] - adj(v,w)) * deg[w] > cnt[w][b] * deg[v].
    bool is_equilibrium_pattern(const Cursor& c) const {
        for (auto [v, w] : slot_pairs_) {
            const int a = c.type_of[static_cast<size_t>(v)];
            const int b = c.type_of[static_cast<size_t>(w)];
            if (a == b) continue;
            const long long av = adjacent(v, w) ? 1 : 0;
            const long long dv = deg_[static_cast<size_t>(v)], dw = deg_[static_cast<size_t>(w)];
            if ((c.cnt[static_cast<size_t>(w) * k_ + static_cast<size_t>(a)] - av) * dv >
                    static_cast<long long>(c.cnt[static_cast<size_t>(v) * k_ + static_cast<size_t>(a)]) * dw &&
                (c.cnt[static_cast<size_t>(v) * k_ + static_cast<size_t>(b)] - av) * dw >
                    static_cast<long long>(c.cnt[static_cast<size_t>(w) * k_ + static_cast<size_t>(b)]) * dv)
                return false;
        }
        return true;
    }

    Rational social_welfare_pattern(const Cursor& c) const {
        Rational total(0);
        for (int v : slots_) {
            const int t = c.type_of[static_cast<size_t>(v)];
            const int d = deg_[static_cast<size_t>(v)];
            if (d > 0)
                total += Rational(c.cnt[static_cast<size_t>(v) * k_ + static_cast<size_t>(t)], d);
        }
        return total;
    }

    long long degree_of_integration_pattern(const Cursor& c) const {
        long long exposed = 0;
        for (int v : slots_) {
            const int t = c.type_of[static_cast<size_t>(v)];
            if (c.cnt[static_cast<size_t>(v) * k_ + static_cast<size_t>(t)] < deg_[static_cast<size_t>(v)])
                ++exposed;
        }
        return exposed;
    }

    Rational metric_pattern(const Cursor& c, MetricKind metric) const {
        if (metric == MetricKind::SocialWelfare) return social_welfare_pattern(c);
        return Rational(degree_of_integration_pattern(c));
    }

    TypePattern to_pattern(const Cursor& c) const { return TypePattern{c.type_of}; }

private:
    const Game& game_;
    int n_;
    int k_;
    std::vector<int> slots_;
    std::vector<int> slot_counts_;
    std::vector<int> base_types_;
    std::vector<int> deg_;
    std::vector<char> is_slot_;
    std::vector<std::pair<int, int>> slot_pairs_;
    std::vector<std::uint64_t> adj_bits_;
    int words_ = 0;
};

// Splits [0, total) into per-thread rank ranges and runs worker(chunk_index,
// begin_rank, end_rank) on each. Falls back to one thread when the pattern
// count saturated (unranking needs exact arithmetic).
template <typename Worker>
void run_chunked(std::uint64_t total, unsigned threads, Worker&& worker) {
    if (total == 0) return;
    unsigned usable = std::max(1u, threads);
    if (total == kSaturated) usable = 1;
    usable = static_cast<unsigned>(std::min<std::uint64_t>(usable, total));
    if (usable == 1) {
        worker(0u, 0ULL, total);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t per = total / usable, extra = total % usable;
    std::uint64_t begin = 0;
    for (unsigned c = 0; c < usable; ++c) {
        const std::uint64_t size = per + (c < extra ? 1 : 0);
        pool.emplace_back(worker, c, begin, begin + size);
        begin += size;
    }
    for (auto& t : pool) t.join();
}

inline void enforce_guardrail(std::uint64_t count, const SearchLimits& limits) {
    if (!limits.force && count > limits.pattern_cap) throw GuardrailError(count, limits.pattern_cap);
}

}  // namespace detail

// Number of distinct type patterns (multiset permutations of strategic types
// over open slots); saturates at 2^64-1.
inline std::uint64_t count_type_patterns(const Game& g) {
    return detail::multinomial(g.strategic_type_counts());
}

// Streams every type pattern in lexicographic order of the slot-type vector
// (open slots read in ascending node order). Single-threaded; the search
// operations below parallelize internally instead.
inline void enumerate_type_patterns(const Game& g,
                                    const std::function<void(const TypePattern&)>& visit) {
    detail::PatternScanContext ctx(g);
    auto cursor = ctx.make_cursor(ctx.first_slot_types());
    do {
        visit(ctx.to_pattern(cursor));
    } while (ctx.advance(cursor));
}

// Materializes a pattern as a concrete assignment: within each type,
// strategic agents in ascending id order take that type's open nodes in
// ascending node order; stubborn agents sit at their pinned nodes.
inline Assignment assignment_from_pattern(const Game& g, const TypePattern& pattern) {
    if (static_cast<int>(pattern.type_of_node.size()) != g.n())
        throw std::invalid_argument("pattern size does not match game");
    std::vector<std::vector<int>> nodes_by_type(static_cast<size_t>(g.k()));
    for (int v : g.open_nodes()) {
        const int t = pattern.type_of_node[static_cast<size_t>(v)];
        if (t < 0 || t >= g.k()) throw std::invalid_argument("pattern contains a bad type index");
        nodes_by_type[static_cast<size_t>(t)].push_back(v);
    }
    std::vector<size_t> next(static_cast<size_t>(g.k()), 0);
    std::vector<int> agent_to_node(static_cast<size_t>(g.agent_count()), -1);
    for (const AgentSpec& a : g.agents()) {
        if (a.role == Role::Stubborn) {
            agent_to_node[static_cast<size_t>(a.agent_id)] = *a.fixed_node;
            continue;
        }
        auto& pool = nodes_by_type[static_cast<size_t>(a.type_index)];
        auto& cursor = next[static_cast<size_t>(a.type_index)];
        if (cursor >= pool.size())
            throw std::invalid_argument("pattern type multiset does not match strategic agents");
        agent_to_node[static_cast<size_t>(a.agent_id)] = pool[cursor++];
    }
    for (int t = 0; t < g.k(); ++t)
        if (next[static_cast<size_t>(t)] != nodes_by_type[static_cast<size_t>(t)].size())
            throw std::invalid_argument("pattern type multiset does not match strategic agents");
    return Assignment(agent_to_node);
}

// All equilibrium patterns, in enumeration order. Guardrailed by
// limits.pattern_cap; parallel chunks merge deterministically (chunks are
// contiguous rank ranges, concatenated in order).
inline std::vector<TypePattern> enumerate_equilibria(const Game& g,
                                                     const SearchLimits& limits = {}) {
    detail::PatternScanContext ctx(g);
    const std::uint64_t total = ctx.pattern_count();
    detail::enforce_guardrail(total, limits);
    const unsigned threads = std::max(1u, limits.threads);
    std::vector<std::vector<TypePattern>> found(
        static_cast<size_t>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total, 1))));
    detail::run_chunked(total, threads, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
        auto cursor = ctx.make_cursor(
            begin == 0 ? ctx.first_slot_types() : detail::unrank_pattern(ctx.slot_counts(), begin));
        for (std::uint64_t r = begin; r < end; ++r) {
            if (ctx.is_equilibrium_pattern(cursor)) found[chunk].push_back(ctx.to_pattern(cursor));
            if (r + 1 < end) ctx.advance(cursor);
        }
    });
    std::vector<TypePattern> result;
    for (auto& chunk : found)
        for (auto& p : chunk) result.push_back(std::move(p));
    return result;
}

struct OptimalResult {
    TypePattern pattern;
    Rational value;
};

// Metric-maximizing pattern; ties resolve to the first in enumeration order.
inline OptimalResult optimal_assignment(const Game& g, MetricKind metric,
                                        const SearchLimits& limits = {}) {
    detail::PatternScanContext ctx(g);
    const std::uint64_t total = ctx.pattern_count();
    detail::enforce_guardrail(total, limits);
    const unsigned threads = std::max(1u, limits.threads);

    struct ChunkBest {
        bool any = false;
        Rational value;
        std::uint64_t rank = 0;
        TypePattern pattern;
    };
    std::vector<ChunkBest> best(
        static_cast<size_t>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total, 1))));
    detail::run_chunked(total, threads, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
        auto cursor = ctx.make_cursor(
            begin == 0 ? ctx.first_slot_types() : detail::unrank_pattern(ctx.slot_counts(), begin));
        ChunkBest& local = best[chunk];
        for (std::uint64_t r = begin; r < end; ++r) {
            const Rational value = ctx.metric_pattern(cursor, metric);
            if (!local.any || value > local.value) {
                local.any = true;
                local.value = value;
                local.rank = r;
                local.pattern = ctx.to_pattern(cursor);
            }
            if (r + 1 < end) ctx.advance(cursor);
        }
    });

    const ChunkBest* overall = nullptr;
    for (const ChunkBest& b : best) {
        if (!b.any) continue;
        // Strictly-better wins; equal values keep the lowest rank, so the
        // merged answer matches a sequential first-found scan.
        if (!overall || b.value > overall->value ||
            (b.value == overall->value && b.rank < overall->rank))
            overall = &b;
    }
    if (!overall) throw std::logic_error("no pattern exists");
    return OptimalResult{overall->pattern, overall->value};
}

enum class RatioKind { PoA, PoS };

struct RatioValue {
    enum class Kind { Finite, Unbounded, NoEquilibrium };
    Kind kind = Kind::Finite;
    Rational value;  // meaningful iff kind == Finite
};

struct RatioReport {
    MetricKind metric = MetricKind::SocialWelfare;
    RatioKind kind = RatioKind::PoA;
    RatioValue value;
    Rational optimum_value;
    TypePattern optimum_pattern;
    std::uint64_t equilibrium_count = 0;
    // Extreme equilibrium for the requested ratio: the worst one for PoA,
    // the best one for PoS. Unset when no equilibrium exists.
    std::optional<Rational> equilibrium_value;
    std::optional<TypePattern> equilibrium_pattern;
};

// Empirical price of anarchy / stability of one instance: optimum over all
// patterns divided by the extreme equilibrium value.
inline RatioReport price_ratio(const Game& g, MetricKind metric, RatioKind kind,
                               const SearchLimits& limits = {}) {
    detail::PatternScanContext ctx(g);
    const std::uint64_t total = ctx.pattern_count();
    detail::enforce_guardrail(total, limits);
    const unsigned threads = std::max(1u, limits.threads);

    struct ChunkAcc {
        bool any = false;
        Rational opt_value;
        std::uint64_t opt_rank = 0;
        TypePattern opt_pattern;
        std::uint64_t eq_count = 0;
        bool eq_any = false;
        Rational eq_min, eq_max;
        std::uint64_t eq_min_rank = 0, eq_max_rank = 0;
        TypePattern eq_min_pattern, eq_max_pattern;
    };
    std::vector<ChunkAcc> acc(
        static_cast<size_t>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total, 1))));
    detail::run_chunked(total, threads, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
        auto cursor = ctx.make_cursor(
            begin == 0 ? ctx.first_slot_types() : detail::unrank_pattern(ctx.slot_counts(), begin));
        ChunkAcc& local = acc[chunk];
        for (std::uint64_t r = begin; r < end; ++r) {
            const Rational value = ctx.metric_pattern(cursor, metric);
            if (!local.any || value > local.opt_value) {
                local.any = true;
                local.opt_value = value;
                local.opt_rank = r;
                local.opt_pattern = ctx.to_pattern(cursor);
            }
            if (ctx.is_equilibrium_pattern(cursor)) {
                ++local.eq_count;
                if (!local.eq_any || value < local.eq_min) {
                    local.eq_min = value;
                    local.eq_min_rank = r;
                    local.eq_min_pattern = ctx.to_pattern(cursor);
                }
                if (!local.eq_any || value > local.eq_max) {
                    local.eq_max = value;
                    local.eq_max_rank = r;
                    local.eq_max_pattern = ctx.to_pattern(cursor);
                }
                local.eq_any = true;
            }
            if (r + 1 < end) ctx.advance(cursor);
        }
    });

    ChunkAcc merged;
    for (ChunkAcc& c : acc) {
        if (!c.any) continue;
        if (!merged.any || c.opt_value > merged.opt_value ||
            (c.opt_value == merged.opt_value && c.opt_rank < merged.opt_rank)) {
            merged.any = true;
            merged.opt_value = c.opt_value;
            merged.opt_rank = c.opt_rank;
            merged.opt_pattern = std::move(c.opt_pattern);
        }
        merged.eq_count += c.eq_count;
        if (c.eq_any) {
            if (!merged.eq_any || c.eq_min < merged.eq_min ||
                (c.eq_min == merged.eq_min && c.eq_min_rank < merged.eq_min_rank)) {
                merged.eq_min = c.eq_min;
                merged.eq_min_rank = c.eq_min_rank;
                merged.eq_min_pattern = std::move(c.eq_min_pattern);
            }
            if (!merged.eq_any || c.eq_max > merged.eq_max ||
                (c.eq_max == merged.eq_max && c.eq_max_rank < merged.eq_max_rank)) {
                merged.eq_max = c.eq_max;
                merged.eq_max_rank = c.eq_max_rank;
                merged.eq_max_pattern = std::move(c.eq_max_pattern);
            }
            merged.eq_any = true;
        }
    }
    if (!merged.any) throw std::logic_error("no pattern exists");

    RatioReport report;
    report.metric = metric;
    report.kind = kind;
    report.optimum_value = merged.opt_value;
    report.optimum_pattern = merged.opt_pattern;
    report.equilibrium_count = merged.eq_count;
    if (!merged.eq_any) {
        report.value = {RatioValue::Kind::NoEquilibrium, Rational(0)};
        return report;
    }
    const Rational extreme = (kind == RatioKind::PoA) ? merged.eq_min : merged.eq_max;
    report.equilibrium_value = extreme;
    report.equilibrium_pattern =
        (kind == RatioKind::PoA) ? merged.eq_min_pattern : merged.eq_max_pattern;
    if (extreme == Rational(0)) {
        // Optimum 0 forces every value to 0 (degenerate instance): ratio 1.
        report.value = merged.opt_value == Rational(0)
                           ? RatioValue{RatioValue::Kind::Finite, Rational(1)}
                           : RatioValue{RatioValue::Kind::Unbounded, Rational(0)};
    } else {
        report.value = {RatioValue::Kind::Finite, merged.opt_value / extreme};
    }
    return report;
}

}  // namespace schelling
