#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "schelling/instances.hpp"
#include "schelling/line_placement.hpp"
#include "schelling/metrics.hpp"
#include "schelling/search.hpp"

using namespace schelling;

namespace {

std::vector<int> block_sizes(const std::vector<Block>& blocks) {
    std::vector<int> sizes;
    for (const Block& b : blocks) sizes.push_back(b.size);
    return sizes;
}

// Number of non-dominant-type blocks in the greedy sequence.
int non_dominant_blocks(const std::vector<int>& counts) {
    int n = 0, dominant = -1;
    for (int c : counts) n += c;
    for (size_t t = 0; t < counts.size(); ++t)
        if (2 * counts[t] > n) dominant = static_cast<int>(t);
    int lambda = 0;
    for (const Block& b : greedy_block_sequence(counts))
        if (b.type_index != dominant) ++lambda;
    return lambda;
}

}  // namespace

TEST_CASE("partition into blocks of two and three") {
    CHECK(block_sizes(partition_blocks({5})[0]) == std::vector<int>{2, 3});
    CHECK(block_sizes(partition_blocks({4})[0]) == std::vector<int>{2, 2});
    CHECK(block_sizes(partition_blocks({2})[0]) == std::vector<int>{2});
    CHECK(block_sizes(partition_blocks({3})[0]) == std::vector<int>{3});
    CHECK(block_sizes(partition_blocks({9})[0]) == std::vector<int>{2, 2, 2, 3});
    CHECK_THROWS_AS(partition_blocks({4, 1}), std::invalid_argument);
}

TEST_CASE("greedy placement on the reference counts") {
    SECTION("counts (6,3)") {
        const Game g = line_game({6, 3}).game;
        const Assignment a = greedy_place({6, 3});
        REQUIRE(validate_assignment(g, a).ok());
        CHECK(is_equilibrium(g, a).equilibrium);
        CHECK(degree_of_integration(g, a) == 4);
        // Node-level layout: two reds, the blue triple, then the red tail.
        std::vector<int> types;
        for (int v = 0; v < g.n(); ++v)
            types.push_back(g.agent(a.agent_at(v)).type_index);
        CHECK(types == std::vector<int>{0, 0, 1, 1, 1, 0, 0, 0, 0});
        // 4 is also the best any equilibrium manages here.
        const RatioReport pos = price_ratio(g, MetricKind::DegreeOfIntegration, RatioKind::PoS);
        CHECK(pos.optimum_value == Rational(9));
        CHECK(*pos.equilibrium_value == Rational(4));
    }
    SECTION("counts (4,2)") {
        const Game g = line_game({4, 2}).game;
        const Assignment a = greedy_place({4, 2});
        CHECK(is_equilibrium(g, a).equilibrium);
        CHECK(degree_of_integration(g, a) == 4);
        CHECK(optimal_assignment(g, MetricKind::DegreeOfIntegration).value == Rational(6));
    }
    SECTION("counts (2,2)") {
        const Game g = line_game({2, 2}).game;
        const Assignment a = greedy_place({2, 2});
        CHECK(is_equilibrium(g, a).equilibrium);
        CHECK(degree_of_integration(g, a) == 2);
    }
}

TEST_CASE("greedy placement is always an equilibrium") {
    std::mt19937_64 engine(707);
    for (int trial = 0; trial < 120; ++trial) {
        const int k = 2 + static_cast<int>(engine() % 3);
        std::vector<int> counts;
        for (int t = 0; t < k; ++t) counts.push_back(2 + static_cast<int>(engine() % 6));
        const Game g = line_game(counts).game;
        const Assignment a = greedy_place(counts);
        INFO("counts " << Catch::Detail::stringify(counts));
        REQUIRE(validate_assignment(g, a).ok());
        CHECK(is_equilibrium(g, a).equilibrium);
    }
}

TEST_CASE("without a dominant type adjacent blocks differ and few agents hide") {
    std::mt19937_64 engine(708);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 80; ++trial) {
        const int k = 2 + static_cast<int>(engine() % 3);
        std::vector<int> counts;
        int n = 0, max_count = 0;
        for (int t = 0; t < k; ++t) {
            counts.push_back(2 + static_cast<int>(engine() % 6));
            n += counts.back();
            max_count = std::max(max_count, counts.back());
        }
        if (2 * max_count > n) continue;
        ++tested;
        const std::vector<Block> sequence = greedy_block_sequence(counts);
        for (size_t b = 1; b < sequence.size(); ++b)
            CHECK(sequence[b - 1].type_index != sequence[b].type_index);
        const int bound = unexposed_bound(counts);
        CHECK(bound == k + 2);
        const Game g = line_game(counts).game;
        const int unexposed = g.n() - degree_of_integration(g, greedy_place(counts));
        CHECK(unexposed <= bound);
        // Instance-level consequence: the stability price for integration is
        // at most n / (n - k - 2).
        if (static_cast<std::uint64_t>(1) << std::min(n, 40) >= count_type_patterns(g)) {
            const RatioReport pos =
                price_ratio(g, MetricKind::DegreeOfIntegration, RatioKind::PoS);
            if (pos.value.kind == RatioValue::Kind::Finite)
                CHECK(pos.value.value <= Rational(n, n - k - 2));
        }
    }
    CHECK(tested >= 50);
}

TEST_CASE("unexposed bound examples and the dominant-type guard") {
    CHECK(unexposed_bound({4, 4, 4}) == 5);
    CHECK(unexposed_bound({2, 2}) == 4);
    CHECK(unexposed_bound({5, 5}) == 4);
    CHECK_THROWS_AS(unexposed_bound({6, 3}), DominantTypeError);
    CHECK_THROWS_AS(unexposed_bound({9, 2, 2}), DominantTypeError);
}

TEST_CASE("dominant-type exposure guarantee") {
    // The alternation exposes four agents per non-dominant block, minus two
    // when the line ends on a non-dominant block: counts (3,2) realize the
    // minimum with a single block and two exposed agents.
    {
        const Game g = line_game({3, 2}).game;
        const int lambda = non_dominant_blocks({3, 2});
        CHECK(lambda == 1);
        CHECK(degree_of_integration(g, greedy_place({3, 2})) == 4 * lambda - 2);
    }
    std::mt19937_64 engine(709);
    int tested = 0;
    for (int trial = 0; trial < 300 && tested < 80; ++trial) {
        const int k = 2 + static_cast<int>(engine() % 3);
        std::vector<int> counts;
        for (int t = 1; t < k; ++t) counts.push_back(2 + static_cast<int>(engine() % 4));
        int others = 0;
        for (int c : counts) others += c;
        counts.insert(counts.begin(), others + 1 + static_cast<int>(engine() % 6));
        if (counts[0] < 2) continue;
        ++tested;
        const Game g = line_game(counts).game;
        const int lambda = non_dominant_blocks(counts);
        const int di = degree_of_integration(g, greedy_place(counts));
        INFO("counts " << Catch::Detail::stringify(counts));
        CHECK(di >= 4 * lambda - 2);
        const std::vector<Block> sequence = greedy_block_sequence(counts);
        if (sequence.back().type_index == 0) CHECK(di >= 4 * lambda);
    }
    CHECK(tested >= 60);
}

TEST_CASE("the 4s/2s family settles at integration ratio 3/2") {
    for (int s : {1, 2, 3}) {
        const std::vector<int> counts{4 * s, 2 * s};
        const Game g = line_game(counts).game;
        const Assignment a = greedy_place(counts);
        CHECK(is_equilibrium(g, a).equilibrium);
        CHECK(degree_of_integration(g, a) == 4 * s);
        const OptimalResult opt = optimal_assignment(g, MetricKind::DegreeOfIntegration);
        CHECK(opt.value == Rational(6 * s));
        CHECK(opt.value / Rational(degree_of_integration(g, a)) == Rational(3, 2));
    }
}
