#include <catch2/catch_amalgamated.hpp>

#include "schelling/instances.hpp"
#include "schelling/search.hpp"
#include "schelling/testbeds.hpp"

using namespace schelling;

namespace {

std::vector<int> slot_types_of(const Game& g, const TypePattern& p) {
    std::vector<int> v;
    for (int node : g.open_nodes()) v.push_back(p.type_of_node[static_cast<size_t>(node)]);
    return v;
}

// Reference implementation: filter the full enumeration through the
// assignment-level equilibrium test.
std::vector<TypePattern> naive_equilibria(const Game& g) {
    std::vector<TypePattern> result;
    enumerate_type_patterns(g, [&](const TypePattern& p) {
        if (is_equilibrium(g, assignment_from_pattern(g, p)).equilibrium) result.push_back(p);
    });
    return result;
}

}  // namespace

TEST_CASE("pattern counting") {
    CHECK(count_type_patterns(nonexistence_tree(2).game) == 252);
    CHECK(count_type_patterns(clique_pendant(9, false).game) == 48620);
    CHECK(count_type_patterns(cycle_pendant(3).game) == 90);
    CHECK(count_type_patterns(pos_tree(3).game) == 3432);
    // Stubborn agents do not contribute pattern choices.
    CHECK(count_type_patterns(stubborn_star(2, {{2, 1}}).game) == 3);
}

TEST_CASE("enumeration is lexicographic, complete, and duplicate-free") {
    Game g = testbeds::all_strategic_game(testbeds::path_topology(6), {3, 2, 1});
    std::vector<std::vector<int>> seen;
    enumerate_type_patterns(g, [&](const TypePattern& p) {
        seen.push_back(slot_types_of(g, p));
    });
    CHECK(seen.size() == count_type_patterns(g));
    CHECK(seen.front() == std::vector<int>{0, 0, 0, 1, 1, 2});
    for (size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
}

TEST_CASE("patterns pin stubborn types in place") {
    std::mt19937_64 engine(77);
    Game g = testbeds::random_game(testbeds::random_connected_topology(8, 3, engine), 2, 6,
                                   engine);
    std::vector<int> stubborn_type(static_cast<size_t>(g.n()), -1);
    for (const AgentSpec& a : g.agents())
        if (a.role == Role::Stubborn)
            stubborn_type[static_cast<size_t>(*a.fixed_node)] = a.type_index;
    std::uint64_t visits = 0;
    enumerate_type_patterns(g, [&](const TypePattern& p) {
        ++visits;
        for (int v = 0; v < g.n(); ++v)
            if (stubborn_type[static_cast<size_t>(v)] >= 0)
                CHECK(p.type_of_node[static_cast<size_t>(v)] ==
                      stubborn_type[static_cast<size_t>(v)]);
    });
    CHECK(visits == count_type_patterns(g));
}

TEST_CASE("unranking agrees with sequential enumeration") {
    Game g = testbeds::all_strategic_game(testbeds::path_topology(7), {3, 2, 2});
    std::vector<std::vector<int>> seen;
    enumerate_type_patterns(g, [&](const TypePattern& p) {
        seen.push_back(slot_types_of(g, p));
    });
    const std::vector<int> counts = g.strategic_type_counts();
    for (std::uint64_t r = 0; r < seen.size(); ++r)
        CHECK(detail::unrank_pattern(counts, r) == seen[static_cast<size_t>(r)]);
}

TEST_CASE("fast equilibrium scan matches the assignment-level test") {
    std::mt19937_64 engine(505);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 5 + static_cast<int>(engine() % 5);
        const int k = 2 + static_cast<int>(engine() % 2);
        Game g = testbeds::random_game(testbeds::random_connected_topology(n, 2, engine), k,
                                       trial % 3 == 0 ? 4 : 0, engine);
        const std::vector<TypePattern> fast = enumerate_equilibria(g);
        const std::vector<TypePattern> naive = naive_equilibria(g);
        REQUIRE(fast.size() == naive.size());
        for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == naive[i]);
    }
}

TEST_CASE("equilibrium counts on the named instances") {
    CHECK(enumerate_equilibria(nonexistence_tree(2).game).empty());
    CHECK(enumerate_equilibria(clique_pendant(9, false).game).size() == 20);
    CHECK(enumerate_equilibria(cycle_pendant(3).game).size() == 18);
    CHECK(enumerate_equilibria(pos_tree(3).game).size() == 40);
    CHECK(enumerate_equilibria(spider_tree(2, 4).game).size() == 2);
    CHECK(enumerate_equilibria(line_game({6, 3}).game).size() == 5);
    // On the two-blue star every pattern is an equilibrium.
    CHECK(enumerate_equilibria(poa_star(10).game).size() == 45);
}

TEST_CASE("thread count never changes results") {
    Game g = pos_tree(3).game;
    const std::vector<TypePattern> sequential = enumerate_equilibria(g);
    for (unsigned threads : {2u, 3u, 7u}) {
        SearchLimits limits;
        limits.threads = threads;
        const std::vector<TypePattern> parallel = enumerate_equilibria(g, limits);
        REQUIRE(parallel.size() == sequential.size());
        for (size_t i = 0; i < parallel.size(); ++i) CHECK(parallel[i] == sequential[i]);

        const OptimalResult seq_opt = optimal_assignment(g, MetricKind::SocialWelfare);
        const OptimalResult par_opt = optimal_assignment(g, MetricKind::SocialWelfare, limits);
        CHECK(seq_opt.value == par_opt.value);
        CHECK(seq_opt.pattern == par_opt.pattern);

        const RatioReport seq_ratio = price_ratio(g, MetricKind::SocialWelfare, RatioKind::PoS);
        const RatioReport par_ratio =
            price_ratio(g, MetricKind::SocialWelfare, RatioKind::PoS, limits);
        CHECK(seq_ratio.value.kind == par_ratio.value.kind);
        CHECK(seq_ratio.value.value == par_ratio.value.value);
        CHECK(seq_ratio.optimum_pattern == par_ratio.optimum_pattern);
        CHECK(seq_ratio.equilibrium_count == par_ratio.equilibrium_count);
        REQUIRE(par_ratio.equilibrium_pattern.has_value());
        CHECK(*seq_ratio.equilibrium_pattern == *par_ratio.equilibrium_pattern);
    }
}

TEST_CASE("guardrail refuses oversized scans unless forced") {
    Game g = clique_pendant(9, false).game;  // 48620 patterns
    SearchLimits tight;
    tight.pattern_cap = 1000;
    CHECK_THROWS_AS(enumerate_equilibria(g, tight), GuardrailError);
    CHECK_THROWS_AS(optimal_assignment(g, MetricKind::SocialWelfare, tight), GuardrailError);
    CHECK_THROWS_AS(price_ratio(g, MetricKind::SocialWelfare, RatioKind::PoA, tight),
                    GuardrailError);
    try {
        enumerate_equilibria(g, tight);
        FAIL("expected guardrail");
    } catch (const GuardrailError& e) {
        CHECK(e.count() == 48620);
        CHECK(e.cap() == 1000);
    }
    tight.force = true;
    CHECK(enumerate_equilibria(g, tight).size() == 20);
}

TEST_CASE("assignment_from_pattern round trip and validation") {
    Game g = stubborn_star(2, {{2, 1}}).game;
    enumerate_type_patterns(g, [&](const TypePattern& p) {
        const Assignment a = assignment_from_pattern(g, p);
        CHECK(validate_assignment(g, a).ok());
        for (int v = 0; v < g.n(); ++v)
            CHECK(g.agent(a.agent_at(v)).type_index == p.type_of_node[static_cast<size_t>(v)]);
    });
    TypePattern wrong{{0, 0, 0, 0, 0}};
    CHECK_THROWS_AS(assignment_from_pattern(g, wrong), std::invalid_argument);
    TypePattern short_pattern{{0, 1}};
    CHECK_THROWS_AS(assignment_from_pattern(g, short_pattern), std::invalid_argument);
}

TEST_CASE("optimal assignment breaks ties toward the first pattern") {
    Game g = testbeds::all_strategic_game(testbeds::cycle_topology(4), {2, 2});
    const OptimalResult opt = optimal_assignment(g, MetricKind::SocialWelfare);
    CHECK(opt.value == Rational(2));
    CHECK(opt.pattern.type_of_node == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("price ratios on the named instances") {
    const RatioReport star_poa =
        price_ratio(poa_star(10).game, MetricKind::SocialWelfare, RatioKind::PoA);
    REQUIRE(star_poa.value.kind == RatioValue::Kind::Finite);
    CHECK(star_poa.value.value == Rational(7));
    const RatioReport star_pos =
        price_ratio(poa_star(10).game, MetricKind::SocialWelfare, RatioKind::PoS);
    REQUIRE(star_pos.value.kind == RatioValue::Kind::Finite);
    CHECK(star_pos.value.value == Rational(1));

    const RatioReport pendant_poa =
        price_ratio(clique_pendant(9, false).game, MetricKind::SocialWelfare, RatioKind::PoA);
    REQUIRE(pendant_poa.value.kind == RatioValue::Kind::Finite);
    CHECK(pendant_poa.value.value == Rational(667, 324));
    CHECK(pendant_poa.optimum_value == Rational(667, 40));
    CHECK(*pendant_poa.equilibrium_value == Rational(81, 10));
    CHECK(pendant_poa.equilibrium_count == 20);

    const RatioReport cycle_poa =
        price_ratio(cycle_pendant(3).game, MetricKind::SocialWelfare, RatioKind::PoA);
    CHECK(cycle_poa.value.kind == RatioValue::Kind::Unbounded);
    const RatioReport cycle_pos =
        price_ratio(cycle_pendant(3).game, MetricKind::SocialWelfare, RatioKind::PoS);
    REQUIRE(cycle_pos.value.kind == RatioValue::Kind::Finite);
    CHECK(cycle_pos.value.value == Rational(1));

    const RatioReport tree =
        price_ratio(nonexistence_tree(2).game, MetricKind::SocialWelfare, RatioKind::PoA);
    CHECK(tree.value.kind == RatioValue::Kind::NoEquilibrium);
    CHECK(tree.equilibrium_count == 0);

    const RatioReport pos_tree_pos =
        price_ratio(pos_tree(3).game, MetricKind::SocialWelfare, RatioKind::PoS);
    REQUIRE(pos_tree_pos.value.kind == RatioValue::Kind::Finite);
    CHECK(pos_tree_pos.value.value == Rational(335, 285));

    const RatioReport spider_pos =
        price_ratio(spider_tree(2, 4).game, MetricKind::DegreeOfIntegration, RatioKind::PoS);
    REQUIRE(spider_pos.value.kind == RatioValue::Kind::Finite);
    CHECK(spider_pos.value.value == Rational(9, 2));

    const RatioReport line_pos =
        price_ratio(line_game({6, 3}).game, MetricKind::DegreeOfIntegration, RatioKind::PoS);
    REQUIRE(line_pos.value.kind == RatioValue::Kind::Finite);
    CHECK(line_pos.value.value == Rational(9, 4));
}

TEST_CASE("ratio sanity on random games") {
    std::mt19937_64 engine(606);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(engine() % 5);
        const int k = 2 + static_cast<int>(engine() % 2);
        Game g = testbeds::all_strategic_game(testbeds::random_connected_topology(n, 2, engine),
                                              testbeds::random_type_counts(n, k, engine));
        for (MetricKind metric :
             {MetricKind::SocialWelfare, MetricKind::DegreeOfIntegration}) {
            const RatioReport poa = price_ratio(g, metric, RatioKind::PoA);
            const RatioReport pos = price_ratio(g, metric, RatioKind::PoS);
            if (poa.value.kind == RatioValue::Kind::NoEquilibrium) {
                CHECK(pos.value.kind == RatioValue::Kind::NoEquilibrium);
                continue;
            }
            if (pos.value.kind == RatioValue::Kind::Finite) {
                CHECK(pos.value.value >= Rational(1));
                if (poa.value.kind == RatioValue::Kind::Finite)
                    CHECK(pos.value.value <= poa.value.value);
            }
            if (metric == MetricKind::DegreeOfIntegration &&
                poa.value.kind == RatioValue::Kind::Finite) {
                // Exposure is at least k at any equilibrium of a connected
                // all-strategic game, so the ratio is at most |R|/k.
                CHECK(poa.value.value <= Rational(g.agent_count(), g.k()));
            }
        }
    }
}

TEST_CASE("degenerate all-singleton game has ratio one") {
    Game g = testbeds::all_strategic_game(testbeds::path_topology(3), {1, 1, 1});
    const RatioReport poa = price_ratio(g, MetricKind::SocialWelfare, RatioKind::PoA);
    REQUIRE(poa.value.kind == RatioValue::Kind::Finite);
    CHECK(poa.value.value == Rational(1));
    CHECK(poa.optimum_value == Rational(0));
}
