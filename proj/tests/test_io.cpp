#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "schelling/io.hpp"
#include "schelling/testbeds.hpp"

using namespace schelling;
using namespace schelling::testbeds;
using schelling::io::json;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
    int count = 0;
    for (size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

}  // namespace

TEST_CASE("rationals serialize as exact integer pairs", "[io]") {
    CHECK(io::rational_to_json(Rational(667, 40)) == json({{"num", 667}, {"den", 40}}));
    CHECK(io::rational_to_json(Rational(2, 4)) == json({{"num", 1}, {"den", 2}}));
    CHECK(io::rational_to_json(Rational(0)) == json({{"num", 0}, {"den", 1}}));
    for (const Rational r : {Rational(0), Rational(7), Rational(104, 211), Rational(9, 2)})
        CHECK(io::rational_from_json(io::rational_to_json(r)) == r);
}

TEST_CASE("game files round trip bit-exactly", "[io]") {
    std::mt19937_64 engine(4242);
    std::vector<Game> games;
    games.push_back(poa_star(7).game);
    games.push_back(spider_tree(3, 3).game);
    for (int trial = 0; trial < 10; ++trial)
        games.push_back(random_game(random_connected_topology(8, 4, engine), 3, 5, engine));

    for (const Game& g : games) {
        const json doc = io::game_to_json(g);
        CHECK(json::parse(doc.dump(2)) == doc);
        const Game parsed = io::game_from_json(doc);
        CHECK(io::game_to_json(parsed) == doc);
        CHECK(parsed.n() == g.n());
        CHECK(parsed.k() == g.k());
        CHECK(parsed.topology().edges() == g.topology().edges());
        CHECK(validate_game(parsed).ok() == validate_game(g).ok());
    }
}

TEST_CASE("game parsing rejects malformed documents", "[io]") {
    const json good = io::game_to_json(poa_star(5).game);

    json missing = good;
    missing.erase("edges");
    CHECK_THROWS(io::game_from_json(missing));

    json bad_role = good;
    bad_role["agents"][0]["role"] = "wanderer";
    CHECK_THROWS_AS(io::game_from_json(bad_role), std::invalid_argument);

    json bad_edge = good;
    bad_edge["edges"][0] = json::array({0, 99});
    CHECK_THROWS_AS(io::game_from_json(bad_edge), std::invalid_argument);

    json sparse_ids = good;
    sparse_ids["agents"][0]["id"] = 17;
    CHECK_THROWS_AS(io::game_from_json(sparse_ids), std::invalid_argument);
}

TEST_CASE("assignments round trip and reject bad maps", "[io]") {
    const Game g = poa_star(6).game;
    const Assignment identity = identity_assignment(g);
    CHECK(io::assignment_from_json(io::assignment_to_json(identity)) == identity);

    std::mt19937_64 engine(7);
    for (int trial = 0; trial < 5; ++trial) {
        const Assignment a = random_assignment(g, engine);
        CHECK(io::assignment_from_json(io::assignment_to_json(a)) == a);
    }

    CHECK_THROWS_AS(io::assignment_from_json(json{{"0", 0}, {"1", 0}}), std::invalid_argument);
    CHECK_THROWS_AS(io::assignment_from_json(json{{"0", 0}, {"7", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(io::assignment_from_json(json{{"zero", 0}}), std::invalid_argument);
}

TEST_CASE("instance files embed reference assignments", "[io]") {
    const NamedInstance star = poa_star(6);
    const json doc = io::instance_to_json(star);

    CHECK(doc.at("provenance").get<std::string>() == star.provenance);
    REQUIRE(doc.contains("references"));
    CHECK(doc.at("references").size() == 2);
    for (const auto& [name, assignment] : star.reference_assignments) {
        REQUIRE(doc.at("references").contains(name));
        CHECK(io::assignment_from_json(doc.at("references").at(name)) == assignment);
    }
    CHECK(io::game_to_json(io::game_from_json(doc)) == io::game_to_json(star.game));
}

TEST_CASE("reduction files embed parameters and component labels", "[io]") {
    SourceGraph c4;
    c4.node_count = 4;
    c4.edges = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    const ReductionOutput emc = equal_min_cut_to_game(c4, 0, 2, 2);
    const json doc = io::reduction_to_json(emc);

    CHECK(doc.at("parameters").at("xi") == json({{"num", 1}, {"den", 1}}));
    CHECK(doc.at("parameters").at("d_0") == json({{"num", 4}, {"den", 1}}));
    CHECK(doc.at("component_map").size() == 6);
    CHECK(doc.at("component_map")[0].get<std::string>() == "X:s");
    const Game parsed = io::game_from_json(doc);
    CHECK(parsed.k() == emc.game.k());
    CHECK(parsed.n() == emc.game.n());

    SourceGraph triangle;
    triangle.node_count = 3;
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    const json vc = io::reduction_to_json(vertex_cover_to_game(triangle, 2));
    CHECK(vc.at("parameters").at("lambda") == json({{"num", 2}, {"den", 1}}));
    CHECK(io::rational_from_json(vc.at("parameters").at("lambda")) == Rational(2));
}

TEST_CASE("dot export labels every vertex and shapes roles", "[io]") {
    const NamedInstance star = poa_star(6);
    const std::string with_assignment =
        io::to_dot(star.game, &star.reference_assignments.at("blue-center"));
    CHECK(count_occurrences(with_assignment, "label=") == star.game.n());
    CHECK(count_occurrences(with_assignment, "shape=box") == 0);
    CHECK(count_occurrences(with_assignment, " -- ") == star.game.topology().edge_count());
    CHECK(count_occurrences(with_assignment, "label=\"t1\"") == 2);

    const NamedInstance pinned = stubborn_star(3, {{2, 1}, {2, 2}});
    const std::string bare = io::to_dot(pinned.game);
    CHECK(count_occurrences(bare, "label=") == pinned.game.n());
    CHECK(count_occurrences(bare, "shape=box") ==
          static_cast<int>(pinned.game.stubborn_agents().size()));
    CHECK(count_occurrences(bare, "label=\"open\"") ==
          static_cast<int>(pinned.game.open_nodes().size()));
}

TEST_CASE("trace serialization names verdicts", "[io]") {
    const NamedInstance tree = nonexistence_tree(2);
    const Assignment start = tree.reference_assignments.at("nonequilibrium");

    const DynamicsTrace capped = run(tree.game, start, SchedulingPolicy::lex_first(), 3);
    const json capped_doc = io::trace_to_json(capped);
    CHECK(capped_doc.at("verdict").get<std::string>() == "step-cap-exhausted");
    CHECK(capped_doc.at("steps").size() == 3);
    CHECK_FALSE(capped_doc.contains("cycle_period"));
    for (const json& step : capped_doc.at("steps")) {
        CHECK(step.contains("agent_i"));
        CHECK(io::rational_from_json(step.at("after_i")) >
              io::rational_from_json(step.at("before_i")));
        CHECK(io::rational_from_json(step.at("after_j")) >
              io::rational_from_json(step.at("before_j")));
    }
    CHECK(io::assignment_from_json(capped_doc.at("initial")) == start);
    CHECK(io::assignment_from_json(capped_doc.at("final")) == capped.final);

    const DynamicsTrace looped = run(tree.game, start, SchedulingPolicy::lex_first(), 1000000);
    const json looped_doc = io::trace_to_json(looped);
    CHECK(looped_doc.at("verdict").get<std::string>() == "cycle-detected");
    CHECK(looped_doc.at("cycle_period").get<int>() >= 2);

    const NamedInstance pendant = clique_pendant(4, false);
    const DynamicsTrace still =
        run(pendant.game, pendant.reference_assignments.at("equilibrium"),
            SchedulingPolicy::lex_first());
    CHECK(io::trace_to_json(still).at("verdict").get<std::string>() == "reached-equilibrium");
    CHECK(io::trace_to_json(still).at("steps").empty());
}

TEST_CASE("ratio reports serialize values and sentinels", "[io]") {
    const json star =
        io::ratio_report_to_json(price_ratio(poa_star(10).game, MetricKind::SocialWelfare,
                                             RatioKind::PoA, SearchLimits{}));
    CHECK(star.at("metric").get<std::string>() == "sw");
    CHECK(star.at("kind").get<std::string>() == "poa");
    CHECK(star.at("value") == json({{"num", 7}, {"den", 1}}));
    CHECK(star.at("equilibrium_count").get<std::uint64_t>() == 45);
    CHECK(star.contains("equilibrium_value"));
    CHECK(star.at("optimum_pattern").size() == 10);

    const json unbounded =
        io::ratio_report_to_json(price_ratio(cycle_pendant(3).game, MetricKind::SocialWelfare,
                                             RatioKind::PoA, SearchLimits{}));
    CHECK(unbounded.at("value") == json("unbounded"));

    const json none =
        io::ratio_report_to_json(price_ratio(nonexistence_tree(2).game,
                                             MetricKind::SocialWelfare, RatioKind::PoS,
                                             SearchLimits{}));
    CHECK(none.at("value") == json("no-equilibrium"));
    CHECK(none.at("equilibrium_count").get<std::uint64_t>() == 0);
    CHECK_FALSE(none.contains("equilibrium_value"));
    CHECK_FALSE(none.contains("equilibrium_pattern"));
}
