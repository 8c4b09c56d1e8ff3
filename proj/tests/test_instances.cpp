#include <catch2/catch_amalgamated.hpp>

#include "schelling/instances.hpp"
#include "schelling/metrics.hpp"
#include "schelling/search.hpp"

using namespace schelling;

namespace {

void check_well_formed(const NamedInstance& inst) {
    CHECK(validate_game(inst.game).ok());
    for (const auto& [name, assignment] : inst.reference_assignments) {
        INFO("reference " << name);
        CHECK(validate_assignment(inst.game, assignment).ok());
    }
}

}  // namespace

TEST_CASE("every generator output is well formed") {
    check_well_formed(nonexistence_tree(2));
    check_well_formed(nonexistence_tree(3));
    check_well_formed(poa_star(8));
    check_well_formed(clique_pendant(5, false));
    check_well_formed(clique_pendant(6, true));
    check_well_formed(cycle_pendant(4));
    check_well_formed(pos_tree(3));
    check_well_formed(spider_tree(3, 4));
    check_well_formed(line_game({4, 2}));
    check_well_formed(stubborn_star(2, {{2, 1}}));
    check_well_formed(stubborn_star(3, {{2, 1}, {3, 2}}));
}

TEST_CASE("generator preconditions throw") {
    CHECK_THROWS_AS(nonexistence_tree(1), std::invalid_argument);
    CHECK_THROWS_AS(poa_star(4), std::invalid_argument);
    CHECK_THROWS_AS(clique_pendant(2, false), std::invalid_argument);
    CHECK_THROWS_AS(clique_pendant(5, true), std::invalid_argument);
    CHECK_THROWS_AS(cycle_pendant(2), std::invalid_argument);
    CHECK_THROWS_AS(pos_tree(2), std::invalid_argument);
    CHECK_THROWS_AS(spider_tree(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(spider_tree(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(line_game({4}), std::invalid_argument);
    CHECK_THROWS_AS(line_game({4, 1}), std::invalid_argument);
    CHECK_THROWS_AS(stubborn_star(2, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(stubborn_star(2, {{2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(stubborn_star(3, {{2, 1}}), std::invalid_argument);
}

TEST_CASE("nonexistence tree shapes and the canonical bad start") {
    const NamedInstance t2 = nonexistence_tree(2);
    CHECK(t2.game.n() == 10);
    CHECK(t2.game.agent_count() == 10);
    CHECK(t2.game.type_counts() == std::vector<int>{5, 5});

    const EquilibriumResult r =
        is_equilibrium(t2.game, t2.reference_assignments.at("nonequilibrium"));
    CHECK_FALSE(r.equilibrium);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == std::make_pair(0, 6));

    const NamedInstance t3 = nonexistence_tree(3);
    CHECK(t3.game.n() == 21);
    CHECK(t3.game.type_counts() == std::vector<int>{7, 7, 7});
    // Root degree: k(k-1)-1 children; each child: root + k leaves.
    CHECK(t3.game.topology().degree(0) == 5);
    CHECK(t3.game.topology().degree(1) == 4);

    const NamedInstance t4 = nonexistence_tree(4);
    CHECK(t4.game.n() == 4 * (4 * 4 - 2));
}

TEST_CASE("star instance welfare values") {
    const NamedInstance star = poa_star(10);
    const Assignment& blue_center = star.reference_assignments.at("blue-center");
    CHECK(social_welfare(star.game, blue_center) == Rational(1) + Rational(1, 9));
    CHECK(social_welfare(star.game, star.reference_assignments.at("red-center")) ==
          Rational(7) + Rational(7, 9));
    CHECK(is_equilibrium(star.game, blue_center).equilibrium);
}

TEST_CASE("clique pendant welfare values") {
    const NamedInstance pendant = clique_pendant(9, false);
    const Assignment& eq = pendant.reference_assignments.at("equilibrium");
    CHECK(is_equilibrium(pendant.game, eq).equilibrium);
    CHECK(social_welfare(pendant.game, eq) == Rational(81, 10));

    // Swapping the hub agent with a blue leaf reaches the instance optimum:
    // 2x-3 + (x-2)/(x-1) + (x-1)/(x+1).
    const int hub_agent = eq.agent_at(0);
    const int leaf_agent = eq.agent_at(1);
    const Assignment swapped = apply_swap(eq, hub_agent, leaf_agent);
    CHECK(social_welfare(pendant.game, swapped) ==
          Rational(15) + Rational(7, 8) + Rational(8, 10));
    CHECK(social_welfare(pendant.game, swapped) == Rational(667, 40));
}

TEST_CASE("cycle pendant equilibrium and optimum") {
    const NamedInstance cycle = cycle_pendant(3);
    const Assignment& eq = cycle.reference_assignments.at("equilibrium");
    CHECK(is_equilibrium(cycle.game, eq).equilibrium);
    CHECK(social_welfare(cycle.game, eq) == Rational(0));
    // Aligned placement: each cycle agent scores 1/3, each pendant agent 1.
    CHECK(social_welfare(cycle.game, cycle.reference_assignments.at("optimal")) == Rational(4));
}

TEST_CASE("pos tree reference values") {
    for (int x : {3, 4}) {
        const NamedInstance tree = pos_tree(x);
        const Assignment& best = tree.reference_assignments.at("best-equilibrium");
        CHECK(is_equilibrium(tree.game, best).equilibrium);
        CHECK(social_welfare(tree.game, best) ==
              Rational(3 * x) + Rational(x, x + 1) + Rational(x, 2 * x + 1));
    }
    // The planted optimum is strictly better than the best equilibrium but
    // is not itself an equilibrium; at x=3 its exact welfare is 335/28.
    const NamedInstance tree = pos_tree(3);
    const Assignment& planted = tree.reference_assignments.at("planted-optimum");
    CHECK_FALSE(is_equilibrium(tree.game, planted).equilibrium);
    CHECK(social_welfare(tree.game, planted) == Rational(335, 28));
    CHECK(social_welfare(tree.game, planted) >
          social_welfare(tree.game, tree.reference_assignments.at("best-equilibrium")));
    const OptimalResult opt = optimal_assignment(tree.game, MetricKind::SocialWelfare);
    CHECK(opt.value == Rational(335, 28));
}

TEST_CASE("spider tree segregation") {
    const NamedInstance sp = spider_tree(2, 4);
    CHECK(sp.game.n() == 9);
    CHECK(sp.game.type_counts() == std::vector<int>{5, 4});
    const Assignment& seg = sp.reference_assignments.at("segregated-equilibrium");
    CHECK(is_equilibrium(sp.game, seg).equilibrium);
    CHECK(degree_of_integration(sp.game, seg) == 2);
    // Everyone can be exposed at once.
    CHECK(optimal_assignment(sp.game, MetricKind::DegreeOfIntegration).value ==
          Rational(sp.game.n()));

    const NamedInstance sp23 = spider_tree(2, 3);
    CHECK(optimal_assignment(sp23.game, MetricKind::DegreeOfIntegration).value ==
          Rational(sp23.game.n()));
}

TEST_CASE("line game blocks") {
    const NamedInstance line = line_game({2, 2, 2});
    const Assignment& blocks = line.reference_assignments.at("monochromatic-blocks");
    CHECK(is_equilibrium(line.game, blocks).equilibrium);
    // Only the 2k-2 agents at block boundaries are exposed.
    CHECK(degree_of_integration(line.game, blocks) == 4);

    const NamedInstance wide = line_game({5, 3, 2});
    CHECK(degree_of_integration(wide.game,
                                wide.reference_assignments.at("monochromatic-blocks")) == 4);
}

TEST_CASE("stubborn star keeps the lone agent at zero welfare") {
    const NamedInstance star = stubborn_star(2, {{2, 1}});
    const Assignment& center = star.reference_assignments.at("red-center");
    CHECK(is_equilibrium(star.game, center).equilibrium);
    CHECK(utility(star.game, center, 0).value() == Rational(0));
    CHECK(social_welfare(star.game, center) == Rational(0));

    // Any placement with a non-type-0 center has positive welfare.
    enumerate_type_patterns(star.game, [&](const TypePattern& p) {
        const Assignment a = assignment_from_pattern(star.game, p);
        if (p.type_of_node[0] != 0) CHECK(social_welfare(star.game, a) > Rational(0));
    });

    const RatioReport poa =
        price_ratio(star.game, MetricKind::SocialWelfare, RatioKind::PoA);
    CHECK(poa.value.kind == RatioValue::Kind::Unbounded);

    const NamedInstance star3 = stubborn_star(3, {{2, 1}, {2, 2}});
    const Assignment& center3 = star3.reference_assignments.at("red-center");
    CHECK(is_equilibrium(star3.game, center3).equilibrium);
    CHECK(social_welfare(star3.game, center3) == Rational(0));
}
