#include <doctest.h>

#include "aao/inference.hpp"
#include "aao/scenarios.hpp"

using namespace aao;

TEST_CASE("every bundled expectation holds under both engines") {
    for (const ScenarioBundle& bundle :
         {fig2a(), fig2b(), fig2_set(), fig2_temporal(), shoebox(), chain(1)}) {
        for (const auto& [query_name, geometry_name, value] : bundle.expected) {
            CAPTURE(query_name);
            CAPTURE(geometry_name);
            for (Engine engine : {Engine::Oracle, Engine::Weighted}) {
                CHECK(probability(bundle.query(query_name),
                                  bundle.geometry(geometry_name),
                                  bundle.default_evidence, engine) == value);
            }
        }
    }
}

TEST_CASE("the V scenario is symmetric under flipping the revealed coin") {
    ScenarioBundle bundle = fig2a();
    Evidence tails;
    tails.add(NodeIs{"bottom", "T"});
    CHECK(probability(bundle.query("same_lr"), bundle.geometries.front(), tails) ==
          Rational(5, 9));
}

TEST_CASE("axis relabeling changes nothing anywhere") {
    ScenarioBundle spatial = fig2_set();
    ScenarioBundle temporal = fig2_temporal();
    REQUIRE(temporal.geometries.size() == spatial.geometries.size());
    CHECK(temporal.geometries[0].axes().size() == 2);

    const Query& q = spatial.query("same_lr");
    for (size_t i = 0; i < spatial.geometries.size(); ++i) {
        for (Engine engine : {Engine::Oracle, Engine::Weighted}) {
            CHECK(probability(q, spatial.geometries[i], spatial.default_evidence, engine) ==
                  probability(q, temporal.geometries[i], temporal.default_evidence, engine));
        }
        CHECK(enumerate_microstates(spatial.geometries[i], spatial.default_evidence) ==
              enumerate_microstates(temporal.geometries[i], temporal.default_evidence));
        JointTable a = joint_table({"left", "right"}, spatial.geometries[i],
                                   spatial.default_evidence);
        JointTable b = joint_table({"left", "right"}, temporal.geometries[i],
                                   temporal.default_evidence);
        for (size_t r = 0; r < a.rows.size(); ++r) {
            CHECK(a.rows[r].weight == b.rows[r].weight);
        }
    }

    auto spatial_table =
        geometry_conditional(q, spatial.geometries, spatial.default_evidence);
    auto temporal_table =
        geometry_conditional(q, temporal.geometries, temporal.default_evidence);
    CHECK(spatial_table.entries == temporal_table.entries);
    CHECK_FALSE(
        independence_check(q, temporal.geometries, temporal.default_evidence).independent);
}

TEST_CASE("shoebox learning story") {
    ScenarioBundle box = shoebox();
    UpdateSession session(box.geometries);

    SUBCASE("no evidence: an equal mix of the two possibilities") {
        ClassicalInfoState s = info_state(box.geometries.front(), Evidence());
        REQUIRE(s.probs.size() == 2);
        CHECK(s.probs[0] == Rational(1, 2));
    }
    SUBCASE("opening box 1 settles box 2 retroactively") {
        session.learn(NodeIs{"box1", "L"});
        CHECK(session.query(Query::node_equals("box2", "R")) == Rational(1));
    }
    SUBCASE("a second opening cannot contradict the first") {
        session.learn(NodeIs{"box1", "L"});
        CHECK_THROWS_AS(session.learn(NodeIs{"box1", "R"}), ContradictionError);
    }
}

TEST_CASE("chain scenarios") {
    CHECK_THROWS_AS(chain(0), ModelError);

    SUBCASE("single link: ends match two to one") {
        ScenarioBundle bundle = chain(1);
        for (Engine engine : {Engine::Oracle, Engine::Weighted}) {
            CHECK(probability(bundle.query("ends_same"), bundle.geometries.front(),
                              bundle.default_evidence, engine) == Rational(2, 3));
        }
    }
    SUBCASE("three links: 14/27, frozen from the oracle") {
        ScenarioBundle bundle = chain(3);
        for (Engine engine : {Engine::Oracle, Engine::Weighted}) {
            CHECK(probability(bundle.query("ends_same"), bundle.geometries.front(),
                              bundle.default_evidence, engine) == Rational(14, 27));
        }
    }
}
