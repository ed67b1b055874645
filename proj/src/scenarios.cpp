#include "aao/scenarios.hpp"

#include <tuple>

namespace aao {

const Geometry& ScenarioBundle::geometry(const std::string& name) const {
    for (const auto& g : geometries) {
        if (g.name() == name) return g;
    }
    throw ModelError("scenario has no geometry named " + name);
}

const Query& ScenarioBundle::query(const std::string& name) const {
    for (const auto& [n, q] : queries) {
        if (n == name) return q;
    }
    throw ModelError("scenario has no query named " + name);
}

namespace {

Geometry fig2a_geometry() {
    GeometrySpec spec;
    spec.name = "fig2a";
    spec.nodes = {"bottom", "left", "right"};
    spec.edges = {{"bottom", "left"}, {"bottom", "right"}};
    StateAlphabet states = heads_tails();
    ColorAlphabet colors = red_green_blue();
    return Geometry(spec, states, colors, coin_law(states, colors));
}

Geometry fig2b_geometry() {
    GeometrySpec spec;
    spec.name = "fig2b";
    spec.nodes = {"bottom", "left", "right", "top"};
    spec.edges = {{"bottom", "left"}, {"bottom", "right"}, {"left", "top"}, {"right", "top"}};
    StateAlphabet states = heads_tails();
    ColorAlphabet colors = red_green_blue();
    return Geometry(spec, states, colors, coin_law(states, colors));
}

Evidence bottom_heads() {
    Evidence ev;
    ev.add(NodeIs{"bottom", "H"});
    return ev;
}

std::vector<AxisLabel> vertical_time() {
    return {AxisLabel{"horizontal", AxisKind::Space}, AxisLabel{"vertical", AxisKind::Time}};
}

}  // namespace

ScenarioBundle fig2a() {
    ScenarioBundle bundle;
    bundle.geometries = {fig2a_geometry()};
    bundle.default_evidence = bottom_heads();
    bundle.queries = {{"same_lr", Query::nodes_same("left", "right")}};
    bundle.expected = {{"same_lr", "fig2a", Rational(5, 9)}};
    return bundle;
}

ScenarioBundle fig2b() {
    ScenarioBundle bundle;
    bundle.geometries = {fig2b_geometry()};
    bundle.default_evidence = bottom_heads();
    bundle.queries = {{"same_lr", Query::nodes_same("left", "right")}};
    bundle.expected = {{"same_lr", "fig2b", Rational(25, 41)}};
    return bundle;
}

ScenarioBundle fig2_set() {
    ScenarioBundle bundle;
    bundle.geometries = {fig2a_geometry(), fig2b_geometry()};
    bundle.default_evidence = bottom_heads();
    bundle.queries = {{"same_lr", Query::nodes_same("left", "right")}};
    bundle.expected = {{"same_lr", "fig2a", Rational(5, 9)},
                       {"same_lr", "fig2b", Rational(25, 41)}};
    return bundle;
}

ScenarioBundle fig2_temporal() {
    ScenarioBundle bundle = fig2_set();
    for (auto& g : bundle.geometries) g = g.with_axes(vertical_time());
    return bundle;
}

ScenarioBundle shoebox() {
    GeometrySpec spec;
    spec.name = "shoebox";
    spec.nodes = {"box1", "box2"};
    spec.edges = {{"box1", "box2"}};
    StateAlphabet states({"L", "R"});
    ColorAlphabet colors({"pair"});
    ConstraintTable law(1, 2);
    law.allow(0, states.require("L"), states.require("R"));

    ScenarioBundle bundle;
    bundle.geometries = {Geometry(spec, states, colors, law)};
    bundle.queries = {{"box1_left", Query::node_equals("box1", "L")},
                      {"box2_right", Query::node_equals("box2", "R")}};
    bundle.expected = {{"box1_left", "shoebox", Rational(1, 2)},
                       {"box2_right", "shoebox", Rational(1, 2)}};
    return bundle;
}

ScenarioBundle chain(int num_edges) {
    if (num_edges < 1) throw ModelError("chain needs at least one edge");
    GeometrySpec spec;
    spec.name = "chain" + std::to_string(num_edges);
    for (int i = 0; i <= num_edges; ++i) spec.nodes.push_back("c" + std::to_string(i));
    for (int i = 0; i < num_edges; ++i) {
        spec.edges.emplace_back(spec.nodes[i], spec.nodes[i + 1]);
    }
    StateAlphabet states = heads_tails();
    ColorAlphabet colors = red_green_blue();

    ScenarioBundle bundle;
    bundle.geometries = {Geometry(spec, states, colors, coin_law(states, colors))};
    bundle.default_evidence.add(NodeIs{"c0", "H"});
    bundle.queries = {{"ends_same", Query::nodes_same("c0", spec.nodes.back())}};
    if (num_edges == 1) {
        bundle.expected = {{"ends_same", spec.name, Rational(2, 3)}};
    }
    return bundle;
}

}  // namespace aao
