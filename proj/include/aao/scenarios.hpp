#ifndef AAO_SCENARIOS_HPP
#define AAO_SCENARIOS_HPP

#include <optional>
#include <string>
#include <vector>

#include "aao/model.hpp"
#include "aao/numeric.hpp"

namespace aao {

// A concrete system with its default evidence, named queries, and the
// expected exact values asserted by the golden tests.
struct ScenarioBundle {
    std::vector<Geometry> geometries;
    Evidence default_evidence;
    std::vector<std::pair<std::string, Query>> queries;
    // Expected value per (query name, geometry name) where one is known.
    std::vector<std::tuple<std::string, std::string, Rational>> expected;

    const Geometry& geometry(const std::string& name) const;
    const Query& query(const std::string& name) const;
};

// Three coins in a V: bottom linked to left and right. Evidence bottom=H,
// query same(left, right), expected 5/9.
ScenarioBundle fig2a();

// fig2a plus a fourth coin on top linked to left and right; expected 25/41.
ScenarioBundle fig2b();

// Both figure-2 geometries as a set sharing node names, for
// geometry-conditional queries.
ScenarioBundle fig2_set();

// Same graphs with the vertical axis labeled time: microstates become
// microhistories and every count is unchanged.
ScenarioBundle fig2_temporal();

// Two boxes holding a matched pair: one edge, one color, allowed only
// between opposite states. No default evidence; the information state is
// an equal mix of the two possibilities.
ScenarioBundle shoebox();

// Path of n edges (n+1 nodes c0..cn) under the default law, first node
// pinned H, query same(c0, cn).
ScenarioBundle chain(int num_edges);

}  // namespace aao

#endif
