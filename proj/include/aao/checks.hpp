#ifndef AAO_CHECKS_HPP
#define AAO_CHECKS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aao/model.hpp"

namespace aao {

// Randomized cross-validation machinery shared by the CLI's check
// command and the property-test suites.

struct CheckOptions {
    int cases = 1000;
    int max_nodes = 10;
    int max_edges = 12;
    std::uint64_t seed = 20240317;
    // Per-case budget on states^nodes * colors^edges; keeps the oracle
    // side of each case fast while still reaching the node/edge bounds.
    std::uint64_t case_budget = std::uint64_t{1} << 16;
};

struct CheckReport {
    int cases_run = 0;
    int failures = 0;
    // Human-readable dump of the first counterexample, if any.
    std::optional<std::string> counterexample;

    bool ok() const { return failures == 0; }
};

// Random geometry with a random constraint table, sized to the budget.
Geometry random_geometry(std::mt19937_64& rng, const CheckOptions& opts);

// Random node pins (and occasionally a deduced edge pin) for the geometry.
Evidence random_evidence(std::mt19937_64& rng, const Geometry& geometry);

// Random predicate tree over the geometry's nodes.
Query random_query(std::mt19937_64& rng, const Geometry& geometry);

// weighted_count vs count_matching on random cases, exact big-integer
// equality; path-shaped cases also cross-check eliminate_chain. Extra
// geometries (e.g. from a model file) are checked first with random
// evidence and predicates.
CheckReport engine_equivalence_suite(const CheckOptions& opts,
                                     const std::vector<Geometry>& extra_geometries = {});

// Applies random supported evidence sets in several permutations through
// UpdateSession and requires identical exact posteriors.
CheckReport order_invariance_suite(const CheckOptions& opts, int permutations = 5,
                                   const std::vector<Geometry>& extra_geometries = {});

}  // namespace aao

#endif
