#ifndef AAO_WEIGHTED_HPP
#define AAO_WEIGHTED_HPP

#include <cstdint>
#include <vector>

#include "aao/model.hpp"
#include "aao/numeric.hpp"
#include "aao/oracle.hpp"

namespace aao {

// Exact weighted counts: per-edge color enumeration replaced by integer
// multiplicity weights, summed over node assignments only. Agrees with
// the oracle's MicrostateCount bit-for-bit.
struct WeightedCount {
    BigInt matching;
    BigInt total;
    bool operator==(const WeightedCount&) const = default;
};

// Number of colors the law allows between the two endpoint states.
int edge_multiplicity(const ConstraintTable& constraints, int state_a, int state_b);

// Per-edge multiplicity tables for a (geometry, evidence) pair. An EdgeIs
// atom pins its edge: multiplicity collapses to 1 if the pinned color is
// allowed for the endpoint pair, else 0.
class EdgeMultiplicities {
public:
    EdgeMultiplicities(const Geometry& geometry, const Evidence& evidence);

    int mult(int edge, int state_a, int state_b) const {
        return tables_[edge][state_a * num_states_ + state_b];
    }

private:
    int num_states_;
    std::vector<std::vector<int>> tables_;
};

// total = sum over evidence-compatible node assignments of the product of
// edge multiplicities; matching restricts to predicate-satisfying ones.
// The size guard covers states^nodes raw node assignments.
WeightedCount weighted_count(const Geometry& geometry, const Evidence& evidence,
                             const Query& predicate,
                             std::uint64_t size_guard = kDefaultSizeGuard);

// Total weight only; the normalizing denominator.
BigInt partition_function(const Geometry& geometry, const Evidence& evidence,
                          std::uint64_t size_guard = kDefaultSizeGuard);

// Linear-time special case for path geometries: sequential elimination by
// multiplicity-matrix products, tracking both endpoint states. The
// predicate may reference only the path's two endpoints.
WeightedCount eliminate_chain(const Geometry& geometry, const Evidence& evidence,
                              const Query& endpoint_predicate);

}  // namespace aao

#endif
