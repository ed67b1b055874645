#ifndef AAO_ORACLE_HPP
#define AAO_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aao/model.hpp"
#include "aao/numeric.hpp"

namespace aao {

// Default cap on raw assignments (states^nodes * colors^edges) before
// any filtering. Counted pre-filter so refusal is predictable.
inline constexpr std::uint64_t kDefaultSizeGuard = std::uint64_t{1} << 24;

// One complete, law-satisfying assignment: the candidate underlying
// reality. Indices follow the geometry's canonical orders.
struct Microstate {
    std::vector<int> node_states;
    std::vector<int> edge_colors;
    bool operator==(const Microstate&) const = default;
};

struct MicrostateCount {
    BigInt matching;
    BigInt total;
    bool operator==(const MicrostateCount&) const = default;
};

// Ground-truth brute force: every microstate satisfying the law and all
// evidence atoms, ordered lexicographically by node states then edge
// colors in canonical order. Deterministic.
std::vector<Microstate> enumerate_microstates(const Geometry& geometry,
                                              const Evidence& evidence,
                                              std::uint64_t size_guard = kDefaultSizeGuard);

MicrostateCount count_matching(const Geometry& geometry, const Evidence& evidence,
                               const Query& predicate,
                               std::uint64_t size_guard = kDefaultSizeGuard);

// "bottom=H left=H right=T | bottom-left=R bottom-right=G"
std::string microstate_to_string(const Geometry& geometry, const Microstate& ms);

// Compact rendering for path geometries in node/edge interleaved order
// (node, link, node, link, ...), e.g. "HBHGH". Nodes are listed in
// canonical order with each edge's color between its endpoints; only
// defined when the canonical node order walks the path.
std::string interleave_path_string(const Geometry& geometry, const Microstate& ms,
                                   const std::vector<std::string>& path_nodes);

}  // namespace aao

#endif
