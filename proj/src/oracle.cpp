#include "aao/oracle.hpp"

#include <sstream>

namespace aao {

namespace {

// Pins compiled from evidence: -1 = free.
struct Pins {
    std::vector<int> node;
    std::vector<int> edge;
};

Pins compile_pins(const Geometry& g, const Evidence& ev) {
    ev.validate(g);
    Pins pins;
    pins.node.assign(g.num_nodes(), -1);
    pins.edge.assign(g.num_edges(), -1);
    for (const auto& atom : ev.atoms()) {
        if (const auto* n = std::get_if<NodeIs>(&atom)) {
            pins.node[g.require_node(n->node)] = g.states().require(n->state);
        } else if (const auto* e = std::get_if<EdgeIs>(&atom)) {
            pins.edge[g.require_edge(e->node_a, e->node_b)] = g.colors().require(e->color);
        }
        // GeometryIs atoms are validated (must name this geometry) and carry
        // no assignment content here.
    }
    return pins;
}

void check_size_guard(const Geometry& g, std::uint64_t size_guard) {
    BigInt raw = 1;
    for (int i = 0; i < g.num_nodes(); ++i) raw *= g.states().size();
    for (int i = 0; i < g.num_edges(); ++i) raw *= g.colors().size();
    if (raw > size_guard) {
        throw SizeGuardError("raw assignment space " + raw.str() +
                             " exceeds the size guard " + std::to_string(size_guard));
    }
}

// Odometer over the free positions, most-significant first; pinned
// positions stay fixed. Returns false when exhausted.
bool advance(std::vector<int>& values, const std::vector<int>& pins, int radix) {
    for (int i = static_cast<int>(values.size()) - 1; i >= 0; --i) {
        if (pins[i] >= 0) continue;
        if (++values[i] < radix) return true;
        values[i] = 0;
    }
    return false;
}

void reset_to_pins(std::vector<int>& values, const std::vector<int>& pins) {
    for (size_t i = 0; i < values.size(); ++i) {
        values[i] = pins[i] >= 0 ? pins[i] : 0;
    }
}

bool law_satisfied(const Geometry& g, const std::vector<int>& node_states,
                   const std::vector<int>& edge_colors) {
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& edge = g.edge(e);
        if (!g.law().allowed(edge_colors[e], node_states[edge.a], node_states[edge.b])) {
            return false;
        }
    }
    return true;
}

template <typename Visit>
void for_each_microstate(const Geometry& g, const Evidence& ev,
                         std::uint64_t size_guard, Visit&& visit) {
    check_size_guard(g, size_guard);
    Pins pins = compile_pins(g, ev);
    std::vector<int> node_states(g.num_nodes());
    std::vector<int> edge_colors(g.num_edges());
    reset_to_pins(node_states, pins.node);
    do {
        reset_to_pins(edge_colors, pins.edge);
        if (g.num_edges() == 0) {
            visit(node_states, edge_colors);
            continue;
        }
        // Degenerate color alphabets: an empty alphabet admits no edge
        // assignment at all when edges exist.
        if (g.colors().size() == 0) continue;
        do {
            if (law_satisfied(g, node_states, edge_colors)) {
                visit(node_states, edge_colors);
            }
        } while (advance(edge_colors, pins.edge, g.colors().size()));
    } while (advance(node_states, pins.node, g.states().size()));
}

}  // namespace

std::vector<Microstate> enumerate_microstates(const Geometry& geometry,
                                              const Evidence& evidence,
                                              std::uint64_t size_guard) {
    std::vector<Microstate> out;
    for_each_microstate(geometry, evidence, size_guard,
                        [&out](const std::vector<int>& ns, const std::vector<int>& ec) {
                            out.push_back(Microstate{ns, ec});
                        });
    return out;
}

MicrostateCount count_matching(const Geometry& geometry, const Evidence& evidence,
                               const Query& predicate, std::uint64_t size_guard) {
    predicate.validate(geometry);
    MicrostateCount count{0, 0};
    // Predicate depends only on node states; evaluate once per node block.
    std::vector<int> last_nodes;
    bool last_match = false;
    for_each_microstate(geometry, evidence, size_guard,
                        [&](const std::vector<int>& ns, const std::vector<int>&) {
                            count.total += 1;
                            if (ns != last_nodes) {
                                last_nodes = ns;
                                last_match = predicate.eval(geometry, ns);
                            }
                            if (last_match) count.matching += 1;
                        });
    return count;
}

std::string microstate_to_string(const Geometry& geometry, const Microstate& ms) {
    std::ostringstream out;
    for (int i = 0; i < geometry.num_nodes(); ++i) {
        if (i) out << " ";
        out << geometry.node_name(i) << "=" << geometry.states().symbol(ms.node_states[i]);
    }
    if (geometry.num_edges() > 0) {
        out << " |";
        for (int e = 0; e < geometry.num_edges(); ++e) {
            out << " " << geometry.edge_name(e) << "="
                << geometry.colors().symbol(ms.edge_colors[e]);
        }
    }
    return out.str();
}

std::string interleave_path_string(const Geometry& geometry, const Microstate& ms,
                                   const std::vector<std::string>& path_nodes) {
    std::string out;
    for (size_t i = 0; i < path_nodes.size(); ++i) {
        int node = geometry.require_node(path_nodes[i]);
        out += geometry.states().symbol(ms.node_states[node]);
        if (i + 1 < path_nodes.size()) {
            int edge = geometry.require_edge(path_nodes[i], path_nodes[i + 1]);
            out += geometry.colors().symbol(ms.edge_colors[edge]);
        }
    }
    return out;
}

}  // namespace aao
