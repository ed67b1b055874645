#include "aao/weighted.hpp"

#include <algorithm>

namespace aao {

int edge_multiplicity(const ConstraintTable& constraints, int state_a, int state_b) {
    if (state_a < 0 || state_a >= constraints.num_states() || state_b < 0 ||
        state_b >= constraints.num_states()) {
        throw ModelError("unknown state index in edge_multiplicity");
    }
    int count = 0;
    for (int c = 0; c < constraints.num_colors(); ++c) {
        if (constraints.allowed(c, state_a, state_b)) ++count;
    }
    return count;
}

EdgeMultiplicities::EdgeMultiplicities(const Geometry& geometry, const Evidence& evidence)
    : num_states_(geometry.states().size()) {
    evidence.validate(geometry);
    std::vector<int> edge_pin(geometry.num_edges(), -1);
    for (const auto& atom : evidence.atoms()) {
        if (const auto* e = std::get_if<EdgeIs>(&atom)) {
            edge_pin[geometry.require_edge(e->node_a, e->node_b)] =
                geometry.colors().require(e->color);
        }
    }
    tables_.resize(geometry.num_edges());
    for (int e = 0; e < geometry.num_edges(); ++e) {
        tables_[e].resize(static_cast<size_t>(num_states_) * num_states_);
        for (int a = 0; a < num_states_; ++a) {
            for (int b = 0; b < num_states_; ++b) {
                int m;
                if (edge_pin[e] >= 0) {
                    m = geometry.law().allowed(edge_pin[e], a, b) ? 1 : 0;
                } else {
                    m = edge_multiplicity(geometry.law(), a, b);
                }
                tables_[e][a * num_states_ + b] = m;
            }
        }
    }
}

namespace {

void check_node_guard(const Geometry& g, std::uint64_t size_guard) {
    BigInt raw = 1;
    for (int i = 0; i < g.num_nodes(); ++i) raw *= g.states().size();
    if (raw > size_guard) {
        throw SizeGuardError("raw node assignment space " + raw.str() +
                             " exceeds the size guard " + std::to_string(size_guard));
    }
}

std::vector<int> node_pins(const Geometry& g, const Evidence& ev) {
    std::vector<int> pins(g.num_nodes(), -1);
    for (const auto& atom : ev.atoms()) {
        if (const auto* n = std::get_if<NodeIs>(&atom)) {
            pins[g.require_node(n->node)] = g.states().require(n->state);
        }
    }
    return pins;
}

bool advance(std::vector<int>& values, const std::vector<int>& pins, int radix) {
    for (int i = static_cast<int>(values.size()) - 1; i >= 0; --i) {
        if (pins[i] >= 0) continue;
        if (++values[i] < radix) return true;
        values[i] = 0;
    }
    return false;
}

}  // namespace

WeightedCount weighted_count(const Geometry& geometry, const Evidence& evidence,
                             const Query& predicate, std::uint64_t size_guard) {
    predicate.validate(geometry);
    check_node_guard(geometry, size_guard);
    EdgeMultiplicities mults(geometry, evidence);
    std::vector<int> pins = node_pins(geometry, evidence);
    std::vector<int> states(geometry.num_nodes());
    for (size_t i = 0; i < states.size(); ++i) states[i] = pins[i] >= 0 ? pins[i] : 0;

    WeightedCount count{0, 0};
    do {
        BigInt weight = 1;
        for (int e = 0; e < geometry.num_edges() && weight != 0; ++e) {
            const Edge& edge = geometry.edge(e);
            weight *= mults.mult(e, states[edge.a], states[edge.b]);
        }
        if (weight == 0) continue;
        count.total += weight;
        if (predicate.eval(geometry, states)) count.matching += weight;
    } while (advance(states, pins, geometry.states().size()));
    return count;
}

BigInt partition_function(const Geometry& geometry, const Evidence& evidence,
                          std::uint64_t size_guard) {
    return weighted_count(geometry, evidence, Query::always(), size_guard).total;
}

namespace {

// Orders the nodes of a simple path from one endpoint to the other,
// returning (node order, edge order). Throws for non-path shapes.
std::pair<std::vector<int>, std::vector<int>> path_order(const Geometry& g) {
    int n = g.num_nodes();
    if (g.num_edges() != n - 1 || n < 2) {
        throw ModelError("eliminate_chain requires a simple path geometry");
    }
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge)
    for (int e = 0; e < g.num_edges(); ++e) {
        adj[g.edge(e).a].push_back({g.edge(e).b, e});
        adj[g.edge(e).b].push_back({g.edge(e).a, e});
    }
    int start = -1;
    for (int i = 0; i < n; ++i) {
        if (adj[i].size() > 2) {
            throw ModelError("eliminate_chain requires a simple path geometry");
        }
        if (adj[i].size() == 1 && start < 0) start = i;
    }
    if (start < 0) throw ModelError("eliminate_chain requires a simple path geometry");

    std::vector<int> nodes{start};
    std::vector<int> edges;
    int prev = -1, cur = start;
    while (static_cast<int>(nodes.size()) < n) {
        bool stepped = false;
        for (auto [next, e] : adj[cur]) {
            if (next == prev) continue;
            nodes.push_back(next);
            edges.push_back(e);
            prev = cur;
            cur = next;
            stepped = true;
            break;
        }
        if (!stepped) {
            throw ModelError("eliminate_chain requires a connected path geometry");
        }
    }
    return {nodes, edges};
}

}  // namespace

WeightedCount eliminate_chain(const Geometry& geometry, const Evidence& evidence,
                              const Query& endpoint_predicate) {
    endpoint_predicate.validate(geometry);
    auto [order, edge_order] = path_order(geometry);
    int first = order.front();
    int last = order.back();
    for (const auto& name : endpoint_predicate.referenced_nodes()) {
        int idx = geometry.require_node(name);
        if (idx != first && idx != last) {
            throw ModelError("eliminate_chain predicate may only reference the path "
                             "endpoints, not " + name);
        }
    }

    EdgeMultiplicities mults(geometry, evidence);
    std::vector<int> pins = node_pins(geometry, evidence);
    int k = geometry.states().size();

    // dp[s0][s] = total weight of partial assignments with the first
    // endpoint in s0 and the current frontier node in s.
    std::vector<std::vector<BigInt>> dp(k, std::vector<BigInt>(k, 0));
    for (int s = 0; s < k; ++s) {
        if (pins[first] < 0 || pins[first] == s) dp[s][s] = 1;
    }
    for (size_t step = 0; step + 1 < order.size(); ++step) {
        int next_node = order[step + 1];
        int e = edge_order[step];
        bool forward = geometry.edge(e).a == order[step];
        std::vector<std::vector<BigInt>> next(k, std::vector<BigInt>(k, 0));
        for (int s0 = 0; s0 < k; ++s0) {
            for (int s = 0; s < k; ++s) {
                if (dp[s0][s] == 0) continue;
                for (int t = 0; t < k; ++t) {
                    if (pins[next_node] >= 0 && pins[next_node] != t) continue;
                    int m = forward ? mults.mult(e, s, t) : mults.mult(e, t, s);
                    if (m == 0) continue;
                    next[s0][t] += dp[s0][s] * m;
                }
            }
        }
        dp = std::move(next);
    }

    WeightedCount count{0, 0};
    std::vector<int> assignment(geometry.num_nodes(), -1);
    for (int s0 = 0; s0 < k; ++s0) {
        for (int sk = 0; sk < k; ++sk) {
            if (dp[s0][sk] == 0) continue;
            count.total += dp[s0][sk];
            assignment[first] = s0;
            assignment[last] = sk;
            if (endpoint_predicate.eval(geometry, assignment)) {
                count.matching += dp[s0][sk];
            }
        }
    }
    return count;
}

}  // namespace aao
