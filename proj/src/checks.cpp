#include "aao/checks.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "aao/inference.hpp"
#include "aao/oracle.hpp"
#include "aao/weighted.hpp"

namespace aao {

namespace {

int rand_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

std::vector<std::string> numbered(const char* prefix, int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

bool within_budget(int num_states, int num_colors, int nodes, int edges,
                   std::uint64_t budget) {
    long double raw = 1.0L;
    for (int i = 0; i < nodes; ++i) raw *= num_states;
    for (int i = 0; i < edges; ++i) raw *= std::max(num_colors, 1);
    return raw <= static_cast<long double>(budget);
}

std::string describe_case(const Geometry& g, const Evidence& ev, const Query& q) {
    std::ostringstream out;
    out << "geometry " << g.name() << ": nodes=" << g.num_nodes() << " [";
    for (int i = 0; i < g.num_nodes(); ++i) out << (i ? " " : "") << g.node_name(i);
    out << "] edges=[";
    for (int e = 0; e < g.num_edges(); ++e) out << (e ? " " : "") << g.edge_name(e);
    out << "] states=" << g.states().size() << " colors=" << g.colors().size();
    out << "\nlaw:";
    for (int c = 0; c < g.colors().size(); ++c) {
        out << " " << g.colors().symbol(c) << ":";
        for (int a = 0; a < g.states().size(); ++a) {
            for (int b = 0; b < g.states().size(); ++b) {
                if (g.law().allowed(c, a, b)) {
                    out << g.states().symbol(a) << "-" << g.states().symbol(b) << ",";
                }
            }
        }
    }
    out << "\nevidence: {";
    for (const auto& atom : ev.atoms()) out << " " << atom_to_string(atom) << ";";
    out << " }\nquery: " << q.to_string();
    return out.str();
}

}  // namespace

Geometry random_geometry(std::mt19937_64& rng, const CheckOptions& opts) {
    int nodes, edges, num_states, num_colors;
    do {
        nodes = rand_int(rng, 1, opts.max_nodes);
        edges = nodes >= 2 ? rand_int(rng, 0, opts.max_edges) : 0;
        num_states = rand_int(rng, 2, 3);
        num_colors = rand_int(rng, 1, 3);
    } while (!within_budget(num_states, num_colors, nodes, edges, opts.case_budget));

    StateAlphabet states(numbered("s", num_states));
    ColorAlphabet colors(numbered("k", num_colors));
    ConstraintTable law(num_colors, num_states);
    for (int c = 0; c < num_colors; ++c) {
        for (int a = 0; a < num_states; ++a) {
            for (int b = a; b < num_states; ++b) {
                if (chance(rng, 0.5)) law.allow(c, a, b);
            }
        }
    }

    GeometrySpec spec;
    spec.name = "rand";
    spec.nodes = numbered("n", nodes);
    for (int e = 0; e < edges; ++e) {
        // Parallel edges are legal; self-loops are not.
        int a = rand_int(rng, 0, nodes - 1);
        int b = rand_int(rng, 0, nodes - 2);
        if (b >= a) ++b;
        spec.edges.emplace_back(spec.nodes[a], spec.nodes[b]);
    }
    return Geometry(spec, states, colors, law);
}

Evidence random_evidence(std::mt19937_64& rng, const Geometry& geometry) {
    Evidence ev = Evidence::with_deduced_edges();
    for (int i = 0; i < geometry.num_nodes(); ++i) {
        if (chance(rng, 0.25)) {
            ev.add(NodeIs{geometry.node_name(i),
                          geometry.states().symbol(rand_int(rng, 0, geometry.states().size() - 1))});
        }
    }
    for (int e = 0; e < geometry.num_edges(); ++e) {
        if (chance(rng, 0.1)) {
            const Edge& edge = geometry.edge(e);
            EdgeIs atom{geometry.node_name(edge.a), geometry.node_name(edge.b),
                        geometry.colors().symbol(rand_int(rng, 0, geometry.colors().size() - 1))};
            if (!ev.contains(EvidenceAtom{atom})) {
                try {
                    ev.add(atom);
                } catch (const ContradictionError&) {
                    // parallel edge already pinned to another color; skip
                }
            }
        }
    }
    return ev;
}

Query random_query(std::mt19937_64& rng, const Geometry& geometry) {
    std::function<Query(int)> gen = [&](int depth) -> Query {
        int pick = depth > 0 ? rand_int(rng, 0, 4) : rand_int(rng, 0, 1);
        switch (pick) {
            case 0:
                return Query::node_equals(
                    geometry.node_name(rand_int(rng, 0, geometry.num_nodes() - 1)),
                    geometry.states().symbol(rand_int(rng, 0, geometry.states().size() - 1)));
            case 1:
                return Query::nodes_same(
                    geometry.node_name(rand_int(rng, 0, geometry.num_nodes() - 1)),
                    geometry.node_name(rand_int(rng, 0, geometry.num_nodes() - 1)));
            case 2:
                return Query::negation(gen(depth - 1));
            case 3:
                return Query::conjunction(gen(depth - 1), gen(depth - 1));
            default:
                return Query::disjunction(gen(depth - 1), gen(depth - 1));
        }
    };
    return gen(2);
}

namespace {

bool is_path(const Geometry& g) {
    if (g.num_nodes() < 2 || g.num_edges() != g.num_nodes() - 1) return false;
    std::vector<int> degree(g.num_nodes(), 0);
    for (const auto& e : g.edges()) {
        ++degree[e.a];
        ++degree[e.b];
    }
    int leaves = 0;
    for (int d : degree) {
        if (d > 2) return false;
        if (d == 0) return false;
        if (d == 1) ++leaves;
    }
    if (leaves != 2) return false;
    // Degrees alone can be fooled by parallel edges plus a separate
    // component; walk from one leaf and require full coverage.
    std::vector<std::vector<int>> adj(g.num_nodes());
    for (const auto& e : g.edges()) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    int start = 0;
    while (degree[start] != 1) ++start;
    std::vector<bool> seen(g.num_nodes(), false);
    std::vector<int> stack{start};
    int visited = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = true;
        ++visited;
        for (int w : adj[v]) {
            if (!seen[w]) stack.push_back(w);
        }
    }
    return visited == g.num_nodes();
}

Query endpoint_query(std::mt19937_64& rng, const Geometry& g) {
    std::vector<int> degree(g.num_nodes(), 0);
    for (const auto& e : g.edges()) {
        ++degree[e.a];
        ++degree[e.b];
    }
    std::vector<std::string> ends;
    for (int i = 0; i < g.num_nodes(); ++i) {
        if (degree[i] == 1) ends.push_back(g.node_name(i));
    }
    if (chance(rng, 0.5)) return Query::nodes_same(ends[0], ends[1]);
    return Query::node_equals(ends[rand_int(rng, 0, 1)],
                              g.states().symbol(rand_int(rng, 0, g.states().size() - 1)));
}

bool check_one_equivalence(const Geometry& g, const Evidence& ev, const Query& q,
                           std::mt19937_64& rng, CheckReport& report) {
    MicrostateCount oracle = count_matching(g, ev, q);
    WeightedCount fast = weighted_count(g, ev, q);
    bool ok = oracle.matching == fast.matching && oracle.total == fast.total;
    std::string mismatch_engine = "weighted_count";
    WeightedCount second = fast;
    if (ok && is_path(g)) {
        Query eq = endpoint_query(rng, g);
        MicrostateCount oracle_ends = count_matching(g, ev, eq);
        second = eliminate_chain(g, ev, eq);
        if (oracle_ends.matching != second.matching || oracle_ends.total != second.total) {
            ok = false;
            mismatch_engine = "eliminate_chain (query " + eq.to_string() + ")";
            oracle = oracle_ends;
        }
    }
    ++report.cases_run;
    if (!ok) {
        ++report.failures;
        if (!report.counterexample) {
            std::ostringstream out;
            out << "engine mismatch vs " << mismatch_engine << "\n"
                << describe_case(g, ev, q) << "\noracle: " << oracle.matching.str() << "/"
                << oracle.total.str() << "\nother:  " << second.matching.str() << "/"
                << second.total.str();
            report.counterexample = out.str();
        }
    }
    return ok;
}

}  // namespace

CheckReport engine_equivalence_suite(const CheckOptions& opts,
                                     const std::vector<Geometry>& extra_geometries) {
    std::mt19937_64 rng(opts.seed);
    CheckReport report;
    for (const auto& g : extra_geometries) {
        for (int i = 0; i < 5; ++i) {
            check_one_equivalence(g, random_evidence(rng, g), random_query(rng, g), rng,
                                  report);
        }
    }
    while (report.cases_run < opts.cases) {
        Geometry g = random_geometry(rng, opts);
        check_one_equivalence(g, random_evidence(rng, g), random_query(rng, g), rng,
                              report);
    }
    return report;
}

CheckReport order_invariance_suite(const CheckOptions& opts, int permutations,
                                   const std::vector<Geometry>& extra_geometries) {
    std::mt19937_64 rng(opts.seed ^ 0x5eed);
    CheckReport report;
    while (report.cases_run < opts.cases) {
        size_t warmup = extra_geometries.size() * 5;
        bool from_extra = static_cast<size_t>(report.cases_run) < warmup;
        Geometry g = from_extra
                         ? extra_geometries[report.cases_run % extra_geometries.size()]
                         : random_geometry(rng, opts);
        if (!from_extra && g.num_nodes() < 2) continue;

        // Draw atoms consistent with one concrete microstate so the set
        // is guaranteed to keep support in every order.
        std::vector<Microstate> all = enumerate_microstates(g, Evidence());
        if (all.empty()) continue;
        const Microstate& witness = all[rand_int(rng, 0, static_cast<int>(all.size()) - 1)];
        std::vector<EvidenceAtom> atoms;
        for (int i = 0; i < g.num_nodes(); ++i) {
            if (chance(rng, 0.5)) {
                atoms.push_back(NodeIs{g.node_name(i),
                                       g.states().symbol(witness.node_states[i])});
            }
        }
        if (atoms.empty()) continue;

        Query q = random_query(rng, g);
        std::optional<Rational> reference;
        bool ok = true;
        std::vector<EvidenceAtom> order = atoms;
        for (int p = 0; p < permutations && ok; ++p) {
            std::shuffle(order.begin(), order.end(), rng);
            UpdateSession session({g});
            for (const auto& atom : order) session.learn(atom);
            Rational value = session.query(q);
            if (!reference) {
                reference = value;
            } else if (*reference != value) {
                ok = false;
            }
        }
        ++report.cases_run;
        if (!ok) {
            ++report.failures;
            if (!report.counterexample) {
                report.counterexample =
                    "order-dependent posterior\n" + describe_case(g, Evidence(), q);
            }
        }
    }
    return report;
}

}  // namespace aao
