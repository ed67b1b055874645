#include "aao/inference.hpp"

#include <algorithm>

namespace aao {

namespace {

WeightedCount run_engine(const Query& query, const Geometry& geometry,
                         const Evidence& evidence, Engine engine,
                         std::uint64_t size_guard) {
    if (engine == Engine::Oracle) {
        MicrostateCount c = count_matching(geometry, evidence, query, size_guard);
        return WeightedCount{c.matching, c.total};
    }
    return weighted_count(geometry, evidence, query, size_guard);
}

Rational reduce(const BigInt& matching, const BigInt& total) {
    if (total == 0) {
        throw ZeroSupportError("evidence excludes every microstate; "
                               "conditioning is undefined");
    }
    return Rational(matching, total);
}

// Evidence with GeometryIs atoms stripped, for applying a session's
// learned set to one concrete candidate geometry.
Evidence assignment_atoms(const Evidence& ev) {
    Evidence out = Evidence::with_deduced_edges();
    for (const auto& atom : ev.atoms()) {
        if (!std::holds_alternative<GeometryIs>(atom)) out.add(atom);
    }
    out.set_allow_edge_atoms(ev.allows_edge_atoms());
    return out;
}

}  // namespace

Rational probability(const Query& query, const Geometry& geometry,
                     const Evidence& evidence, Engine engine,
                     std::uint64_t size_guard) {
    WeightedCount c = run_engine(query, geometry, evidence, engine, size_guard);
    return reduce(c.matching, c.total);
}

const JointRow& JointTable::row(const std::vector<std::string>& states,
                                const StateAlphabet& alphabet) const {
    std::vector<int> key;
    key.reserve(states.size());
    for (const auto& s : states) key.push_back(alphabet.require(s));
    for (const auto& r : rows) {
        if (r.states == key) return r;
    }
    throw ModelError("no such row in joint table");
}

JointTable joint_table(const std::vector<std::string>& scope, const Geometry& geometry,
                       const Evidence& evidence, Engine engine,
                       std::uint64_t size_guard) {
    evidence.validate(geometry);
    std::vector<int> scope_idx;
    for (const auto& name : scope) scope_idx.push_back(geometry.require_node(name));

    JointTable table;
    table.scope = scope;
    table.total = 0;
    int k = geometry.states().size();

    // Lexicographic tuples, first scope node most significant.
    std::vector<int> tuple(scope.size(), 0);
    std::vector<BigInt> weights;
    bool more = true;
    while (more) {
        BigInt w = 0;
        // Pinning a scope node against existing contrary evidence means
        // the row is simply impossible: weight 0, not a contradiction.
        bool feasible = true;
        Evidence row_ev = evidence;
        for (size_t i = 0; i < scope.size() && feasible; ++i) {
            try {
                row_ev.add(NodeIs{scope[i], geometry.states().symbol(tuple[i])});
            } catch (const ContradictionError&) {
                feasible = false;
            }
        }
        if (feasible) {
            w = run_engine(Query::always(), geometry, row_ev, engine, size_guard).total;
        }
        table.rows.push_back(JointRow{tuple, w, Rational(0)});
        table.total += w;
        weights.push_back(w);

        more = false;
        for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
            if (++tuple[i] < k) {
                more = true;
                break;
            }
            tuple[i] = 0;
        }
        if (tuple.empty()) break;
    }
    if (table.total == 0) {
        throw ZeroSupportError("evidence excludes every microstate over scope");
    }
    for (auto& row : table.rows) row.prob = Rational(row.weight, table.total);
    return table;
}

const Rational& GeometryConditionalTable::at(const std::string& geometry_name) const {
    for (const auto& [name, value] : entries) {
        if (name == geometry_name) return value;
    }
    throw ModelError("no entry for geometry " + geometry_name);
}

GeometryConditionalTable geometry_conditional(const Query& query,
                                              const std::vector<Geometry>& geometries,
                                              const Evidence& evidence, Engine engine,
                                              std::uint64_t size_guard) {
    if (geometries.empty()) throw ModelError("geometry set is empty");
    if (evidence.geometry_name()) {
        throw ModelError("evidence already fixes the geometry; "
                         "query that geometry directly");
    }
    GeometryConditionalTable table;
    for (const auto& g : geometries) {
        query.validate(g);  // unknown node in any candidate is an error
        table.entries.emplace_back(g.name(),
                                   probability(query, g, evidence, engine, size_guard));
    }
    return table;
}

IndependenceReport independence_check(const Query& query,
                                      const std::vector<Geometry>& geometries,
                                      const Evidence& evidence, Engine engine,
                                      std::uint64_t size_guard) {
    GeometryConditionalTable table =
        geometry_conditional(query, geometries, evidence, engine, size_guard);
    bool independent = true;
    for (const auto& [name, value] : table.entries) {
        if (value != table.entries.front().second) {
            independent = false;
            break;
        }
    }
    return IndependenceReport{independent, table};
}

std::vector<EdgeColorPosterior> deduce_colors(const Geometry& geometry,
                                              const Evidence& evidence, Engine engine,
                                              std::uint64_t size_guard) {
    evidence.validate(geometry);
    BigInt total = run_engine(Query::always(), geometry, evidence, engine, size_guard).total;
    if (total == 0) {
        throw ZeroSupportError("evidence excludes every microstate");
    }
    std::vector<EdgeColorPosterior> out;
    for (int e = 0; e < geometry.num_edges(); ++e) {
        EdgeColorPosterior post{e, {}};
        const Edge& edge = geometry.edge(e);
        for (int c = 0; c < geometry.colors().size(); ++c) {
            Evidence pinned = evidence;
            pinned.set_allow_edge_atoms(true);
            BigInt w = 0;
            try {
                pinned.add(EdgeIs{geometry.node_name(edge.a), geometry.node_name(edge.b),
                                  geometry.colors().symbol(c)});
                w = run_engine(Query::always(), geometry, pinned, engine, size_guard).total;
            } catch (const ContradictionError&) {
                // evidence already pins this edge to another color
            }
            post.color_probs.push_back(Rational(w, total));
        }
        out.push_back(std::move(post));
    }
    return out;
}

ClassicalInfoState info_state(const Geometry& geometry, const Evidence& evidence,
                              std::uint64_t size_guard) {
    ClassicalInfoState state;
    state.microstates = enumerate_microstates(geometry, evidence, size_guard);
    if (state.microstates.empty()) {
        throw ZeroSupportError("evidence excludes every microstate");
    }
    Rational each(1, static_cast<BigInt>(state.microstates.size()));
    state.probs.assign(state.microstates.size(), each);
    return state;
}

UpdateSession::UpdateSession(std::vector<Geometry> geometries, Evidence initial,
                             std::uint64_t size_guard)
    : geometries_(std::move(geometries)),
      initial_(std::move(initial)),
      learned_(initial_),
      size_guard_(size_guard) {
    if (geometries_.empty()) throw ModelError("update session needs at least one geometry");
}

std::vector<const Geometry*> UpdateSession::candidates() const {
    std::vector<const Geometry*> out;
    auto fixed = learned_.geometry_name();
    for (const auto& g : geometries_) {
        if (!fixed || g.name() == *fixed) out.push_back(&g);
    }
    if (fixed && out.empty()) {
        throw ModelError("learned geometry " + *fixed + " is not in the session's set");
    }
    return out;
}

void UpdateSession::learn(EvidenceAtom atom) {
    if (learned_.contains(atom)) return;  // idempotent
    if (const auto* g = std::get_if<GeometryIs>(&atom)) {
        bool known = std::any_of(geometries_.begin(), geometries_.end(),
                                 [&](const Geometry& geo) { return geo.name() == g->geometry; });
        if (!known) throw ModelError("unknown geometry: " + g->geometry);
    }
    Evidence next = learned_;
    next.set_allow_edge_atoms(true);
    next.add(atom);  // throws ContradictionError on a clash

    // Reject atoms that leave no surviving microstate in any candidate
    // geometry; the session state must stay queryable.
    Evidence assignments = assignment_atoms(next);
    auto fixed = next.geometry_name();
    bool any_support = false;
    for (const auto& g : geometries_) {
        if (fixed && g.name() != *fixed) continue;
        assignments.validate(g);
        if (partition_function(g, assignments, size_guard_) > 0) {
            any_support = true;
        }
    }
    if (!any_support) {
        throw ZeroSupportError("atom '" + atom_to_string(atom) +
                               "' would exclude every microstate");
    }
    learned_ = std::move(next);
    log_.push_back(atom);
}

bool UpdateSession::geometry_known() const {
    return geometries_.size() == 1 || learned_.geometry_name().has_value();
}

const Geometry& UpdateSession::active_geometry() const {
    auto cands = candidates();
    if (cands.size() != 1) {
        throw ModelError("geometry is not yet known; use query_conditional");
    }
    return *cands.front();
}

Rational UpdateSession::query(const Query& q, Engine engine) const {
    return probability(q, active_geometry(), assignment_atoms(learned_), engine,
                       size_guard_);
}

GeometryConditionalTable UpdateSession::query_conditional(const Query& q,
                                                          Engine engine) const {
    GeometryConditionalTable table;
    Evidence assignments = assignment_atoms(learned_);
    for (const Geometry* g : candidates()) {
        q.validate(*g);
        table.entries.emplace_back(g->name(),
                                   probability(q, *g, assignments, engine, size_guard_));
    }
    return table;
}

JointTable UpdateSession::table(const std::vector<std::string>& scope,
                                Engine engine) const {
    return joint_table(scope, active_geometry(), assignment_atoms(learned_), engine,
                       size_guard_);
}

void UpdateSession::reset() {
    learned_ = initial_;
    log_.clear();
}

}  // namespace aao
