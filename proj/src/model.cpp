#include "aao/model.hpp"

#include <algorithm>
#include <sstream>

namespace aao {

namespace {

std::unordered_map<std::string, int> build_index(const std::vector<std::string>& symbols,
                                                 const char* what) {
    if (symbols.empty()) {
        throw ModelError(std::string(what) + " alphabet must be nonempty");
    }
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(symbols.size()); ++i) {
        if (!index.emplace(symbols[i], i).second) {
            throw ModelError(std::string("duplicate ") + what + " symbol: " + symbols[i]);
        }
    }
    return index;
}

}  // namespace

StateAlphabet::StateAlphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)), index_(build_index(symbols_, "state")) {}

int StateAlphabet::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int StateAlphabet::require(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) throw ModelError("unknown state: " + name);
    return i;
}

ColorAlphabet::ColorAlphabet(std::vector<std::string> symbols, bool observable)
    : symbols_(std::move(symbols)),
      index_(build_index(symbols_, "color")),
      observable_(observable) {}

int ColorAlphabet::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int ColorAlphabet::require(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) throw ModelError("unknown color: " + name);
    return i;
}

ConstraintTable::ConstraintTable(int num_colors, int num_states)
    : num_colors_(num_colors),
      num_states_(num_states),
      cells_(static_cast<size_t>(num_colors) * num_states * num_states, 0) {}

void ConstraintTable::allow(int color, int state_a, int state_b, bool symmetric) {
    cells_.at((static_cast<size_t>(color) * num_states_ + state_a) * num_states_ + state_b) = 1;
    if (symmetric) {
        cells_.at((static_cast<size_t>(color) * num_states_ + state_b) * num_states_ + state_a) = 1;
    }
}

bool ConstraintTable::allowed(int color, int state_a, int state_b) const {
    return cells_.at((static_cast<size_t>(color) * num_states_ + state_a) * num_states_ +
                     state_b) != 0;
}

Geometry::Geometry(GeometrySpec spec, StateAlphabet states, ColorAlphabet colors,
                   ConstraintTable law)
    : name_(std::move(spec.name)),
      nodes_(std::move(spec.nodes)),
      states_(std::move(states)),
      colors_(std::move(colors)),
      law_(std::move(law)),
      axes_(std::move(spec.axes)) {
    if (law_.num_states() != states_.size() || law_.num_colors() != colors_.size()) {
        throw ModelError("constraint table does not cover the alphabets (incomplete law)");
    }
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
        if (!node_index_.emplace(nodes_[i], i).second) {
            throw ModelError("duplicate node name: " + nodes_[i]);
        }
    }
    edges_.reserve(spec.edges.size());
    for (const auto& [a, b] : spec.edges) {
        int ia = node_index(a);
        int ib = node_index(b);
        if (ia < 0) throw ModelError("edge endpoint does not exist: " + a);
        if (ib < 0) throw ModelError("edge endpoint does not exist: " + b);
        if (ia == ib) throw ModelError("self-loop on node: " + a);
        edges_.push_back(Edge{ia, ib});
    }
}

std::string Geometry::edge_name(int i) const {
    const Edge& e = edges_.at(i);
    return nodes_[e.a] + "-" + nodes_[e.b];
}

bool Geometry::has_node(const std::string& name) const {
    return node_index_.count(name) != 0;
}

int Geometry::node_index(const std::string& name) const {
    auto it = node_index_.find(name);
    return it == node_index_.end() ? -1 : it->second;
}

int Geometry::require_node(const std::string& name) const {
    int i = node_index(name);
    if (i < 0) throw ModelError("unknown node '" + name + "' in geometry " + name_);
    return i;
}

int Geometry::find_edge(const std::string& a, const std::string& b) const {
    int ia = node_index(a);
    int ib = node_index(b);
    if (ia < 0 || ib < 0) return -1;
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        if ((edges_[i].a == ia && edges_[i].b == ib) ||
            (edges_[i].a == ib && edges_[i].b == ia)) {
            return i;
        }
    }
    return -1;
}

int Geometry::require_edge(const std::string& a, const std::string& b) const {
    int i = find_edge(a, b);
    if (i < 0) throw ModelError("unknown edge " + a + "-" + b + " in geometry " + name_);
    return i;
}

Geometry Geometry::with_axes(std::vector<AxisLabel> axes) const {
    Geometry copy = *this;
    copy.axes_ = std::move(axes);
    return copy;
}

std::string atom_to_string(const EvidenceAtom& atom) {
    if (const auto* n = std::get_if<NodeIs>(&atom)) {
        return n->node + " = " + n->state;
    }
    if (const auto* e = std::get_if<EdgeIs>(&atom)) {
        return "edge " + e->node_a + " " + e->node_b + " = " + e->color;
    }
    return "geometry " + std::get<GeometryIs>(atom).geometry;
}

Evidence Evidence::with_deduced_edges() {
    Evidence ev;
    ev.allow_edge_atoms_ = true;
    return ev;
}

void Evidence::add(EvidenceAtom atom) {
    if (contains(atom)) return;
    if (const auto* n = std::get_if<NodeIs>(&atom)) {
        for (const auto& existing : atoms_) {
            const auto* other = std::get_if<NodeIs>(&existing);
            if (other && other->node == n->node && other->state != n->state) {
                throw ContradictionError("node " + n->node + " already pinned to " +
                                         other->state + ", cannot also be " + n->state);
            }
        }
    } else if (const auto* e = std::get_if<EdgeIs>(&atom)) {
        if (!allow_edge_atoms_) {
            throw ModelError("edge colors are not directly measured; "
                             "set the deduction flag to pin edge " +
                             e->node_a + "-" + e->node_b);
        }
        for (const auto& existing : atoms_) {
            const auto* other = std::get_if<EdgeIs>(&existing);
            if (other && ((other->node_a == e->node_a && other->node_b == e->node_b) ||
                          (other->node_a == e->node_b && other->node_b == e->node_a)) &&
                other->color != e->color) {
                throw ContradictionError("edge " + e->node_a + "-" + e->node_b +
                                         " already pinned to " + other->color);
            }
        }
    } else {
        const auto& g = std::get<GeometryIs>(atom);
        for (const auto& existing : atoms_) {
            const auto* other = std::get_if<GeometryIs>(&existing);
            if (other && other->geometry != g.geometry) {
                throw ContradictionError("geometry already learned as " + other->geometry +
                                         ", cannot also be " + g.geometry);
            }
        }
    }
    atoms_.push_back(std::move(atom));
}

bool Evidence::contains(const EvidenceAtom& atom) const {
    return std::find(atoms_.begin(), atoms_.end(), atom) != atoms_.end();
}

std::optional<std::string> Evidence::geometry_name() const {
    for (const auto& atom : atoms_) {
        if (const auto* g = std::get_if<GeometryIs>(&atom)) return g->geometry;
    }
    return std::nullopt;
}

void Evidence::validate(const Geometry& geometry) const {
    for (const auto& atom : atoms_) {
        if (const auto* n = std::get_if<NodeIs>(&atom)) {
            geometry.require_node(n->node);
            geometry.states().require(n->state);
        } else if (const auto* e = std::get_if<EdgeIs>(&atom)) {
            geometry.require_edge(e->node_a, e->node_b);
            geometry.colors().require(e->color);
        } else {
            const auto& g = std::get<GeometryIs>(atom);
            if (g.geometry != geometry.name()) {
                throw ModelError("evidence names geometry " + g.geometry +
                                 " but was applied to " + geometry.name());
            }
        }
    }
}

Evidence Evidence::plus(EvidenceAtom atom) const {
    Evidence copy = *this;
    copy.add(std::move(atom));
    return copy;
}

bool Evidence::operator==(const Evidence& other) const {
    // Set semantics: order of learning is irrelevant.
    if (atoms_.size() != other.atoms_.size()) return false;
    for (const auto& atom : atoms_) {
        if (!other.contains(atom)) return false;
    }
    return true;
}

struct Query::Expr {
    enum class Kind { NodeEquals, NodesSame, Not, And, Or, True };
    Kind kind;
    std::string node_a;
    std::string node_b;  // NodesSame only
    std::string state;   // NodeEquals only
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;

    bool eval_indexed(const Geometry& g, const std::vector<int>& states) const;
    bool eval_named(const std::map<std::string, std::string>& m) const;
    void collect_nodes(std::vector<std::string>& out) const;
    void print(std::ostringstream& out, int parent_prec) const;
    static int precedence(Kind k);
};

Query Query::node_equals(std::string node, std::string state) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::NodeEquals;
    e->node_a = std::move(node);
    e->state = std::move(state);
    return Query(e);
}

Query Query::nodes_same(std::string node_a, std::string node_b) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::NodesSame;
    e->node_a = std::move(node_a);
    e->node_b = std::move(node_b);
    return Query(e);
}

Query Query::negation(Query inner) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Not;
    e->lhs = std::move(inner.root_);
    return Query(e);
}

Query Query::conjunction(Query lhs, Query rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::And;
    e->lhs = std::move(lhs.root_);
    e->rhs = std::move(rhs.root_);
    return Query(e);
}

Query Query::disjunction(Query lhs, Query rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Or;
    e->lhs = std::move(lhs.root_);
    e->rhs = std::move(rhs.root_);
    return Query(e);
}

Query Query::always() {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::True;
    return Query(e);
}

bool Query::Expr::eval_indexed(const Geometry& g, const std::vector<int>& states) const {
    switch (kind) {
        case Kind::NodeEquals:
            return states.at(g.require_node(node_a)) == g.states().require(state);
        case Kind::NodesSame:
            return states.at(g.require_node(node_a)) == states.at(g.require_node(node_b));
        case Kind::Not:
            return !lhs->eval_indexed(g, states);
        case Kind::And:
            return lhs->eval_indexed(g, states) && rhs->eval_indexed(g, states);
        case Kind::Or:
            return lhs->eval_indexed(g, states) || rhs->eval_indexed(g, states);
        case Kind::True:
            return true;
    }
    return false;
}

namespace {

const std::string& lookup(const std::map<std::string, std::string>& m,
                          const std::string& node) {
    auto it = m.find(node);
    if (it == m.end()) throw ModelError("assignment missing node: " + node);
    return it->second;
}

}  // namespace

bool Query::Expr::eval_named(const std::map<std::string, std::string>& m) const {
    switch (kind) {
        case Kind::NodeEquals:
            return lookup(m, node_a) == state;
        case Kind::NodesSame:
            return lookup(m, node_a) == lookup(m, node_b);
        case Kind::Not:
            return !lhs->eval_named(m);
        case Kind::And:
            return lhs->eval_named(m) && rhs->eval_named(m);
        case Kind::Or:
            return lhs->eval_named(m) || rhs->eval_named(m);
        case Kind::True:
            return true;
    }
    return false;
}

void Query::Expr::collect_nodes(std::vector<std::string>& out) const {
    auto push = [&out](const std::string& n) {
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    };
    switch (kind) {
        case Kind::NodeEquals:
            push(node_a);
            break;
        case Kind::NodesSame:
            push(node_a);
            push(node_b);
            break;
        case Kind::Not:
            lhs->collect_nodes(out);
            break;
        case Kind::And:
        case Kind::Or:
            lhs->collect_nodes(out);
            rhs->collect_nodes(out);
            break;
        case Kind::True:
            break;
    }
}

// Precedence: or < and < not < atoms. Parenthesize only when needed.
int Query::Expr::precedence(Kind k) {
    switch (k) {
        case Kind::Or: return 1;
        case Kind::And: return 2;
        case Kind::Not: return 3;
        default: return 4;
    }
}

void Query::Expr::print(std::ostringstream& out, int parent_prec) const {
    int prec = precedence(kind);
    bool parens = prec < parent_prec;
    if (parens) out << "(";
    switch (kind) {
        case Kind::NodeEquals:
            out << node_a << " = " << state;
            break;
        case Kind::NodesSame:
            out << "same(" << node_a << ", " << node_b << ")";
            break;
        case Kind::Not:
            out << "not ";
            lhs->print(out, prec + 1);
            break;
        case Kind::And:
            lhs->print(out, prec);
            out << " and ";
            rhs->print(out, prec + 1);
            break;
        case Kind::Or:
            lhs->print(out, prec);
            out << " or ";
            rhs->print(out, prec + 1);
            break;
        case Kind::True:
            out << "true";
            break;
    }
    if (parens) out << ")";
}

bool Query::eval(const Geometry& geometry, const std::vector<int>& node_states) const {
    return root_->eval_indexed(geometry, node_states);
}

bool Query::eval(const std::map<std::string, std::string>& assignment) const {
    return root_->eval_named(assignment);
}

std::vector<std::string> Query::referenced_nodes() const {
    std::vector<std::string> out;
    root_->collect_nodes(out);
    return out;
}

void Query::validate(const Geometry& geometry) const {
    for (const auto& node : referenced_nodes()) {
        geometry.require_node(node);
    }
}

std::string Query::to_string() const {
    std::ostringstream out;
    root_->print(out, 0);
    return out.str();
}

StateAlphabet heads_tails() { return StateAlphabet({"H", "T"}); }

ColorAlphabet red_green_blue() { return ColorAlphabet({"R", "G", "B"}); }

ConstraintTable coin_law(const StateAlphabet& states, const ColorAlphabet& colors) {
    ConstraintTable law(colors.size(), states.size());
    for (int c = 0; c < colors.size(); ++c) {
        for (int a = 0; a < states.size(); ++a) {
            for (int b = 0; b < states.size(); ++b) {
                bool match = (a == b);
                if (c == 0 ? !match : match) law.allow(c, a, b);
            }
        }
    }
    return law;
}

}  // namespace aao
