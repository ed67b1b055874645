#ifndef AAO_MODEL_HPP
#define AAO_MODEL_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "aao/errors.hpp"

namespace aao {

// Ordered list of distinct state names. The declaration order is the
// canonical order used by every table and enumeration downstream.
class StateAlphabet {
public:
    explicit StateAlphabet(std::vector<std::string> symbols);

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& symbol(int i) const { return symbols_.at(i); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    // -1 if absent.
    int index_of(const std::string& name) const;
    int require(const std::string& name) const;

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, int> index_;
};

// Edge colors. Unobservable by default: evidence may not pin a color
// unless the deduction override is set on the Evidence.
class ColorAlphabet {
public:
    explicit ColorAlphabet(std::vector<std::string> symbols, bool observable = false);

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& symbol(int i) const { return symbols_.at(i); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    bool observable() const { return observable_; }
    int index_of(const std::string& name) const;
    int require(const std::string& name) const;

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, int> index_;
    bool observable_;
};

// The model's only law: which colors may connect which ordered pairs of
// endpoint states. Symmetric in the endpoints for undirected geometries.
class ConstraintTable {
public:
    ConstraintTable(int num_colors, int num_states);

    // Marks (color, a, b) allowed; also (color, b, a) when symmetric.
    void allow(int color, int state_a, int state_b, bool symmetric = true);
    bool allowed(int color, int state_a, int state_b) const;

    int num_colors() const { return num_colors_; }
    int num_states() const { return num_states_; }

    bool operator==(const ConstraintTable&) const = default;

private:
    int num_colors_;
    int num_states_;
    std::vector<char> cells_;  // [color][a][b]
};

enum class AxisKind { Space, Time };

struct AxisLabel {
    std::string axis;  // e.g. "vertical"
    AxisKind kind = AxisKind::Space;
    bool operator==(const AxisLabel&) const = default;
};

struct Edge {
    int a;
    int b;
    bool operator==(const Edge&) const = default;
};

struct GeometrySpec {
    std::string name;
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<AxisLabel> axes;
    bool operator==(const GeometrySpec&) const = default;
};

// A validated constraint graph: the experimental arrangement itself.
// Immutable after construction; node and edge order is declaration order.
class Geometry {
public:
    Geometry(GeometrySpec spec, StateAlphabet states, ColorAlphabet colors,
             ConstraintTable law);

    const std::string& name() const { return name_; }
    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::string& node_name(int i) const { return nodes_.at(i); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_.at(i); }
    std::string edge_name(int i) const;

    const StateAlphabet& states() const { return states_; }
    const ColorAlphabet& colors() const { return colors_; }
    const ConstraintTable& law() const { return law_; }
    const std::vector<AxisLabel>& axes() const { return axes_; }

    bool has_node(const std::string& name) const;
    int node_index(const std::string& name) const;   // -1 if absent
    int require_node(const std::string& name) const;
    // First edge joining the pair in either orientation, -1 if none.
    int find_edge(const std::string& a, const std::string& b) const;
    int require_edge(const std::string& a, const std::string& b) const;

    // Same graph with relabeled axes. Inert: no count or probability
    // may change (the test suites assert this exhaustively).
    Geometry with_axes(std::vector<AxisLabel> axes) const;

private:
    std::string name_;
    std::vector<std::string> nodes_;
    std::unordered_map<std::string, int> node_index_;
    std::vector<Edge> edges_;
    StateAlphabet states_;
    ColorAlphabet colors_;
    ConstraintTable law_;
    std::vector<AxisLabel> axes_;
};

struct NodeIs {
    std::string node;
    std::string state;
    bool operator==(const NodeIs&) const = default;
};
struct EdgeIs {
    std::string node_a;
    std::string node_b;
    std::string color;
    bool operator==(const EdgeIs&) const = default;
};
struct GeometryIs {
    std::string geometry;
    bool operator==(const GeometryIs&) const = default;
};
using EvidenceAtom = std::variant<NodeIs, EdgeIs, GeometryIs>;

std::string atom_to_string(const EvidenceAtom& atom);

// An unordered set of learned facts. Internal contradictions are rejected
// at insertion; consistency with a concrete geometry is checked by
// validate() and law-consistency later by the engines.
class Evidence {
public:
    Evidence() = default;

    // Colors are not directly measured; EdgeIs atoms require the flag.
    static Evidence with_deduced_edges();

    bool allows_edge_atoms() const { return allow_edge_atoms_; }
    void set_allow_edge_atoms(bool allow) { allow_edge_atoms_ = allow; }

    // Throws ContradictionError on a direct clash, ModelError for an
    // EdgeIs atom without the deduction flag. Re-adding an atom is a no-op.
    void add(EvidenceAtom atom);

    bool contains(const EvidenceAtom& atom) const;
    const std::vector<EvidenceAtom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }

    std::optional<std::string> geometry_name() const;

    // Unknown node/edge references. GeometryIs atoms naming a different
    // geometry are reported here as well.
    void validate(const Geometry& geometry) const;

    Evidence plus(EvidenceAtom atom) const;

    bool operator==(const Evidence& other) const;

private:
    std::vector<EvidenceAtom> atoms_;
    bool allow_edge_atoms_ = false;
};

// Boolean expression tree over node-state atoms. Immutable; cheap to copy.
class Query {
public:
    static Query node_equals(std::string node, std::string state);
    static Query nodes_same(std::string node_a, std::string node_b);
    static Query negation(Query inner);
    static Query conjunction(Query lhs, Query rhs);
    static Query disjunction(Query lhs, Query rhs);
    // Trivially-true predicate (matches every assignment).
    static Query always();

    // Evaluation over a complete indexed assignment; the engines' path.
    bool eval(const Geometry& geometry, const std::vector<int>& node_states) const;
    // Evaluation over a name -> state-name map.
    bool eval(const std::map<std::string, std::string>& assignment) const;

    // Node names referenced, in first-mention order.
    std::vector<std::string> referenced_nodes() const;
    // Throws ModelError if some referenced node is absent.
    void validate(const Geometry& geometry) const;

    std::string to_string() const;

private:
    struct Expr;
    explicit Query(std::shared_ptr<const Expr> root) : root_(std::move(root)) {}
    std::shared_ptr<const Expr> root_;
};

// The shipped default law: the first color joins differing states, every
// remaining color joins equal states. With H/T and R/G/B this is the
// coins-and-links law (red across, green/blue along).
StateAlphabet heads_tails();
ColorAlphabet red_green_blue();
ConstraintTable coin_law(const StateAlphabet& states, const ColorAlphabet& colors);

}  // namespace aao

#endif
