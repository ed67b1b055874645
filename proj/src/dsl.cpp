#include "aao/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace aao {

namespace {

struct Token {
    enum class Kind { Ident, Punct, Newline, End };
    Kind kind;
    std::string text;  // Ident text or single punct char
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { next(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        next();
        return t;
    }

private:
    void next() {
        // Newline-agnostic input: CRLF and lone CR normalize to Newline.
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t') {
                ++pos_;
                ++col_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '\r') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
        int line = line_, col = col_;
        if (pos_ >= text_.size()) {
            current_ = Token{Token::Kind::End, "", line, col};
            return;
        }
        char c = text_[pos_];
        if (c == '\n' || c == '\r') {
            ++pos_;
            if (c == '\r' && pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
            ++line_;
            col_ = 1;
            current_ = Token{Token::Kind::Newline, "\n", line, col};
            return;
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                ++pos_;
            }
            std::string word = text_.substr(start, pos_ - start);
            col_ += static_cast<int>(word.size());
            current_ = Token{Token::Kind::Ident, word, line, col};
            return;
        }
        static const std::string puncts = "{};=:-(),";
        if (puncts.find(c) != std::string::npos) {
            ++pos_;
            ++col_;
            current_ = Token{Token::Kind::Punct, std::string(1, c), line, col};
            return;
        }
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

[[noreturn]] void fail(const Token& t, const std::string& expected) {
    std::string found = t.kind == Token::Kind::End      ? "end of input"
                        : t.kind == Token::Kind::Newline ? "end of line"
                                                         : "'" + t.text + "'";
    throw ParseError(t.line, t.column, "expected " + expected + ", found " + found);
}

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ModelDocument parse_document() {
        ModelDocument doc;
        for (;;) {
            skip_newlines();
            if (at_end()) break;
            Token t = expect_ident("statement keyword");
            if (t.text == "states") {
                doc.states = ident_list_to_eol("state symbol");
            } else if (t.text == "colors") {
                doc.colors = ident_list_to_eol("color symbol");
            } else if (t.text == "constraint") {
                doc.constraints.push_back(parse_constraint());
            } else if (t.text == "geometry") {
                doc.geometry_specs.push_back(parse_geometry());
            } else if (t.text == "evidence") {
                doc.evidence.push_back(parse_evidence());
            } else if (t.text == "query") {
                doc.queries.push_back(parse_query_decl());
            } else if (t.text == "set") {
                doc.sets.push_back(parse_set());
            } else {
                throw ParseError(t.line, t.column, "unknown statement '" + t.text + "'");
            }
        }
        return doc;
    }

    Query parse_query_expr_to_end() {
        skip_newlines();
        Query q = parse_or();
        skip_newlines();
        if (!at_end()) fail(lex_.peek(), "end of query");
        return q;
    }

private:
    Lexer lex_;

    bool at_end() const { return lex_.peek().kind == Token::Kind::End; }

    void skip_newlines() {
        while (lex_.peek().kind == Token::Kind::Newline) lex_.take();
    }

    // Newlines and ';' both separate statements inside blocks.
    void skip_separators() {
        while (lex_.peek().kind == Token::Kind::Newline || is_punct(";")) lex_.take();
    }

    bool is_punct(const char* p) const {
        return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
    }

    bool is_ident(const char* word) const {
        return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == word;
    }

    Token expect_ident(const std::string& what) {
        if (lex_.peek().kind != Token::Kind::Ident) fail(lex_.peek(), what);
        return lex_.take();
    }

    void expect_punct(const char* p) {
        if (!is_punct(p)) fail(lex_.peek(), std::string("'") + p + "'");
        lex_.take();
    }

    std::vector<std::string> ident_list_to_eol(const std::string& what) {
        std::vector<std::string> out;
        out.push_back(expect_ident(what).text);
        while (lex_.peek().kind == Token::Kind::Ident) out.push_back(lex_.take().text);
        end_of_statement();
        return out;
    }

    void end_of_statement() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Newline || t.kind == Token::Kind::End ||
            (t.kind == Token::Kind::Punct && (t.text == ";" || t.text == "}"))) {
            if (t.kind == Token::Kind::Newline || (t.kind == Token::Kind::Punct && t.text == ";")) {
                lex_.take();
            }
            return;
        }
        fail(t, "end of statement");
    }

    ConstraintDecl parse_constraint() {
        ConstraintDecl decl;
        decl.color = expect_ident("color name").text;
        expect_punct(":");
        for (;;) {
            std::string a = expect_ident("state name").text;
            expect_punct("-");
            std::string b = expect_ident("state name").text;
            decl.pairs.emplace_back(a, b);
            if (lex_.peek().kind != Token::Kind::Ident) break;
        }
        end_of_statement();
        return decl;
    }

    GeometrySpec parse_geometry() {
        GeometrySpec spec;
        spec.name = expect_ident("geometry name").text;
        expect_punct("{");
        for (;;) {
            skip_separators();
            if (is_punct("}")) {
                lex_.take();
                break;
            }
            Token t = expect_ident("'node', 'edge' or 'axis'");
            if (t.text == "node") {
                spec.nodes.push_back(expect_ident("node name").text);
                while (lex_.peek().kind == Token::Kind::Ident) {
                    spec.nodes.push_back(lex_.take().text);
                }
            } else if (t.text == "edge") {
                std::string a = expect_ident("node name").text;
                std::string b = expect_ident("node name").text;
                spec.edges.emplace_back(a, b);
            } else if (t.text == "axis") {
                AxisLabel label;
                label.axis = expect_ident("axis name").text;
                expect_punct("=");
                Token kind = expect_ident("'space' or 'time'");
                if (kind.text == "space") {
                    label.kind = AxisKind::Space;
                } else if (kind.text == "time") {
                    label.kind = AxisKind::Time;
                } else {
                    fail(kind, "'space' or 'time'");
                }
                spec.axes.push_back(label);
            } else {
                throw ParseError(t.line, t.column,
                                 "expected 'node', 'edge' or 'axis', found '" + t.text + "'");
            }
        }
        return spec;
    }

    EvidenceDecl parse_evidence() {
        EvidenceDecl decl;
        decl.name = expect_ident("evidence block name").text;
        expect_punct("{");
        for (;;) {
            skip_separators();
            if (is_punct("}")) {
                lex_.take();
                break;
            }
            Token t = expect_ident("evidence atom");
            if (t.text == "geometry") {
                decl.evidence.add(GeometryIs{expect_ident("geometry name").text});
            } else if (t.text == "deduced") {
                Token kw = expect_ident("'edge'");
                if (kw.text != "edge") fail(kw, "'edge'");
                std::string a = expect_ident("node name").text;
                std::string b = expect_ident("node name").text;
                expect_punct("=");
                std::string color = expect_ident("color name").text;
                decl.evidence.set_allow_edge_atoms(true);
                decl.evidence.add(EdgeIs{a, b, color});
            } else if (t.text == "edge") {
                // Colors are unobservable: pinning one needs 'deduced'.
                throw ModelError("edge evidence requires the 'deduced' keyword (line " +
                                 std::to_string(t.line) + ")");
            } else {
                expect_punct("=");
                decl.evidence.add(NodeIs{t.text, expect_ident("state name").text});
            }
        }
        return decl;
    }

    QueryDecl parse_query_decl() {
        std::string name = expect_ident("query name").text;
        expect_punct("=");
        Query q = parse_or();
        end_of_statement();
        return QueryDecl{name, q};
    }

    SetDecl parse_set() {
        SetDecl decl;
        decl.name = expect_ident("set name").text;
        expect_punct("{");
        for (;;) {
            skip_separators();
            if (is_punct("}")) {
                lex_.take();
                break;
            }
            decl.members.push_back(expect_ident("geometry name").text);
        }
        return decl;
    }

    // Precedence: not > and > or.
    Query parse_or() {
        Query lhs = parse_and();
        while (is_ident("or")) {
            lex_.take();
            lhs = Query::disjunction(std::move(lhs), parse_and());
        }
        return lhs;
    }

    Query parse_and() {
        Query lhs = parse_unary();
        while (is_ident("and")) {
            lex_.take();
            lhs = Query::conjunction(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    Query parse_unary() {
        if (is_ident("not")) {
            lex_.take();
            return Query::negation(parse_unary());
        }
        return parse_primary();
    }

    Query parse_primary() {
        if (is_punct("(")) {
            lex_.take();
            Query q = parse_or();
            expect_punct(")");
            return q;
        }
        Token t = expect_ident("predicate");
        if (t.text == "true") return Query::always();
        if (t.text == "same" && is_punct("(")) {
            lex_.take();
            std::string a = expect_ident("node name").text;
            expect_punct(",");
            std::string b = expect_ident("node name").text;
            expect_punct(")");
            return Query::nodes_same(a, b);
        }
        expect_punct("=");
        return Query::node_equals(t.text, expect_ident("state name").text);
    }
};

template <typename T>
void check_unique_names(const std::vector<T>& items, const char* what,
                        const std::string& (*name_of)(const T&)) {
    std::set<std::string> seen;
    for (const auto& item : items) {
        if (!seen.insert(name_of(item)).second) {
            throw ModelError(std::string("duplicate ") + what + " name: " + name_of(item));
        }
    }
}

}  // namespace

bool QueryDecl::operator==(const QueryDecl& other) const {
    return name == other.name && query.to_string() == other.query.to_string();
}

void ModelDocument::compile() {
    geometries.clear();
    if (geometry_specs.empty() && evidence.empty() && queries.empty() && sets.empty()) {
        return;  // empty document is valid
    }
    StateAlphabet state_alpha{states};
    ColorAlphabet color_alpha{colors};
    ConstraintTable law(color_alpha.size(), state_alpha.size());
    for (const auto& decl : constraints) {
        int c = color_alpha.require(decl.color);
        for (const auto& [a, b] : decl.pairs) {
            law.allow(c, state_alpha.require(a), state_alpha.require(b));
        }
    }

    std::set<std::string> geometry_names;
    for (const auto& spec : geometry_specs) {
        if (!geometry_names.insert(spec.name).second) {
            throw ModelError("duplicate geometry name: " + spec.name);
        }
        geometries.emplace_back(spec, state_alpha, color_alpha, law);
    }

    auto node_exists_somewhere = [this](const std::string& node) {
        return std::any_of(geometries.begin(), geometries.end(),
                           [&](const Geometry& g) { return g.has_node(node); });
    };
    auto edge_exists_somewhere = [this](const std::string& a, const std::string& b) {
        return std::any_of(geometries.begin(), geometries.end(),
                           [&](const Geometry& g) { return g.find_edge(a, b) >= 0; });
    };

    std::set<std::string> evidence_names;
    for (const auto& decl : evidence) {
        if (!evidence_names.insert(decl.name).second) {
            throw ModelError("duplicate evidence block name: " + decl.name);
        }
        for (const auto& atom : decl.evidence.atoms()) {
            if (const auto* n = std::get_if<NodeIs>(&atom)) {
                if (!node_exists_somewhere(n->node)) {
                    throw ModelError("evidence references unknown node: " + n->node);
                }
                state_alpha.require(n->state);
            } else if (const auto* e = std::get_if<EdgeIs>(&atom)) {
                if (!edge_exists_somewhere(e->node_a, e->node_b)) {
                    throw ModelError("evidence references unknown edge: " + e->node_a +
                                     "-" + e->node_b);
                }
                color_alpha.require(e->color);
            } else {
                const auto& g = std::get<GeometryIs>(atom);
                if (!geometry_names.count(g.geometry)) {
                    throw ModelError("evidence references unknown geometry: " + g.geometry);
                }
            }
        }
    }

    std::set<std::string> query_names;
    for (const auto& decl : queries) {
        if (!query_names.insert(decl.name).second) {
            throw ModelError("duplicate query name: " + decl.name);
        }
        for (const auto& node : decl.query.referenced_nodes()) {
            if (!node_exists_somewhere(node)) {
                throw ModelError("query " + decl.name + " references unknown node: " + node);
            }
        }
    }

    std::set<std::string> set_names;
    for (const auto& decl : sets) {
        if (!set_names.insert(decl.name).second) {
            throw ModelError("duplicate set name: " + decl.name);
        }
        for (const auto& member : decl.members) {
            if (!geometry_names.count(member)) {
                throw ModelError("set " + decl.name + " references unknown geometry: " +
                                 member);
            }
        }
    }
}

const Geometry& ModelDocument::geometry(const std::string& name) const {
    for (const auto& g : geometries) {
        if (g.name() == name) return g;
    }
    throw ModelError("unknown geometry: " + name);
}

const Evidence& ModelDocument::evidence_block(const std::string& name) const {
    for (const auto& decl : evidence) {
        if (decl.name == name) return decl.evidence;
    }
    throw ModelError("unknown evidence block: " + name);
}

const Query& ModelDocument::query(const std::string& name) const {
    for (const auto& decl : queries) {
        if (decl.name == name) return decl.query;
    }
    throw ModelError("unknown query: " + name);
}

std::vector<Geometry> ModelDocument::geometry_set(const std::string& name) const {
    for (const auto& decl : sets) {
        if (decl.name == name) {
            std::vector<Geometry> out;
            for (const auto& member : decl.members) out.push_back(geometry(member));
            return out;
        }
    }
    throw ModelError("unknown geometry set: " + name);
}

bool ModelDocument::operator==(const ModelDocument& other) const {
    return states == other.states && colors == other.colors &&
           constraints == other.constraints && geometry_specs == other.geometry_specs &&
           evidence == other.evidence && queries == other.queries && sets == other.sets;
}

ModelDocument parse_model(const std::string& text) {
    Parser parser(text);
    ModelDocument doc = parser.parse_document();
    doc.compile();
    return doc;
}

Query parse_query(const std::string& text) {
    Parser parser(text);
    return parser.parse_query_expr_to_end();
}

std::string serialize_model(const ModelDocument& doc) {
    std::ostringstream out;
    if (!doc.states.empty()) {
        out << "states";
        for (const auto& s : doc.states) out << " " << s;
        out << "\n";
    }
    if (!doc.colors.empty()) {
        out << "colors";
        for (const auto& c : doc.colors) out << " " << c;
        out << "\n";
    }
    for (const auto& decl : doc.constraints) {
        out << "constraint " << decl.color << " :";
        for (const auto& [a, b] : decl.pairs) out << " " << a << "-" << b;
        out << "\n";
    }
    for (const auto& spec : doc.geometry_specs) {
        out << "geometry " << spec.name << " {\n";
        if (!spec.nodes.empty()) {
            out << "  node";
            for (const auto& n : spec.nodes) out << " " << n;
            out << "\n";
        }
        for (const auto& [a, b] : spec.edges) out << "  edge " << a << " " << b << "\n";
        for (const auto& axis : spec.axes) {
            out << "  axis " << axis.axis << " = "
                << (axis.kind == AxisKind::Time ? "time" : "space") << "\n";
        }
        out << "}\n";
    }
    for (const auto& decl : doc.evidence) {
        out << "evidence " << decl.name << " {\n";
        for (const auto& atom : decl.evidence.atoms()) {
            if (const auto* n = std::get_if<NodeIs>(&atom)) {
                out << "  " << n->node << " = " << n->state << "\n";
            } else if (const auto* e = std::get_if<EdgeIs>(&atom)) {
                out << "  deduced edge " << e->node_a << " " << e->node_b << " = "
                    << e->color << "\n";
            } else {
                out << "  geometry " << std::get<GeometryIs>(atom).geometry << "\n";
            }
        }
        out << "}\n";
    }
    for (const auto& decl : doc.queries) {
        out << "query " << decl.name << " = " << decl.query.to_string() << "\n";
    }
    for (const auto& decl : doc.sets) {
        out << "set " << decl.name << " {";
        for (const auto& member : decl.members) out << " " << member;
        out << " }\n";
    }
    return out.str();
}

}  // namespace aao
