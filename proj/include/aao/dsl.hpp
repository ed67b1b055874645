#ifndef AAO_DSL_HPP
#define AAO_DSL_HPP

#include <string>
#include <vector>

#include "aao/model.hpp"

namespace aao {

// Raw declarations as written, kept for canonical serialization.
struct ConstraintDecl {
    std::string color;
    std::vector<std::pair<std::string, std::string>> pairs;
    bool operator==(const ConstraintDecl&) const = default;
};

struct EvidenceDecl {
    std::string name;
    Evidence evidence;
    bool operator==(const EvidenceDecl&) const = default;
};

struct QueryDecl {
    std::string name;
    Query query;
    bool operator==(const QueryDecl& other) const;
};

struct SetDecl {
    std::string name;
    std::vector<std::string> members;
    bool operator==(const SetDecl&) const = default;
};

// A parsed .aao file: shared law, geometries, evidence blocks, named
// queries, geometry sets. Compiled objects are built by parse_model
// after the syntax pass.
struct ModelDocument {
    std::vector<std::string> states;
    std::vector<std::string> colors;
    std::vector<ConstraintDecl> constraints;
    std::vector<GeometrySpec> geometry_specs;
    std::vector<EvidenceDecl> evidence;
    std::vector<QueryDecl> queries;
    std::vector<SetDecl> sets;

    // Compiled by parse_model (or compile()).
    std::vector<Geometry> geometries;

    void compile();  // semantic validation; throws ModelError

    const Geometry& geometry(const std::string& name) const;
    const Evidence& evidence_block(const std::string& name) const;
    const Query& query(const std::string& name) const;
    std::vector<Geometry> geometry_set(const std::string& name) const;

    bool operator==(const ModelDocument& other) const;
};

// Syntax errors carry 1-based line/column (ParseError); semantic errors
// (unknown names, self-loops) are reported after the parse (ModelError).
ModelDocument parse_model(const std::string& text);

Query parse_query(const std::string& text);

// Canonical formatting; parse(serialize(d)) structurally equals d.
std::string serialize_model(const ModelDocument& doc);

}  // namespace aao

#endif
