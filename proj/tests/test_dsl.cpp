#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "aao/dsl.hpp"
#include "aao/inference.hpp"

#include "test_support.hpp"

using namespace aao;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kMiniModel = R"(
states H T
colors R G B
constraint R : H-T
constraint G : H-H T-T
constraint B : H-H T-T
geometry pair { node a b ; edge a b }
evidence seen { a = H }
query match = same(a, b)
set solo { pair }
)";

}  // namespace

TEST_CASE("parsing the shipped fig2 file") {
    ModelDocument doc = parse_model(read_file(testsupport::model_path("fig2.aao")));
    CHECK(doc.geometries.size() == 2);
    CHECK(doc.evidence.size() == 1);
    CHECK(doc.queries.size() == 1);
    CHECK(doc.sets.size() == 1);
    CHECK(doc.geometry("fig2a").num_edges() == 2);
    CHECK(doc.geometry("fig2b").num_edges() == 4);
    CHECK(doc.query("same_lr").to_string() == "same(left, right)");
}

TEST_CASE("empty file is a valid empty document") {
    ModelDocument doc = parse_model("");
    CHECK(doc.geometries.empty());
    CHECK(doc.queries.empty());
    CHECK(parse_model("  \n# only a comment\n").geometries.empty());
}

TEST_CASE("semicolons and newlines both separate block statements") {
    ModelDocument doc = parse_model(kMiniModel);
    CHECK(doc.geometry("pair").num_nodes() == 2);
    CHECK(doc.geometry_set("solo").size() == 1);
}

TEST_CASE("CRLF input parses identically") {
    std::string crlf;
    for (char c : std::string(kMiniModel)) {
        if (c == '\n') crlf += "\r\n";
        else crlf += c;
    }
    CHECK(parse_model(crlf) == parse_model(kMiniModel));
}

TEST_CASE("syntax errors carry 1-based positions") {
    SUBCASE("bad token in a pair list") {
        try {
            parse_model("states H T\ncolors R\nconstraint R : H-\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 3);
            CHECK(e.column > 0);
        }
    }
    SUBCASE("query with a dangling comma") {
        try {
            parse_query("same(left,)");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 1);
            CHECK(e.column == 11);
        }
    }
    SUBCASE("unknown statement") {
        CHECK_THROWS_AS(parse_model("frobnicate a b\n"), ParseError);
    }
}

TEST_CASE("semantic errors are reported after the parse") {
    SUBCASE("self-loop edge") {
        CHECK_THROWS_AS(
            parse_model("states H T\ncolors R\nconstraint R : H-T\n"
                        "geometry g { node bottom ; edge bottom bottom }\n"),
            ModelError);
    }
    SUBCASE("edge to an unknown node") {
        CHECK_THROWS_AS(
            parse_model("states H T\ncolors R\nconstraint R : H-T\n"
                        "geometry g { node top ; edge top topp }\n"),
            ModelError);
    }
    SUBCASE("evidence for an unknown node") {
        CHECK_THROWS_AS(parse_model(std::string(kMiniModel) +
                                    "evidence bad { zz = H }\n"),
                        ModelError);
    }
    SUBCASE("edge evidence without the deduced keyword") {
        CHECK_THROWS_AS(parse_model(std::string(kMiniModel) +
                                    "evidence bad { edge a b = R }\n"),
                        ModelError);
    }
    SUBCASE("set with an unknown member") {
        CHECK_THROWS_AS(parse_model(std::string(kMiniModel) + "set bad { nope }\n"),
                        ModelError);
    }
}

TEST_CASE("query grammar and precedence") {
    CHECK(parse_query("same(left, right)").to_string() == "same(left, right)");
    CHECK(parse_query("left = H and right = H").to_string() == "left = H and right = H");
    // not > and > or
    Query q = parse_query("not a = H and b = H or same(a, b)");
    CHECK(q.to_string() == "not a = H and b = H or same(a, b)");
    CHECK(q.eval({{"a", "T"}, {"b", "H"}}));
    CHECK(parse_query("(a = H or b = H) and not same(a, b)")
              .eval({{"a", "H"}, {"b", "T"}}));
}

TEST_CASE("serialize/parse round trip on the shipped models") {
    for (const char* file : {"fig2.aao", "fig2_temporal.aao", "shoebox.aao", "chain3.aao"}) {
        CAPTURE(file);
        ModelDocument doc = parse_model(read_file(testsupport::model_path(file)));
        std::string text = serialize_model(doc);
        ModelDocument reparsed = parse_model(text);
        CHECK(reparsed == doc);
        // canonical form is a fixed point
        CHECK(serialize_model(reparsed) == text);
    }
}

namespace {

// Random well-formed documents for the round-trip property.
ModelDocument random_document(std::mt19937_64& rng) {
    auto rand_int = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    ModelDocument doc;
    int num_states = rand_int(2, 4);
    int num_colors = rand_int(1, 4);
    for (int i = 0; i < num_states; ++i) doc.states.push_back("s" + std::to_string(i));
    for (int i = 0; i < num_colors; ++i) doc.colors.push_back("k" + std::to_string(i));
    for (int c = 0; c < num_colors; ++c) {
        ConstraintDecl decl;
        decl.color = doc.colors[c];
        int pairs = rand_int(1, 3);
        for (int p = 0; p < pairs; ++p) {
            decl.pairs.emplace_back(doc.states[rand_int(0, num_states - 1)],
                                    doc.states[rand_int(0, num_states - 1)]);
        }
        doc.constraints.push_back(decl);
    }
    int num_geoms = rand_int(1, 3);
    for (int g = 0; g < num_geoms; ++g) {
        GeometrySpec spec;
        spec.name = "g" + std::to_string(g);
        int nodes = rand_int(1, 5);
        for (int n = 0; n < nodes; ++n) {
            spec.nodes.push_back("n" + std::to_string(n));
        }
        int edges = nodes >= 2 ? rand_int(0, 4) : 0;
        for (int e = 0; e < edges; ++e) {
            int a = rand_int(0, nodes - 1);
            int b = rand_int(0, nodes - 2);
            if (b >= a) ++b;
            spec.edges.emplace_back(spec.nodes[a], spec.nodes[b]);
        }
        if (rand_int(0, 1)) {
            spec.axes.push_back(
                AxisLabel{"vertical", rand_int(0, 1) ? AxisKind::Time : AxisKind::Space});
        }
        doc.geometry_specs.push_back(spec);
    }
    if (rand_int(0, 1)) {
        EvidenceDecl ev;
        ev.name = "e0";
        ev.evidence.add(NodeIs{"n0", doc.states[rand_int(0, num_states - 1)]});
        doc.evidence.push_back(ev);
    }
    QueryDecl q{"q0", Query::node_equals("n0", doc.states[0])};
    doc.queries.push_back(q);
    if (rand_int(0, 1)) {
        doc.sets.push_back(SetDecl{"all", {"g0"}});
    }
    doc.compile();
    return doc;
}

}  // namespace

TEST_CASE("round-trip property over generated documents") {
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 500; ++i) {
        ModelDocument doc = random_document(rng);
        std::string text = serialize_model(doc);
        CAPTURE(text);
        ModelDocument reparsed = parse_model(text);
        CHECK(reparsed == doc);
        CHECK(serialize_model(reparsed) == text);
    }
}

TEST_CASE("the shipped fig2 file evaluates end to end") {
    ModelDocument doc = parse_model(read_file(testsupport::model_path("fig2.aao")));
    const Evidence& base = doc.evidence_block("base");
    CHECK(probability(doc.query("same_lr"), doc.geometry("fig2a"), base) == Rational(5, 9));
    CHECK(probability(doc.query("same_lr"), doc.geometry("fig2b"), base) ==
          Rational(25, 41));
    auto table = geometry_conditional(doc.query("same_lr"), doc.geometry_set("fig2"), base);
    CHECK(table.at("fig2a") == Rational(5, 9));
    CHECK(table.at("fig2b") == Rational(25, 41));
}
