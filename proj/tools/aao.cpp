#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aao/checks.hpp"
#include "aao/dsl.hpp"
#include "aao/inference.hpp"
#include "aao/oracle.hpp"

namespace {

using aao::Engine;
using aao::Evidence;
using aao::Geometry;
using aao::JointTable;
using aao::ModelDocument;
using aao::Query;
using aao::Rational;
using nlohmann::ordered_json;

constexpr int kExitParseError = 1;
constexpr int kExitSemanticError = 2;
constexpr int kExitZeroSupport = 3;
constexpr int kExitMismatch = 4;

std::uint64_t size_guard() {
    if (const char* env = std::getenv("AAO_SIZE_GUARD")) {
        return std::strtoull(env, nullptr, 10);
    }
    return aao::kDefaultSizeGuard;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw aao::ModelError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ModelDocument load_model(const std::string& path) {
    return aao::parse_model(read_file(path));
}

// The sole evidence block is the implicit default; otherwise none.
Evidence resolve_evidence(const ModelDocument& doc, const std::string& name) {
    if (!name.empty()) return doc.evidence_block(name);
    if (doc.evidence.size() == 1) return doc.evidence.front().evidence;
    return Evidence();
}

std::vector<Geometry> resolve_geometries(const ModelDocument& doc,
                                         const std::string& geometry_name,
                                         const std::string& set_name,
                                         const Evidence& evidence) {
    if (!geometry_name.empty() && !set_name.empty()) {
        throw aao::ModelError("--geometry and --set are mutually exclusive");
    }
    if (!geometry_name.empty()) return {doc.geometry(geometry_name)};
    if (!set_name.empty()) return doc.geometry_set(set_name);
    if (auto fixed = evidence.geometry_name()) return {doc.geometry(*fixed)};
    if (doc.geometries.size() == 1) return {doc.geometries.front()};
    throw aao::ModelError("model has several geometries; pass --geometry or --set");
}

std::string render_value(const Rational& value, bool decimal) {
    std::string out = aao::to_fraction_string(value);
    if (decimal) out += " (" + aao::to_decimal_string(value) + ")";
    return out;
}

struct EvalResult {
    std::vector<std::pair<std::string, Rational>> entries;
};

EvalResult eval_with(const Query& query, const std::vector<Geometry>& geometries,
                     const Evidence& evidence, Engine engine) {
    EvalResult result;
    Evidence stripped = Evidence::with_deduced_edges();
    for (const auto& atom : evidence.atoms()) {
        if (!std::holds_alternative<aao::GeometryIs>(atom)) stripped.add(atom);
    }
    for (const auto& g : geometries) {
        query.validate(g);
        result.entries.emplace_back(
            g.name(), aao::probability(query, g, stripped, engine, size_guard()));
    }
    return result;
}

void print_eval(const EvalResult& result, const std::string& format, bool decimal,
                const std::string& engine_label) {
    if (format == "json") {
        ordered_json out;
        for (const auto& [name, value] : result.entries) {
            if (decimal) {
                out[name] = {{"exact", aao::to_fraction_string(value)},
                             {"decimal", aao::to_decimal_string(value)}};
            } else {
                out[name] = aao::to_fraction_string(value);
            }
        }
        std::cout << out.dump() << "\n";
    } else if (format == "tsv") {
        for (const auto& [name, value] : result.entries) {
            std::cout << name << "\t" << aao::to_fraction_string(value);
            if (decimal) std::cout << "\t" << aao::to_decimal_string(value);
            std::cout << "\n";
        }
    } else {
        for (const auto& [name, value] : result.entries) {
            std::cout << name << ": " << render_value(value, decimal) << "\n";
        }
    }
    (void)engine_label;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int run_eval(const std::string& model_path, const std::string& query_name,
             const std::string& evidence_name, const std::string& geometry_name,
             const std::string& set_name, const std::string& engine_name,
             const std::string& format, bool decimal) {
    ModelDocument doc = load_model(model_path);
    const Query& query = doc.query(query_name);
    Evidence evidence = resolve_evidence(doc, evidence_name);
    std::vector<Geometry> geometries =
        resolve_geometries(doc, geometry_name, set_name, evidence);

    if (engine_name == "both") {
        EvalResult oracle = eval_with(query, geometries, evidence, Engine::Oracle);
        EvalResult weighted = eval_with(query, geometries, evidence, Engine::Weighted);
        for (size_t i = 0; i < oracle.entries.size(); ++i) {
            if (oracle.entries[i].second != weighted.entries[i].second) {
                std::cerr << "engine mismatch on " << oracle.entries[i].first
                          << ": oracle " << aao::to_fraction_string(oracle.entries[i].second)
                          << " vs weighted "
                          << aao::to_fraction_string(weighted.entries[i].second) << "\n";
                return kExitMismatch;
            }
        }
        print_eval(oracle, format, decimal, "both");
        return 0;
    }
    Engine engine = engine_name == "oracle" ? Engine::Oracle : Engine::Weighted;
    print_eval(eval_with(query, geometries, evidence, engine), format, decimal,
               engine_name);
    return 0;
}

void print_table(const JointTable& table, const Geometry& geometry,
                 const std::string& format, bool decimal) {
    if (format == "json") {
        ordered_json out;
        out["scope"] = table.scope;
        out["total"] = table.total.str();
        out["rows"] = ordered_json::array();
        for (const auto& row : table.rows) {
            ordered_json jrow;
            jrow["states"] = ordered_json::array();
            for (int s : row.states) jrow["states"].push_back(geometry.states().symbol(s));
            jrow["count"] = row.weight.str();
            jrow["prob"] = aao::to_fraction_string(row.prob);
            if (decimal) jrow["decimal"] = aao::to_decimal_string(row.prob);
            out["rows"].push_back(jrow);
        }
        std::cout << out.dump() << "\n";
        return;
    }
    const char* sep = format == "tsv" ? "\t" : "  ";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.states.size(); ++i) {
            if (i) std::cout << (format == "tsv" ? "\t" : " ");
            std::cout << geometry.states().symbol(row.states[i]);
        }
        std::cout << sep << row.weight.str() << sep << aao::to_fraction_string(row.prob);
        if (decimal) std::cout << sep << aao::to_decimal_string(row.prob);
        std::cout << "\n";
    }
    if (format != "tsv") std::cout << "total" << sep << table.total.str() << "\n";
}

int run_table(const std::string& model_path, const std::string& scope_arg,
              const std::string& evidence_name, const std::string& geometry_name,
              const std::string& engine_name, const std::string& format, bool decimal) {
    ModelDocument doc = load_model(model_path);
    Evidence evidence = resolve_evidence(doc, evidence_name);
    std::vector<Geometry> geometries = resolve_geometries(doc, geometry_name, "", evidence);
    const Geometry& geometry = geometries.front();
    std::vector<std::string> scope = split_commas(scope_arg);
    if (scope.empty()) throw aao::ModelError("empty table scope");

    Evidence stripped = Evidence::with_deduced_edges();
    for (const auto& atom : evidence.atoms()) {
        if (!std::holds_alternative<aao::GeometryIs>(atom)) stripped.add(atom);
    }
    if (engine_name == "both") {
        JointTable oracle =
            aao::joint_table(scope, geometry, stripped, Engine::Oracle, size_guard());
        JointTable weighted =
            aao::joint_table(scope, geometry, stripped, Engine::Weighted, size_guard());
        for (size_t i = 0; i < oracle.rows.size(); ++i) {
            if (oracle.rows[i].weight != weighted.rows[i].weight) {
                std::cerr << "engine mismatch in table row " << i << "\n";
                return kExitMismatch;
            }
        }
        print_table(oracle, geometry, format, decimal);
        return 0;
    }
    Engine engine = engine_name == "oracle" ? Engine::Oracle : Engine::Weighted;
    print_table(aao::joint_table(scope, geometry, stripped, engine, size_guard()),
                geometry, format, decimal);
    return 0;
}

int run_enumerate(const std::string& model_path, const std::string& evidence_name,
                  const std::string& geometry_name) {
    ModelDocument doc = load_model(model_path);
    Evidence evidence = resolve_evidence(doc, evidence_name);
    std::vector<Geometry> geometries = resolve_geometries(doc, geometry_name, "", evidence);
    const Geometry& geometry = geometries.front();
    Evidence stripped = Evidence::with_deduced_edges();
    for (const auto& atom : evidence.atoms()) {
        if (!std::holds_alternative<aao::GeometryIs>(atom)) stripped.add(atom);
    }
    for (const auto& ms : aao::enumerate_microstates(geometry, stripped, size_guard())) {
        std::cout << aao::microstate_to_string(geometry, ms) << "\n";
    }
    return 0;
}

// Interactive (or piped) learning loop. Transcripts are pure functions of
// the model file and the input script.
int run_session(const std::string& model_path, const std::string& evidence_name) {
    ModelDocument doc = load_model(model_path);
    if (doc.geometries.empty()) throw aao::ModelError("model has no geometries");
    Evidence initial = resolve_evidence(doc, evidence_name);
    aao::UpdateSession session(doc.geometries, initial, size_guard());
    bool interactive = isatty(fileno(stdin));

    const std::string active_query =
        doc.queries.empty() ? std::string() : doc.queries.front().name;

    auto show_query = [&](const Query& q, const std::string& label) {
        auto table = session.query_conditional(q);
        if (table.entries.size() == 1) {
            std::cout << label << " = " << aao::to_fraction_string(table.entries[0].second)
                      << "\n";
        } else {
            for (const auto& [name, value] : table.entries) {
                std::cout << label << " | " << name << " = "
                          << aao::to_fraction_string(value) << "\n";
            }
        }
    };

    auto show_active = [&]() {
        if (!active_query.empty()) show_query(doc.query(active_query), active_query);
    };

    std::string line;
    while (true) {
        if (interactive) std::cout << "> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        std::istringstream in(line);
        std::string word;
        if (!(in >> word) || word[0] == '#') continue;
        try {
            if (word == "quit" || word == "exit") {
                break;
            } else if (word == "reset") {
                session.reset();
                std::cout << "reset\n";
            } else if (word == "log") {
                for (const auto& atom : session.log()) {
                    std::cout << aao::atom_to_string(atom) << "\n";
                }
            } else if (word == "learn") {
                std::string first;
                if (!(in >> first)) throw aao::ModelError("usage: learn <node> = <state>");
                if (first == "geometry") {
                    std::string name;
                    if (!(in >> name)) throw aao::ModelError("usage: learn geometry <name>");
                    session.learn(aao::GeometryIs{name});
                } else {
                    std::string eq, state;
                    if (!(in >> eq >> state) || eq != "=") {
                        throw aao::ModelError("usage: learn <node> = <state>");
                    }
                    session.learn(aao::NodeIs{first, state});
                }
                show_active();
            } else if (word == "show") {
                std::string what;
                if (!(in >> what)) throw aao::ModelError("usage: show <query>|table <nodes>");
                if (what == "table") {
                    std::string scope_arg;
                    if (!(in >> scope_arg)) throw aao::ModelError("usage: show table <nodes>");
                    JointTable table = session.table(split_commas(scope_arg));
                    print_table(table, session.active_geometry(), "text", false);
                } else {
                    std::string rest;
                    std::getline(in, rest);
                    std::string text = what + rest;
                    bool named = std::any_of(doc.queries.begin(), doc.queries.end(),
                                             [&](const auto& d) { return d.name == what; });
                    if (named && rest.empty()) {
                        show_query(doc.query(what), what);
                    } else {
                        show_query(aao::parse_query(text), text);
                    }
                }
            } else {
                std::cout << "error: unknown command '" << word << "'\n";
            }
        } catch (const aao::ZeroSupportError& e) {
            std::cout << "error: " << e.what() << "\n";
        } catch (const aao::ContradictionError& e) {
            std::cout << "error: " << e.what() << "\n";
        } catch (const aao::ParseError& e) {
            std::cout << "error: " << e.what() << "\n";
        } catch (const aao::ModelError& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return 0;
}

int run_check(const std::string& model_path, int cases, int invariance_cases,
              int max_nodes, std::uint64_t seed) {
    ModelDocument doc = load_model(model_path);
    aao::CheckOptions opts;
    opts.cases = cases;
    opts.max_nodes = max_nodes;
    opts.seed = seed;

    aao::CheckReport equiv = aao::engine_equivalence_suite(opts, doc.geometries);
    std::cout << "engine equivalence: " << equiv.cases_run << " cases, "
              << equiv.failures << " failures\n";
    aao::CheckOptions inv_opts = opts;
    inv_opts.cases = invariance_cases;
    inv_opts.max_nodes = std::min(max_nodes, 6);
    aao::CheckReport order = aao::order_invariance_suite(inv_opts, 5, doc.geometries);
    std::cout << "order invariance:   " << order.cases_run << " cases, "
              << order.failures << " failures\n";

    if (!equiv.ok() || !order.ok()) {
        const auto& bad = !equiv.ok() ? equiv : order;
        std::cerr << "counterexample:\n" << *bad.counterexample << "\n";
        return kExitMismatch;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact all-at-once inference over constraint-graph models"};
    app.require_subcommand(1);

    std::string model_path, query_name, evidence_name, geometry_name, set_name;
    std::string engine_name = "weighted";
    std::string format = "text";
    std::string scope_arg;
    bool decimal = false;
    int cases = 1000, invariance_cases = 200, max_nodes = 10;
    std::uint64_t seed = 20240317;

    auto add_engine_flags = [&](CLI::App* cmd) {
        cmd->add_option("--engine", engine_name, "oracle | weighted | both")
            ->check(CLI::IsMember({"oracle", "weighted", "both"}));
        cmd->add_option("--format", format, "text | json | tsv")
            ->check(CLI::IsMember({"text", "json", "tsv"}));
        cmd->add_flag("--decimal", decimal, "also print 6-place decimals");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate a named query");
    eval->add_option("model", model_path)->required();
    eval->add_option("query", query_name)->required();
    eval->add_option("--evidence", evidence_name, "evidence block name");
    eval->add_option("--geometry", geometry_name, "geometry name");
    eval->add_option("--set", set_name, "geometry set name");
    add_engine_flags(eval);

    CLI::App* table = app.add_subcommand("table", "print a joint probability table");
    table->add_option("model", model_path)->required();
    table->add_option("--scope", scope_arg, "comma-separated node list")->required();
    table->add_option("--evidence", evidence_name, "evidence block name");
    table->add_option("--geometry", geometry_name, "geometry name");
    add_engine_flags(table);

    CLI::App* session = app.add_subcommand("session", "interactive update session");
    session->add_option("model", model_path)->required();
    session->add_option("--evidence", evidence_name, "initial evidence block");

    CLI::App* check = app.add_subcommand("check", "engine-equivalence and order-invariance suites");
    check->add_option("model", model_path)->required();
    check->add_option("--cases", cases, "equivalence cases");
    check->add_option("--invariance-cases", invariance_cases, "order-invariance cases");
    check->add_option("--max-nodes", max_nodes, "random geometry node bound");
    check->add_option("--seed", seed, "random seed");

    CLI::App* enumerate = app.add_subcommand("enumerate", "dump the oracle's microstate list");
    enumerate->add_option("model", model_path)->required();
    enumerate->add_option("--evidence", evidence_name, "evidence block name");
    enumerate->add_option("--geometry", geometry_name, "geometry name");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) {
            return run_eval(model_path, query_name, evidence_name, geometry_name, set_name,
                            engine_name, format, decimal);
        }
        if (table->parsed()) {
            return run_table(model_path, scope_arg, evidence_name, geometry_name,
                             engine_name, format, decimal);
        }
        if (session->parsed()) return run_session(model_path, evidence_name);
        if (check->parsed()) {
            return run_check(model_path, cases, invariance_cases, max_nodes, seed);
        }
        if (enumerate->parsed()) {
            return run_enumerate(model_path, evidence_name, geometry_name);
        }
    } catch (const aao::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const aao::ZeroSupportError& e) {
        std::cerr << "zero support: " << e.what() << "\n";
        return kExitZeroSupport;
    } catch (const aao::ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemanticError;
    }
    return 0;
}
