// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance <path-to-aao-binary> <models-dir>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aao/checks.hpp"
#include "aao/dsl.hpp"
#include "aao/inference.hpp"
#include "aao/scenarios.hpp"

using namespace aao;

namespace {

std::string g_aao_binary;
std::string g_model_dir;
int g_failures = 0;

void criterion(int number, const std::string& label, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0 && elapsed > time_limit_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("%s criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

Evidence bottom_h() {
    Evidence ev;
    ev.add(NodeIs{"bottom", "H"});
    return ev;
}

std::string run_piped(const std::string& script, const std::string& model) {
    std::string command = "printf '%s\\n' " + script + " | " + g_aao_binary + " session " +
                          g_model_dir + "/" + model;
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return output;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, n);
    pclose(pipe);
    return output;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool check_fig2a_goldens(const Geometry& g, std::string& detail) {
    for (Engine engine : {Engine::Oracle, Engine::Weighted}) {
        if (partition_function(g, bottom_h()) != 9) {
            detail = "total != 9";
            return false;
        }
        JointTable t = joint_table({"left", "right"}, g, bottom_h(), engine);
        int expected[4] = {4, 2, 2, 1};
        for (int i = 0; i < 4; ++i) {
            if (t.rows[i].weight != expected[i]) {
                detail = "pair counts differ";
                return false;
            }
        }
        if (probability(Query::nodes_same("left", "right"), g, bottom_h(), engine) !=
            Rational(5, 9)) {
            detail = "P(same) != 5/9";
            return false;
        }
    }
    return true;
}

bool check_fig2b_goldens(const Geometry& g, std::string& detail) {
    for (Engine engine : {Engine::Oracle, Engine::Weighted}) {
        JointTable full = joint_table({"left", "right", "top"}, g, bottom_h(), engine);
        if (full.total != 41) {
            detail = "total != 41";
            return false;
        }
        int expected_full[8] = {16, 4, 4, 4, 4, 4, 1, 4};
        for (int i = 0; i < 8; ++i) {
            if (full.rows[i].weight != expected_full[i]) {
                detail = "full table differs";
                return false;
            }
        }
        JointTable reduced = joint_table({"left", "right"}, g, bottom_h(), engine);
        int expected_reduced[4] = {20, 8, 8, 5};
        for (int i = 0; i < 4; ++i) {
            if (reduced.rows[i].weight != expected_reduced[i]) {
                detail = "reduced table differs";
                return false;
            }
        }
        if (probability(Query::nodes_same("left", "right"), g, bottom_h(), engine) !=
            Rational(25, 41)) {
            detail = "P(same) != 25/41";
            return false;
        }
    }
    return true;
}

bool check_conditional(const std::vector<Geometry>& geometries, std::string& detail) {
    Query same = Query::nodes_same("left", "right");
    GeometryConditionalTable t = geometry_conditional(same, geometries, bottom_h());
    if (t.at(geometries[0].name()) != Rational(5, 9) ||
        t.at(geometries[1].name()) != Rational(25, 41)) {
        detail = "conditional table differs";
        return false;
    }
    if (independence_check(same, geometries, bottom_h()).independent) {
        detail = "dependence not detected";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <aao-binary> <models-dir>\n";
        return 2;
    }
    g_aao_binary = argv[1];
    g_model_dir = argv[2];

    criterion(1, "three-coin V goldens: counts 4,2,2,1 of 9 and P(same)=5/9", 1.0,
              [](std::string& detail) {
                  return check_fig2a_goldens(fig2a().geometries.front(), detail);
              });

    criterion(2, "diamond goldens: 41 total, full and reduced tables, P(same)=25/41", 1.0,
              [](std::string& detail) {
                  return check_fig2b_goldens(fig2b().geometries.front(), detail);
              });

    criterion(3, "geometry-conditional table [5/9; 25/41] and dependence detected", 1.0,
              [](std::string& detail) {
                  return check_conditional(fig2_set().geometries, detail);
              });

    criterion(4, "update goldens via API and piped session", 0, [](std::string& detail) {
        ScenarioBundle set = fig2_set();
        UpdateSession session(set.geometries, bottom_h());
        session.learn(GeometryIs{"fig2b"});
        Query same = Query::nodes_same("left", "right");
        if (session.query(same) != Rational(25, 41)) {
            detail = "API: learning the diamond geometry did not give 25/41";
            return false;
        }
        session.learn(NodeIs{"left", "H"});
        session.learn(NodeIs{"right", "T"});
        JointTable t = session.table({"left", "right"});
        if (t.row({"H", "T"}, set.geometries.front().states()).prob != Rational(1)) {
            detail = "API: HT row is not certain";
            return false;
        }
        std::string out = run_piped(
            "'learn geometry fig2b' 'show same_lr' 'learn left = H' 'learn right = T' "
            "'show table left,right'",
            "fig2.aao");
        if (out.find("same_lr = 25/41") == std::string::npos) {
            detail = "session: 25/41 missing; got: " + out;
            return false;
        }
        if (out.find("H T  8  1/1") == std::string::npos) {
            detail = "session: certain HT row missing; got: " + out;
            return false;
        }
        return true;
    });

    criterion(5, "isolated pair of coins: P(same)=2/3", 0, [](std::string& detail) {
        ScenarioBundle pair = chain(1);
        Evidence none;  // unconditioned two-coin system
        for (Engine engine : {Engine::Oracle, Engine::Weighted}) {
            if (probability(pair.query("ends_same"), pair.geometries.front(), none,
                            engine) != Rational(2, 3)) {
                detail = "P(same) != 2/3";
                return false;
            }
        }
        return true;
    });

    criterion(6, "engine equivalence on >= 1000 randomized geometries", 60.0,
              [](std::string& detail) {
                  CheckOptions opts;
                  opts.cases = 1000;
                  CheckReport report = engine_equivalence_suite(opts, fig2_set().geometries);
                  if (!report.ok()) {
                      detail = *report.counterexample;
                      return false;
                  }
                  return report.cases_run >= 1000;
              });

    criterion(7, "order invariance on >= 200 evidence sets x 5 permutations", 30.0,
              [](std::string& detail) {
                  CheckOptions opts;
                  opts.cases = 200;
                  opts.max_nodes = 6;
                  CheckReport report = order_invariance_suite(opts, 5, fig2_set().geometries);
                  if (!report.ok()) {
                      detail = *report.counterexample;
                      return false;
                  }
                  return report.cases_run >= 200;
              });

    criterion(8, "axis relabeling to time changes no golden", 0, [](std::string& detail) {
        ScenarioBundle temporal = fig2_temporal();
        if (!check_fig2a_goldens(temporal.geometry("fig2a"), detail)) return false;
        if (!check_fig2b_goldens(temporal.geometry("fig2b"), detail)) return false;
        if (!check_conditional(temporal.geometries, detail)) return false;
        ScenarioBundle spatial = fig2_set();
        for (size_t i = 0; i < spatial.geometries.size(); ++i) {
            if (enumerate_microstates(spatial.geometries[i], bottom_h()) !=
                enumerate_microstates(temporal.geometries[i], bottom_h())) {
                detail = "microstate lists differ";
                return false;
            }
        }
        return true;
    });

    criterion(9, "summing the full diamond table over top reproduces the reduced table", 0,
              [](std::string& detail) {
                  Geometry g = fig2b().geometries.front();
                  JointTable full = joint_table({"left", "right", "top"}, g, bottom_h());
                  JointTable reduced = joint_table({"left", "right"}, g, bottom_h());
                  for (size_t i = 0; i < reduced.rows.size(); ++i) {
                      if (full.rows[2 * i].weight + full.rows[2 * i + 1].weight !=
                              reduced.rows[i].weight ||
                          full.rows[2 * i].prob + full.rows[2 * i + 1].prob !=
                              reduced.rows[i].prob) {
                          detail = "row " + std::to_string(i) + " differs";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(10, "DSL round trip on shipped and generated models; fig2.aao end to end", 0,
              [](std::string& detail) {
                  for (const char* file :
                       {"fig2.aao", "fig2_temporal.aao", "shoebox.aao", "chain3.aao"}) {
                      ModelDocument doc = parse_model(read_file(g_model_dir + "/" + file));
                      std::string text = serialize_model(doc);
                      if (!(parse_model(text) == doc) ||
                          serialize_model(parse_model(text)) != text) {
                          detail = std::string("round trip failed on ") + file;
                          return false;
                      }
                  }
                  std::mt19937_64 rng(1234);
                  for (int i = 0; i < 500; ++i) {
                      // generated documents: states/colors/law/geometry/query soup
                      ModelDocument doc;
                      auto rand_int = [&rng](int lo, int hi) {
                          return std::uniform_int_distribution<int>(lo, hi)(rng);
                      };
                      int num_states = rand_int(2, 3), num_colors = rand_int(1, 3);
                      for (int s = 0; s < num_states; ++s)
                          doc.states.push_back("s" + std::to_string(s));
                      for (int c = 0; c < num_colors; ++c)
                          doc.colors.push_back("k" + std::to_string(c));
                      for (int c = 0; c < num_colors; ++c) {
                          ConstraintDecl decl;
                          decl.color = doc.colors[c];
                          decl.pairs.emplace_back(doc.states[rand_int(0, num_states - 1)],
                                                  doc.states[rand_int(0, num_states - 1)]);
                          doc.constraints.push_back(decl);
                      }
                      GeometrySpec spec;
                      spec.name = "g";
                      int nodes = rand_int(1, 5);
                      for (int n = 0; n < nodes; ++n)
                          spec.nodes.push_back("n" + std::to_string(n));
                      for (int e = 0; e < rand_int(0, 3) && nodes >= 2; ++e) {
                          int a = rand_int(0, nodes - 1), b = rand_int(0, nodes - 2);
                          if (b >= a) ++b;
                          spec.edges.emplace_back(spec.nodes[a], spec.nodes[b]);
                      }
                      doc.geometry_specs.push_back(spec);
                      doc.queries.push_back(
                          QueryDecl{"q", Query::node_equals("n0", doc.states[0])});
                      doc.compile();
                      std::string text = serialize_model(doc);
                      if (!(parse_model(text) == doc)) {
                          detail = "generated round trip failed:\n" + text;
                          return false;
                      }
                  }

                  ModelDocument doc = parse_model(read_file(g_model_dir + "/fig2.aao"));
                  const Evidence& base = doc.evidence_block("base");
                  std::string unused;
                  if (!check_fig2a_goldens(doc.geometry("fig2a"), detail)) return false;
                  if (!check_fig2b_goldens(doc.geometry("fig2b"), detail)) return false;
                  if (!check_conditional(doc.geometry_set("fig2"), detail)) return false;
                  if (probability(doc.query("same_lr"), doc.geometry("fig2a"), base) !=
                      Rational(5, 9)) {
                      detail = "shipped evidence block does not reproduce 5/9";
                      return false;
                  }
                  return true;
              });

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
