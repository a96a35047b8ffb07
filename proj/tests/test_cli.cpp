#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "kgraph/aperiodicity.hpp"
#include "kgraph/io.hpp"
#include "kgraph/path.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_kg(const std::string& args) {
    static int counter = 0;
    std::string out_file = "cli_out_" + std::to_string(counter++) + ".txt";
    std::string cmd = std::string(KG_BIN_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    std::remove(out_file.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, buf.str()};
}

std::vector<json> lines_of(const std::string& text) {
    std::vector<json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

}  // namespace

TEST_CASE("gen + validate round trip through the CLI") {
    CHECK(run_kg("gen grid --k 2 --m 1,1 -o cli_g.kg").exit_code == 0);
    RunResult v = run_kg("validate cli_g.kg");
    CHECK(v.exit_code == 0);
    auto lines = lines_of(v.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0]["valid"] == true);
    CHECK(lines[0]["vertices"] == 4);
    CHECK(lines[0]["edges"] == 4);
    std::remove("cli_g.kg");
}

TEST_CASE("segment through the CLI picks the grid sub-interval") {
    CHECK(run_kg("gen grid --k 2 --m 1,1 -o cli_seg.kg").exit_code == 0);
    RunResult r = run_kg("segment cli_seg.kg --path e1_0.0,e2_1.0 --from 1,0 --to 1,1");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0]["path"] == "e2_1.0");
    CHECK(lines[0]["degree"] == "0,1");
    std::remove("cli_seg.kg");
}

TEST_CASE("check reports periodic-suspect flip verdicts and verifiable certificates") {
    CHECK(run_kg("gen flip -o cli_flip.kg").exit_code == 0);
    RunResult r = run_kg("check cli_flip.kg --pair-bound 2,2 --path-bound 4,4 --tau-bound 3,3");
    CHECK(r.exit_code == 0);
    bool vertex_line = false;
    for (const json& line : lines_of(r.out)) {
        if (line["kind"] == "star" || line["kind"] == "tau") CHECK(line["verdict"] == "refuted");
        if (line["kind"] == "vertex") {
            vertex_line = true;
            CHECK(line["periodic_suspect"] == true);
        }
        CHECK(line["kind"] != "conflict");
    }
    CHECK(vertex_line);
    std::remove("cli_flip.kg");
}

TEST_CASE("check certificates re-verify from the report alone") {
    CHECK(run_kg("gen two-loop -o cli_two.kg").exit_code == 0);
    RunResult r = run_kg("check cli_two.kg --pair-bound 2 --path-bound 5 --tau-bound 4");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_two.kg");
    std::stringstream buf;
    buf << in.rdbuf();
    kgraph::ParseResult parsed = kgraph::parse_document(buf.str());
    REQUIRE(parsed.ok());
    const kgraph::KGraph& g = *parsed.graph;
    std::size_t checked = 0;
    for (const json& line : lines_of(r.out)) {
        if (line["kind"] == "star" && line["verdict"] == "witnessed") {
            kgraph::StarWitness w{*g.skeleton().find_vertex(line["vertex"]),
                                  kgraph::parse_degree(line["m"]),
                                  kgraph::parse_degree(line["n"]),
                                  kgraph::parse_path(g, line["witness"])};
            CHECK(kgraph::verify_star(w));
            ++checked;
        }
        if (line["kind"] == "tau" && line["verdict"] == "witnessed") {
            kgraph::TauWitness w{kgraph::parse_path(g, line["alpha"]),
                                 kgraph::parse_path(g, line["beta"]),
                                 kgraph::parse_path(g, line["tau"])};
            CHECK(kgraph::verify_tau(w));
            ++checked;
        }
    }
    CHECK(checked > 10);
    std::remove("cli_two.kg");
}

TEST_CASE("exit codes") {
    CHECK(run_kg("frobnicate x.kg").exit_code == 2);            // unknown subcommand
    CHECK(run_kg("validate no_such_file.kg").exit_code == 2);   // unreadable input
    CHECK(run_kg("gen grid --k 2 --m 1,x -o nope.kg").exit_code == 2);  // malformed degree

    // an invalid document exits 1 with violation records
    std::ofstream bad("cli_bad.kg");
    bad << R"({"rank":2,"vertices":["v"],"edges":[{"id":"f","color":1,"range":"v","source":"v"},)"
        << R"({"id":"g","color":2,"range":"v","source":"v"}],"squares":[]})";
    bad.close();
    RunResult r = run_kg("validate cli_bad.kg");
    CHECK(r.exit_code == 1);
    bool violation = false;
    for (const json& line : lines_of(r.out))
        if (line["kind"] == "violation") violation = true;
    CHECK(violation);
    std::remove("cli_bad.kg");
}

TEST_CASE("normalize and mce through the CLI") {
    CHECK(run_kg("gen three-graph -o cli_three.kg").exit_code == 0);
    RunResult r = run_kg("normalize cli_three.kg --edges b,d");
    CHECK(r.exit_code == 0);
    CHECK(lines_of(r.out)[0]["path"] == "c,b'");

    CHECK(run_kg("gen two-loop -o cli_two2.kg").exit_code == 0);
    RunResult m = run_kg("mce cli_two2.kg --mu e1 --nu e2");
    CHECK(m.exit_code == 0);
    CHECK(lines_of(m.out)[0]["count"] == 0);
    std::remove("cli_three.kg");
    std::remove("cli_two2.kg");
}

TEST_CASE("twisted product generation and dot export through the CLI") {
    CHECK(run_kg("gen evans-sims --levels 3 -o cli_es.kg").exit_code == 0);
    CHECK(run_kg("gen twist --base cli_es.kg --fiber 4 --mul-by-level -o cli_tw.kg").exit_code ==
          0);
    RunResult v = run_kg("validate cli_tw.kg");
    CHECK(v.exit_code == 0);
    CHECK(lines_of(v.out)[0]["vertices"] == 16);

    RunResult d1 = run_kg("export-dot cli_es.kg");
    RunResult d2 = run_kg("export-dot cli_es.kg");
    CHECK(d1.exit_code == 0);
    CHECK(d1.out == d2.out);
    CHECK(d1.out.find("digraph") != std::string::npos);
    std::remove("cli_es.kg");
    std::remove("cli_tw.kg");
}
