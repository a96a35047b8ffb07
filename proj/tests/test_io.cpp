#include "doctest.h"

#include "kgraph/constructions.hpp"
#include "kgraph/io.hpp"

#include <vector>

using namespace kgraph;

TEST_CASE("canonical round trips on generator outputs") {
    std::vector<GraphDocument> docs;
    docs.push_back(document_from(two_loop()));
    docs.push_back(document_from(flip()));
    docs.push_back(document_from(three_graph_example()));
    docs.push_back(document_from(grid(2, Degree{2, 1})));
    docs.push_back(document_from(evans_sims(3)));
    KGraph es = evans_sims(3);
    TwistSpec twist = mul_by_level_twist(es, 6);
    docs.push_back(document_from(es, &twist));
    for (const GraphDocument& doc : docs) {
        std::string text = serialize(doc);
        ParseResult result = parse_document(text);
        REQUIRE(result.ok());
        const TwistSpec* t = result.twist ? &*result.twist : nullptr;
        CHECK(serialize(document_from(*result.graph, t)) == text);
    }
}

TEST_CASE("parse accepts non-canonical formatting but serializes canonically") {
    std::string text = R"({"vertices":["v"],"rank":2,
        "edges":[{"id":"g","color":2,"range":"v","source":"v"},
                 {"id":"f","color":1,"range":"v","source":"v"}],
        "squares":[{"lo_hi":["f","g"],"hi_lo":["g","f"]}]})";
    ParseResult result = parse_document(text);
    REQUIRE(result.ok());
    CHECK(result.graph->rules().size() == 1);
    std::string canonical = serialize(document_from(*result.graph));
    ParseResult again = parse_document(canonical);
    REQUIRE(again.ok());
    CHECK(serialize(document_from(*again.graph)) == canonical);
}

TEST_CASE("parse reports schema problems with context") {
    ParseResult bad_json = parse_document("{ not json");
    CHECK(!bad_json.ok());
    REQUIRE(!bad_json.issues.empty());

    ParseResult no_rank = parse_document(R"({"vertices":[],"edges":[],"squares":[]})");
    CHECK(!no_rank.ok());
    CHECK(no_rank.issues[0].where == "$.rank");

    ParseResult bad_edge = parse_document(
        R"({"rank":1,"vertices":["v"],"edges":[{"id":"e","color":1,"range":"w","source":"v"}],"squares":[]})");
    CHECK(!bad_edge.ok());
    CHECK(bad_edge.issues[0].message.find("unknown range vertex") != std::string::npos);
}

TEST_CASE("documents missing a square fail validation with a named pair") {
    std::string text = R"({"rank":2,"vertices":["v"],
        "edges":[{"id":"f","color":1,"range":"v","source":"v"},
                 {"id":"g","color":2,"range":"v","source":"v"}],
        "squares":[]})";
    ParseResult result = parse_document(text);
    CHECK(!result.ok());
    CHECK(result.issues.empty());  // well-formed document, semantic failure
    REQUIRE(!result.validation.ok());
    bool found = false;
    for (const Violation& v : result.validation.violations)
        if (v.kind == "missing-square" && v.message.find("(f,g)") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("twist blocks round trip and reject bad shapes") {
    KGraph base = evans_sims(2);
    TwistSpec twist = mul_by_level_twist(base, 4);
    std::string text = serialize(document_from(base, &twist));
    ParseResult result = parse_document(text);
    REQUIRE(result.ok());
    REQUIRE(result.twist.has_value());
    CHECK(result.twist->fiber == 4);
    CHECK(result.twist->maps == twist.maps);

    // a map entry outside the fiber is a schema error
    std::string bad = text;
    auto pos = bad.find("\"fiber\": 4");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 10, "\"fiber\": 2");
    ParseResult rejected = parse_document(bad);
    CHECK(!rejected.ok());
}

TEST_CASE("dot export is deterministic and matches the skeleton") {
    KGraph g = flip();
    std::string dot = export_dot(g);
    CHECK(dot == export_dot(g));
    CHECK(dot.find("\"v\" -> \"v\" [label=\"f\", color=\"blue\"]") != std::string::npos);
    CHECK(dot.find("\"v\" -> \"v\" [label=\"g\", color=\"red\"]") != std::string::npos);

    std::string grid_dot = export_dot(grid(2, Degree{1, 1}));
    std::size_t arrows = 0;
    for (std::size_t at = grid_dot.find("->"); at != std::string::npos;
         at = grid_dot.find("->", at + 1))
        ++arrows;
    CHECK(arrows == 4);

    std::string es_dot = export_dot(evans_sims(3));
    arrows = 0;
    for (std::size_t at = es_dot.find("->"); at != std::string::npos; at = es_dot.find("->", at + 1))
        ++arrows;
    CHECK(arrows == 12);
}

TEST_CASE("ids with quotes and backslashes are escaped in dot output") {
    Skeleton sk(1);
    VertexId v = sk.add_vertex("v\"q");
    sk.add_edge("e\\x", 1, v, v);
    KGraph g = *validate(std::move(sk), {}).graph;
    std::string dot = export_dot(g);
    CHECK(dot.find("\"v\\\"q\"") != std::string::npos);
    CHECK(dot.find("label=\"e\\\\x\"") != std::string::npos);
}
