#pragma once

#include "kgraph/constructions.hpp"
#include "kgraph/kgraph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kgraph {

/// On-disk form of a graph (.kg files): canonical UTF-8 JSON with sorted keys
/// and id-sorted arrays, so serialize(parse(x)) is byte-identical for
/// canonical x.
struct GraphDocument {
    struct EdgeRecord {
        std::string id;
        int color = 0;
        std::string range, source;
    };
    struct SquareRecord {
        // lo_hi = [g, h] and hi_lo = [h2, g2] meaning g.h = h2.g2 with
        // color(g) < color(h), both pairs read range-to-source.
        std::string lo, hi, hi2, lo2;
    };
    int rank = 0;
    std::vector<std::string> vertices;
    std::vector<EdgeRecord> edges;
    std::vector<SquareRecord> squares;
    struct TwistRecord {
        int fiber = 1;
        std::map<std::string, std::vector<int>> maps;  // edge id -> fiber map
    };
    std::optional<TwistRecord> twist;
};

struct ParseIssue {
    std::string where;  // JSON-path style context
    std::string message;
};

struct ParseResult {
    std::optional<GraphDocument> document;
    std::optional<KGraph> graph;
    std::optional<TwistSpec> twist;
    std::vector<ParseIssue> issues;   // syntax and schema problems
    ValidationReport validation;      // axiom problems from validate()
    bool ok() const { return graph.has_value(); }
};

ParseResult parse_document(const std::string& text);

GraphDocument document_from(const KGraph& g, const TwistSpec* twist = nullptr);

/// Canonical bytes: 2-space indented JSON, keys sorted, trailing newline.
std::string serialize(const GraphDocument& doc);

/// Graphviz export; edges are drawn source -> range with the positional
/// palette blue, red, green, orange, purple, brown, cyan, magenta.
std::string export_dot(const KGraph& g);

}  // namespace kgraph
