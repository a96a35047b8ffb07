#pragma once

#include "kgraph/degree.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kgraph {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
    std::string id;
    int color = 0;  // 1..rank
    VertexId range = 0;
    VertexId source = 0;
};

/// Colored directed multigraph: the vertices and the edges of each color.
/// Multi-edges, loops and isolated vertices are all permitted.
class Skeleton {
public:
    explicit Skeleton(int rank);

    VertexId add_vertex(std::string id);
    EdgeId add_edge(std::string id, int color, VertexId range, VertexId source);
    EdgeId add_edge(std::string id, int color, const std::string& range_id, const std::string& source_id);

    int rank() const { return rank_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& vertex_id(VertexId v) const { return vertices_[v]; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& vertices() const { return vertices_; }

    std::optional<VertexId> find_vertex(const std::string& id) const;
    std::optional<EdgeId> find_edge(const std::string& id) const;

private:
    int rank_;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
};

/// One commuting square g.h = h2.g2, read range-to-source: in a pair (a, b)
/// the edge a is nearer the range, so the path is a.b with source(a) = range(b).
/// The lhs is color-ordered low-high (color(lo) < color(hi)); the rhs is the
/// same morphism written high-low.
struct SquareRule {
    EdgeId lo = 0;
    EdgeId hi = 0;
    EdgeId hi2 = 0;
    EdgeId lo2 = 0;
};

struct Violation {
    std::string kind;  // missing-square, duplicate-square, endpoint, associativity, ...
    std::vector<std::string> items;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string str() const;
};

/// A validated higher-rank graph: skeleton plus a complete, bijective,
/// associativity-consistent set of commuting squares. Immutable after
/// construction and safe for unrestricted concurrent reads.
class KGraph {
public:
    int rank() const;
    const Skeleton& skeleton() const;
    std::span<const SquareRule> rules() const;

    const Edge& edge(EdgeId e) const { return skeleton().edge(e); }
    const std::string& vertex_id(VertexId v) const { return skeleton().vertex_id(v); }
    std::size_t vertex_count() const { return skeleton().vertex_count(); }

    /// Swap a composable adjacent pair a.b of distinct colors using the square
    /// rules: returns (b2, a2) with a.b = b2.a2 and colors exchanged.
    std::pair<EdgeId, EdgeId> swap_pair(EdgeId a, EdgeId b) const;

    /// Edges with range v, sorted by (color, id). The per-color slice is
    /// contiguous.
    std::span<const EdgeId> edges_with_range(VertexId v) const;
    std::span<const EdgeId> edges_with_range(VertexId v, int color) const;
    std::span<const EdgeId> edges_with_source(VertexId v) const;
    std::span<const EdgeId> edges_with_source(VertexId v, int color) const;

    /// True when some path with range v uses an edge of this color, i.e. the
    /// coordinate can still grow along extensions at the source end.
    bool color_reachable(VertexId v, int color) const;

    /// Identity comparison; paths and searches require operands from the same
    /// validated graph object.
    bool same(const KGraph& other) const { return data_ == other.data_; }

    struct Data;
    explicit KGraph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

private:
    std::shared_ptr<const Data> data_;
};

struct ValidationOutcome {
    std::optional<KGraph> graph;
    ValidationReport report;
    bool ok() const { return graph.has_value(); }
};

/// Checks the factorization axioms: every composable bi-colored pair appears in
/// exactly one rule in each direction, rules respect endpoints, and for rank
/// >= 3 the two rewriting routes across any tri-colored triple agree. Returns
/// the immutable KGraph on success, otherwise the full list of violations.
ValidationOutcome validate(Skeleton skeleton, std::vector<SquareRule> rules);

/// (vertex, color) pairs with no incoming edge of that color. Empty means the
/// graph has no sources.
std::vector<std::pair<VertexId, int>> find_sources(const KGraph& g);

}  // namespace kgraph
