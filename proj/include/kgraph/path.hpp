#pragma once

#include "kgraph/degree.hpp"
#include "kgraph/kgraph.hpp"

#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kgraph {

/// A finite morphism in color-ordered normal form: all color-1 edges first,
/// then color-2, and so on, read range-to-source. A degree-zero Path is a
/// vertex. Equality is normal-form edge-sequence equality, which is sound
/// because the factorization through any color order is unique.
class Path {
public:
    static Path vertex(const KGraph& g, VertexId v);
    /// Normalizes a composable raw edge sequence. Throws on a non-composable
    /// sequence or an empty one (use vertex() for identity morphisms).
    static Path from_edges(const KGraph& g, std::span<const EdgeId> raw);

    const KGraph& graph() const { return graph_; }
    const std::vector<EdgeId>& edges() const { return edges_; }
    const Degree& degree() const { return degree_; }
    VertexId range() const { return range_; }
    VertexId source() const { return source_; }
    bool is_vertex() const { return edges_.empty(); }
    std::size_t length() const { return edges_.size(); }

    /// Comma-separated edge ids in normal form; a vertex renders as its id.
    std::string str() const;

    bool operator==(const Path& other) const;

private:
    Path(KGraph g, std::vector<EdgeId> edges, VertexId range, VertexId source, Degree degree);
    KGraph graph_;
    std::vector<EdgeId> edges_;
    VertexId range_;
    VertexId source_;
    Degree degree_;
    friend Path compose(const Path&, const Path&);
    friend std::pair<Path, Path> split(const Path&, const Degree&);
};

/// Deterministic total order on paths of one graph (degree, then edge ids).
bool path_less(const Path& a, const Path& b);

/// mu.nu with source(mu) = range(nu); degrees add and the result is normalized.
Path compose(const Path& mu, const Path& nu);

/// Factors lambda = first.second with degree(first) = m. Requires m <= d(lambda).
std::pair<Path, Path> split(const Path& lambda, const Degree& m);

/// The unique middle factor lambda(m, n), of degree n - m. Requires m <= n <= d(lambda).
Path segment(const Path& lambda, const Degree& m, const Degree& n);

/// Normalization applying square swaps in a randomized order; the result must
/// equal from_edges on a validated graph (confluence).
Path normalize_shuffled(const KGraph& g, std::span<const EdgeId> raw, std::mt19937& rng);

/// vL^n: all normal-form paths with range v and degree n, in deterministic
/// DFS order (edges sorted by color then id).
std::vector<Path> paths_from(const KGraph& g, VertexId v, const Degree& n);

/// vL restricted to degrees <= bound, grouped by degree in degree_less order.
std::vector<Path> paths_from_upto(const KGraph& g, VertexId v, const Degree& bound);

/// L^n v: all paths with source v and degree n.
std::vector<Path> paths_into(const KGraph& g, VertexId v, const Degree& n);

/// Parses the str() rendering: comma-separated edge ids, or a vertex id.
Path parse_path(const KGraph& g, const std::string& text);

}  // namespace kgraph
