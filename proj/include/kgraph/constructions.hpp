#pragma once

#include "kgraph/degree.hpp"
#include "kgraph/kgraph.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kgraph {

/// Grid graph: vertices are the points p <= extent, color-i edges run from
/// p + e_i to p (range p), and every square commutes the unique way.
/// Vertex ids are "v0.0" style, edge ids "e1_0.0" (color, then base point).
KGraph grid(int rank, const Degree& extent);

/// The two-vertex 3-graph with colors 1=red (loops c at v, d at w),
/// 2=blue (a, a2 from v to w; b, b2 back) and 3=green (loops e at v, f at w),
/// with the six named squares plus their forced companions. Edge ids use a
/// trailing apostrophe for the primed edges ("a'", "b'").
KGraph three_graph_example();

/// Rank-1 graph with one vertex and two loops e1, e2.
KGraph two_loop();

/// Rank-2 graph with one vertex, a color-1 loop f and a color-2 loop g,
/// and the single forced square.
KGraph flip();

/// Single vertex, blue_count color-1 edges x0.. and red_count color-2 edges
/// y0.., with the square rule given as a table: rule[i * red_count + j] =
/// (j2, i2) meaning x_i.y_j = y_j2.x_i2. The table must be a bijection.
KGraph single_vertex_2graph(int blue_count, int red_count,
                            std::span<const std::pair<int, int>> rule);

/// Truncated ladder: vertices v0..vL; for n in 1..L there are n color-1 edges
/// a<n>_<i> and n color-2 edges b<n>_<i> from v<n> to v<n-1>. Squares for
/// n = 1..L-1 come from the permutation family: a<n>_i . b<n+1>_j =
/// b<n>_i2 . a<n+1>_j2 with (i2, j2) = xi_zeta(n, i, j), which must be a
/// permutation of Z_n x Z_{n+1} for each n. The default family is the
/// cyclic shift (i+1 mod n, j+1 mod n+1).
KGraph evans_sims(int levels);
KGraph evans_sims(int levels, const std::function<std::pair<int, int>(int, int, int)>& xi_zeta);

/// Fiber maps for a twisted product over Z/N: maps[e][x] is where fiber point
/// x of the source copy is sent across edge e. Vertices act as the identity;
/// the family must commute with every square (tau_g o tau_h = tau_h2 o tau_g2).
struct TwistSpec {
    int fiber = 1;
    std::vector<std::vector<int>> maps;  // indexed by EdgeId
};

/// First functoriality violation, if any: names the square and fiber point.
std::optional<Violation> check_twist(const KGraph& base, const TwistSpec& twist);

/// The product graph with vertex set Obj x fiber and edge set Edges x fiber;
/// edge (e, x) runs from (source(e), x) to (range(e), maps[e][x]) and squares
/// lift fiberwise. Ids are "<base-id>@<x>". Bases with sources are accepted
/// with a warning pushed to *warnings.
KGraph twisted_product(const KGraph& base, const TwistSpec& twist,
                       std::vector<std::string>* warnings = nullptr);

/// Multiply-by-level twist for evans_sims graphs: an edge out of v<n> gets
/// x -> n*x mod fiber. Level is read from the numeric suffix of the source
/// vertex id.
TwistSpec mul_by_level_twist(const KGraph& ladder, int fiber);

/// Every edge multiplies the fiber by the same factor.
TwistSpec constant_mul_twist(const KGraph& base, int fiber, int factor);

}  // namespace kgraph
