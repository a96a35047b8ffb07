#include "doctest.h"

#include "kgraph/constructions.hpp"
#include "kgraph/path.hpp"

#include <algorithm>
#include <random>

using namespace kgraph;

namespace {

EdgeId eid(const KGraph& g, const std::string& id) {
    auto e = g.skeleton().find_edge(id);
    REQUIRE(e.has_value());
    return *e;
}

VertexId vid(const KGraph& g, const std::string& id) {
    auto v = g.skeleton().find_vertex(id);
    REQUIRE(v.has_value());
    return *v;
}

// uniformly random composable raw walk of the given length (not normalized)
std::vector<EdgeId> random_walk(const KGraph& g, std::mt19937& rng, int length) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::uniform_int_distribution<std::size_t> pick_v(0, g.vertex_count() - 1);
        VertexId at = static_cast<VertexId>(pick_v(rng));
        std::vector<EdgeId> walk;
        for (int i = 0; i < length; ++i) {
            auto out = g.edges_with_range(at);
            if (out.empty()) break;
            std::uniform_int_distribution<std::size_t> pick_e(0, out.size() - 1);
            EdgeId e = out[pick_e(rng)];
            walk.push_back(e);
            at = g.edge(e).source;
        }
        if (static_cast<int>(walk.size()) == length) return walk;
    }
    return {};
}

}  // namespace

TEST_CASE("normal form sorts colors and respects the square rules") {
    KGraph g = three_graph_example();
    // b.d -> c.b' (colors: red 1, blue 2, green 3)
    std::vector<EdgeId> bd = {eid(g, "b"), eid(g, "d")};
    Path p = Path::from_edges(g, bd);
    CHECK(p.str() == "c,b'");
    CHECK(p.degree() == Degree{1, 1, 0});
    CHECK(g.vertex_id(p.range()) == "v");
    CHECK(g.vertex_id(p.source()) == "w");
    // f.d -> d.f
    std::vector<EdgeId> fd = {eid(g, "f"), eid(g, "d")};
    CHECK(Path::from_edges(g, fd).str() == "d,f");
    // already normal input is unchanged
    std::vector<EdgeId> ce = {eid(g, "c"), eid(g, "e")};
    CHECK(Path::from_edges(g, ce).str() == "c,e");
}

TEST_CASE("non-composable sequences are rejected") {
    KGraph g = three_graph_example();
    std::vector<EdgeId> cc = {eid(g, "c"), eid(g, "d")};  // c ends at v, d starts at w
    CHECK_THROWS_AS(Path::from_edges(g, cc), std::invalid_argument);
}

TEST_CASE("compose adds degrees and respects identities") {
    KGraph g = flip();
    Path v = Path::vertex(g, vid(g, "v"));
    std::vector<EdgeId> fe = {eid(g, "f")};
    std::vector<EdgeId> ge = {eid(g, "g")};
    Path f = Path::from_edges(g, fe);
    Path gg = Path::from_edges(g, ge);
    CHECK(compose(v, f) == f);
    CHECK(compose(f, v) == f);
    Path fg = compose(f, gg);
    Path gf = compose(gg, f);
    CHECK(fg.degree() == Degree{1, 1});
    // one path per degree in the flip graph
    CHECK(fg == gf);
}

TEST_CASE("grid composition matches interval concatenation") {
    KGraph g = grid(2, Degree{2, 2});
    // (p,q)(q,r) = (p,r): paths are determined by endpoints in a grid
    auto from_00 = paths_from(g, vid(g, "v0.0"), Degree{1, 1});
    REQUIRE(from_00.size() == 1);
    auto from_11 = paths_from(g, vid(g, "v1.1"), Degree{1, 1});
    REQUIRE(from_11.size() == 1);
    Path whole = compose(from_00[0], from_11[0]);
    auto direct = paths_from(g, vid(g, "v0.0"), Degree{2, 2});
    REQUIRE(direct.size() == 1);
    CHECK(whole == direct[0]);
}

TEST_CASE("segment returns the unique middle factor") {
    KGraph g = three_graph_example();
    std::vector<EdgeId> bd = {eid(g, "b"), eid(g, "d")};
    Path lambda = Path::from_edges(g, bd);  // = c.b'
    // red coordinate first: segment(0, e_red) = c, remainder b'
    Path first = segment(lambda, Degree{0, 0, 0}, Degree{1, 0, 0});
    CHECK(first.str() == "c");
    Path rest = segment(lambda, Degree{1, 0, 0}, Degree{1, 1, 0});
    CHECK(rest.str() == "b'");
    CHECK(segment(lambda, Degree::zero(3), lambda.degree()) == lambda);
    CHECK_THROWS_AS(segment(lambda, Degree{1, 1, 0}, Degree{1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(segment(lambda, Degree{0, 0, 0}, Degree{2, 0, 0}), std::invalid_argument);
}

TEST_CASE("grid segments are sub-intervals") {
    KGraph g = grid(2, Degree{3, 2});
    auto paths = paths_from(g, vid(g, "v0.0"), Degree{3, 2});
    REQUIRE(paths.size() == 1);
    Path seg = segment(paths[0], Degree{1, 0}, Degree{2, 1});
    CHECK(g.vertex_id(seg.range()) == "v1.0");
    CHECK(g.vertex_id(seg.source()) == "v2.1");
    CHECK(seg.degree() == Degree{1, 1});
}

TEST_CASE("segment round trip recomposes the original") {
    KGraph g = three_graph_example();
    std::mt19937 rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        auto walk = random_walk(g, rng, 6);
        if (walk.empty()) continue;
        Path lambda = Path::from_edges(g, walk);
        auto degrees = degrees_upto(lambda.degree());
        std::uniform_int_distribution<std::size_t> pick(0, degrees.size() - 1);
        Degree m = degrees[pick(rng)];
        Degree n = join(m, degrees[pick(rng)]);
        Path a = segment(lambda, Degree::zero(3), m);
        Path b = segment(lambda, m, n);
        Path c = segment(lambda, n, lambda.degree());
        CHECK(compose(a, compose(b, c)) == lambda);
    }
}

TEST_CASE("normalization is idempotent and schedule-independent") {
    KGraph g = three_graph_example();
    std::mt19937 rng(21);
    for (int iter = 0; iter < 200; ++iter) {
        auto walk = random_walk(g, rng, 7);
        if (walk.empty()) continue;
        Path canonical = Path::from_edges(g, walk);
        CHECK(Path::from_edges(g, canonical.edges()) == canonical);
        Path shuffled = normalize_shuffled(g, walk, rng);
        CHECK(shuffled == canonical);
    }
}

TEST_CASE("path enumeration counts") {
    SUBCASE("flip graph has one path per degree") {
        KGraph g = flip();
        for (const Degree& d : degrees_upto(Degree{3, 3}))
            CHECK(paths_from(g, 0, d).size() == 1);
    }
    SUBCASE("free words on two rank-1 loops") {
        KGraph g = two_loop();
        CHECK(paths_from(g, 0, Degree{3}).size() == 8);
    }
    SUBCASE("grid morphisms are pairs p <= q") {
        KGraph g = grid(2, Degree{1, 1});
        CHECK(paths_from(g, vid(g, "v0.0"), Degree{1, 1}).size() == 1);
        std::size_t total = 0;
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            for (const Degree& d : degrees_upto(Degree{1, 1}))
                total += paths_from(g, static_cast<VertexId>(v), d).size();
        CHECK(total == 9);
    }
}

TEST_CASE("composition counting identity") {
    // |vL^{m+n}| equals the sum over w of |paths v->w of degree m| times
    // |paths from w of degree n|
    KGraph g = three_graph_example();
    Degree m{1, 1, 0}, n{0, 1, 1};
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::size_t direct = paths_from(g, static_cast<VertexId>(v), plus(m, n)).size();
        std::size_t via = 0;
        for (const Path& p : paths_from(g, static_cast<VertexId>(v), m))
            via += paths_from(g, p.source(), n).size();
        CHECK(direct == via);
    }
}

TEST_CASE("paths_into mirrors paths_from") {
    KGraph g = three_graph_example();
    Degree d{1, 1, 0};
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        auto into = paths_into(g, static_cast<VertexId>(v), d);
        std::size_t expect = 0;
        for (std::size_t w = 0; w < g.vertex_count(); ++w)
            for (const Path& p : paths_from(g, static_cast<VertexId>(w), d))
                if (p.source() == static_cast<VertexId>(v)) ++expect;
        CHECK(into.size() == expect);
        for (const Path& p : into) CHECK(p.source() == static_cast<VertexId>(v));
    }
}

TEST_CASE("path text round trips") {
    KGraph g = three_graph_example();
    std::vector<EdgeId> bd = {eid(g, "b"), eid(g, "d")};
    Path p = Path::from_edges(g, bd);
    CHECK(parse_path(g, p.str()) == p);
    Path v = Path::vertex(g, vid(g, "v"));
    CHECK(parse_path(g, "v") == v);
    CHECK_THROWS_AS(parse_path(g, "zz"), std::invalid_argument);
    CHECK_THROWS_AS(parse_path(g, "b,zz"), std::invalid_argument);
}
