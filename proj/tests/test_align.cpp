#include "doctest.h"

#include "kgraph/align.hpp"
#include "kgraph/constructions.hpp"

#include <algorithm>

using namespace kgraph;

namespace {

Path p(const KGraph& g, const std::string& text) { return parse_path(g, text); }

// independent oracle: filter the full degree slice on both prefix conditions
std::vector<Path> brute_mce(const Path& mu, const Path& nu) {
    std::vector<Path> out;
    if (mu.range() != nu.range()) return out;
    Degree target = join(mu.degree(), nu.degree());
    for (const Path& lambda : paths_from(mu.graph(), mu.range(), target)) {
        if (split(lambda, mu.degree()).first == mu && split(lambda, nu.degree()).first == nu)
            out.push_back(lambda);
    }
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

}  // namespace

TEST_CASE("mce on the unit grid") {
    KGraph g = grid(2, Degree{1, 1});
    Path mu = p(g, "e1_0.0");
    Path nu = p(g, "e2_0.0");
    MceSet set = mce(mu, nu);
    REQUIRE(set.extensions.size() == 1);
    CHECK(set.extensions[0].degree() == Degree{1, 1});
    CHECK(g.vertex_id(set.extensions[0].range()) == "v0.0");
    CHECK(g.vertex_id(set.extensions[0].source()) == "v1.1");
}

TEST_CASE("mce basics") {
    SUBCASE("distinct loops of equal degree never meet") {
        KGraph g = two_loop();
        CHECK(mce(p(g, "e1"), p(g, "e2")).empty());
        CHECK(mce_empty(p(g, "e1"), p(g, "e2")));
    }
    SUBCASE("flip graph pairs meet in the unique path of the joint degree") {
        KGraph g = flip();
        MceSet set = mce(p(g, "f"), p(g, "g"));
        REQUIRE(set.extensions.size() == 1);
        CHECK(set.extensions[0].degree() == Degree{1, 1});
    }
    SUBCASE("different ranges give the empty set") {
        KGraph g = evans_sims(2);
        CHECK(mce(p(g, "a1_0"), p(g, "a2_0")).empty());
    }
}

TEST_CASE("mce symmetry and membership up to degree (2,2)") {
    for (const KGraph& g : {flip(), evans_sims(3)}) {
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            auto candidates = paths_from_upto(g, static_cast<VertexId>(v), Degree{2, 2});
            for (const Path& mu : candidates) {
                for (const Path& nu : candidates) {
                    MceSet ab = mce(mu, nu);
                    MceSet ba = mce(nu, mu);
                    CHECK(ab.extensions == ba.extensions);
                    for (const Path& lambda : ab.extensions) {
                        CHECK(lambda.degree() == join(mu.degree(), nu.degree()));
                        CHECK(segment(lambda, Degree::zero(g.rank()), mu.degree()) == mu);
                        CHECK(segment(lambda, Degree::zero(g.rank()), nu.degree()) == nu);
                    }
                }
            }
        }
    }
}

TEST_CASE("mce agrees with the brute force oracle") {
    for (const KGraph& g : {two_loop(), flip(), evans_sims(3)}) {
        Degree bound = g.rank() == 1 ? Degree{2} : Degree{2, 2};
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            auto candidates = paths_from_upto(g, static_cast<VertexId>(v), bound);
            for (const Path& mu : candidates)
                for (const Path& nu : candidates) {
                    CHECK(mce(mu, nu).extensions == brute_mce(mu, nu));
                }
        }
    }
}

TEST_CASE("mce_sets unions over pairs") {
    SUBCASE("a vertex extends to any path from it") {
        KGraph g = flip();
        Path v = Path::vertex(g, 0);
        Path f = p(g, "f");
        auto set = mce_sets({v}, {f});
        REQUIRE(set.size() == 1);
        CHECK(set[0] == f);
    }
    SUBCASE("empty side gives the empty union") {
        KGraph g = flip();
        CHECK(mce_sets({}, {p(g, "f")}).empty());
    }
    SUBCASE("both edges of the unit grid corner") {
        KGraph g = grid(2, Degree{1, 1});
        std::vector<Path> edges = {p(g, "e1_0.0"), p(g, "e2_0.0")};
        auto set = mce_sets(edges, edges);
        // e1, e2 and the full square
        CHECK(set.size() == 3);
    }
}

TEST_CASE("finite graphs are finitely aligned") {
    KGraph g = three_graph_example();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        auto candidates = paths_from_upto(g, static_cast<VertexId>(v), Degree{1, 1, 1});
        for (const Path& mu : candidates)
            for (const Path& nu : candidates)
                CHECK(mce(mu, nu).extensions.size() < 10000);
    }
}

TEST_CASE("exhaustive sets at a vertex") {
    KGraph g = two_loop();
    SUBCASE("a single loop misses the other one") {
        auto result = is_exhaustive(g, {p(g, "e1")}, 0);
        CHECK(!result.exhaustive);
        REQUIRE(result.counterexample.has_value());
        CHECK(result.counterexample->str() == "e2");
    }
    SUBCASE("the vertex itself is exhaustive") {
        CHECK(is_exhaustive(g, {Path::vertex(g, 0)}, 0).exhaustive);
    }
    SUBCASE("both first letters cover everything") {
        CHECK(is_exhaustive(g, {p(g, "e1"), p(g, "e2")}, 0).exhaustive);
    }
    SUBCASE("the empty set is not exhaustive") {
        auto result = is_exhaustive(g, {}, 0);
        CHECK(!result.exhaustive);
    }
}
