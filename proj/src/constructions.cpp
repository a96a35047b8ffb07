#include "kgraph/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace kgraph {

namespace {

KGraph must_validate(Skeleton sk, std::vector<SquareRule> rules, const char* what) {
    ValidationOutcome out = validate(std::move(sk), std::move(rules));
    if (!out.ok())
        throw std::runtime_error(std::string(what) + " failed validation:\n" + out.report.str());
    return *out.graph;
}

std::string point_id(const char* prefix, const std::vector<int>& p) {
    std::string id = prefix;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) id += '.';
        id += std::to_string(p[i]);
    }
    return id;
}

std::vector<std::vector<int>> points_upto(const Degree& extent) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(extent.rank()), 0);
    while (true) {
        out.push_back(cur);
        int i = extent.rank() - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == extent[i]) {
            cur[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

KGraph grid(int rank, const Degree& extent) {
    if (extent.rank() != rank) throw std::invalid_argument("grid: extent rank mismatch");
    Skeleton sk(rank);
    std::map<std::vector<int>, VertexId> index;
    for (const auto& p : points_upto(extent)) index[p] = sk.add_vertex(point_id("v", p));

    auto edge_id = [](int color, const std::vector<int>& p) {
        return "e" + std::to_string(color) + "_" + point_id("", p);
    };
    auto has_point = [&](std::vector<int> p) { return index.count(p) != 0; };

    std::map<std::pair<int, std::vector<int>>, EdgeId> edges;
    for (const auto& p : points_upto(extent)) {
        for (int c = 1; c <= rank; ++c) {
            std::vector<int> q = p;
            ++q[static_cast<std::size_t>(c - 1)];
            if (!has_point(q)) continue;
            EdgeId e = sk.add_edge(edge_id(c, p), c, index[p], index[q]);
            edges[{c, p}] = e;
        }
    }

    std::vector<SquareRule> rules;
    for (const auto& p : points_upto(extent)) {
        for (int i = 1; i <= rank; ++i) {
            for (int j = i + 1; j <= rank; ++j) {
                std::vector<int> pi = p, pj = p, pij = p;
                ++pi[static_cast<std::size_t>(i - 1)];
                ++pj[static_cast<std::size_t>(j - 1)];
                ++pij[static_cast<std::size_t>(i - 1)];
                ++pij[static_cast<std::size_t>(j - 1)];
                if (!has_point(pij)) continue;
                rules.push_back(SquareRule{edges[{i, p}], edges[{j, pi}], edges[{j, p}],
                                           edges[{i, pj}]});
            }
        }
    }
    return must_validate(std::move(sk), std::move(rules), "grid");
}

namespace {

// Completes a partial square set: any uncovered low-high pair that has exactly
// one endpoint-compatible unused high-low partner gets paired with it.
// Repeats to a fixpoint; an ambiguous or impossible completion is left for
// validate to report.
std::vector<SquareRule> complete_rules(const Skeleton& sk, std::vector<SquareRule> rules) {
    auto composable_pairs = [&sk](bool lohi) {
        std::vector<std::pair<EdgeId, EdgeId>> out;
        for (std::size_t a = 0; a < sk.edge_count(); ++a)
            for (std::size_t b = 0; b < sk.edge_count(); ++b) {
                const Edge& ea = sk.edge(static_cast<EdgeId>(a));
                const Edge& eb = sk.edge(static_cast<EdgeId>(b));
                if (ea.source != eb.range) continue;
                if (lohi ? ea.color < eb.color : ea.color > eb.color)
                    out.emplace_back(static_cast<EdgeId>(a), static_cast<EdgeId>(b));
            }
        return out;
    };
    std::set<std::pair<EdgeId, EdgeId>> lo_used, hi_used;
    for (const SquareRule& r : rules) {
        lo_used.insert({r.lo, r.hi});
        hi_used.insert({r.hi2, r.lo2});
    }
    auto lo_all = composable_pairs(true);
    auto hi_all = composable_pairs(false);
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& [g, h] : lo_all) {
            if (lo_used.count({g, h})) continue;
            const Edge& eg = sk.edge(g);
            const Edge& eh = sk.edge(h);
            std::vector<std::pair<EdgeId, EdgeId>> candidates;
            for (const auto& [h2, g2] : hi_all) {
                if (hi_used.count({h2, g2})) continue;
                const Edge& eh2 = sk.edge(h2);
                const Edge& eg2 = sk.edge(g2);
                if (eh2.color != eh.color || eg2.color != eg.color) continue;
                if (eh2.range != eg.range || eg2.source != eh.source) continue;
                candidates.emplace_back(h2, g2);
            }
            if (candidates.size() == 1) {
                rules.push_back(SquareRule{g, h, candidates[0].first, candidates[0].second});
                lo_used.insert({g, h});
                hi_used.insert(candidates[0]);
                progress = true;
            }
        }
    }
    return rules;
}

}  // namespace

KGraph three_graph_example() {
    Skeleton sk(3);
    VertexId v = sk.add_vertex("v");
    VertexId w = sk.add_vertex("w");
    EdgeId c = sk.add_edge("c", 1, v, v);
    EdgeId d = sk.add_edge("d", 1, w, w);
    EdgeId a = sk.add_edge("a", 2, w, v);
    EdgeId a2 = sk.add_edge("a'", 2, w, v);
    EdgeId b = sk.add_edge("b", 2, v, w);
    EdgeId b2 = sk.add_edge("b'", 2, v, w);
    EdgeId e = sk.add_edge("e", 3, v, v);
    EdgeId f = sk.add_edge("f", 3, w, w);

    // The six published squares, written low-high = high-low:
    //   da = a'c   fa = a'e   bd = cb'   bf = eb'   fd = df   ce = ec
    std::vector<SquareRule> rules = {
        {d, a, a2, c},   // d.a  = a'.c
        {a2, e, f, a},   // a'.e = f.a
        {c, b2, b, d},   // c.b' = b.d
        {b, f, e, b2},   // b.f  = e.b'
        {d, f, f, d},    // d.f  = f.d
        {c, e, e, c},    // c.e  = e.c
    };
    rules = complete_rules(sk, std::move(rules));
    return must_validate(std::move(sk), std::move(rules), "three_graph_example");
}

KGraph two_loop() {
    Skeleton sk(1);
    VertexId v = sk.add_vertex("v");
    sk.add_edge("e1", 1, v, v);
    sk.add_edge("e2", 1, v, v);
    return must_validate(std::move(sk), {}, "two_loop");
}

KGraph flip() {
    Skeleton sk(2);
    VertexId v = sk.add_vertex("v");
    EdgeId f = sk.add_edge("f", 1, v, v);
    EdgeId g = sk.add_edge("g", 2, v, v);
    return must_validate(std::move(sk), {SquareRule{f, g, g, f}}, "flip");
}

KGraph single_vertex_2graph(int blue_count, int red_count,
                            std::span<const std::pair<int, int>> rule) {
    if (blue_count < 0 || red_count < 0)
        throw std::invalid_argument("negative edge count");
    if (rule.size() != static_cast<std::size_t>(blue_count * red_count))
        throw std::invalid_argument("rule table size must be blue_count * red_count");
    std::set<std::pair<int, int>> seen;
    for (const auto& [j2, i2] : rule) {
        if (j2 < 0 || j2 >= red_count || i2 < 0 || i2 >= blue_count)
            throw std::invalid_argument("rule entry out of range");
        if (!seen.insert({j2, i2}).second)
            throw std::invalid_argument("rule table is not a bijection");
    }
    Skeleton sk(2);
    VertexId v = sk.add_vertex("v");
    std::vector<EdgeId> xs, ys;
    for (int i = 0; i < blue_count; ++i) xs.push_back(sk.add_edge("x" + std::to_string(i), 1, v, v));
    for (int j = 0; j < red_count; ++j) ys.push_back(sk.add_edge("y" + std::to_string(j), 2, v, v));
    std::vector<SquareRule> rules;
    for (int i = 0; i < blue_count; ++i)
        for (int j = 0; j < red_count; ++j) {
            auto [j2, i2] = rule[static_cast<std::size_t>(i * red_count + j)];
            rules.push_back(SquareRule{xs[static_cast<std::size_t>(i)],
                                       ys[static_cast<std::size_t>(j)],
                                       ys[static_cast<std::size_t>(j2)],
                                       xs[static_cast<std::size_t>(i2)]});
        }
    return must_validate(std::move(sk), std::move(rules), "single_vertex_2graph");
}

KGraph evans_sims(int levels) {
    return evans_sims(levels, [](int n, int i, int j) {
        return std::pair<int, int>{(i + 1) % n, (j + 1) % (n + 1)};
    });
}

KGraph evans_sims(int levels, const std::function<std::pair<int, int>(int, int, int)>& xi_zeta) {
    if (levels < 1) throw std::invalid_argument("evans_sims: levels must be >= 1");
    Skeleton sk(2);
    std::vector<VertexId> vs;
    for (int n = 0; n <= levels; ++n) vs.push_back(sk.add_vertex("v" + std::to_string(n)));
    std::vector<std::vector<EdgeId>> alpha(static_cast<std::size_t>(levels) + 1);
    std::vector<std::vector<EdgeId>> beta(static_cast<std::size_t>(levels) + 1);
    for (int n = 1; n <= levels; ++n) {
        for (int i = 0; i < n; ++i) {
            alpha[static_cast<std::size_t>(n)].push_back(
                sk.add_edge("a" + std::to_string(n) + "_" + std::to_string(i), 1,
                            vs[static_cast<std::size_t>(n - 1)], vs[static_cast<std::size_t>(n)]));
            beta[static_cast<std::size_t>(n)].push_back(
                sk.add_edge("b" + std::to_string(n) + "_" + std::to_string(i), 2,
                            vs[static_cast<std::size_t>(n - 1)], vs[static_cast<std::size_t>(n)]));
        }
    }
    std::vector<SquareRule> rules;
    for (int n = 1; n < levels; ++n) {
        std::set<std::pair<int, int>> image;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n + 1; ++j) {
                auto [i2, j2] = xi_zeta(n, i, j);
                if (i2 < 0 || i2 >= n || j2 < 0 || j2 >= n + 1)
                    throw std::invalid_argument("xi_zeta out of range at level " + std::to_string(n));
                if (!image.insert({i2, j2}).second)
                    throw std::invalid_argument("xi_zeta is not a permutation at level " +
                                                std::to_string(n));
                rules.push_back(SquareRule{alpha[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)],
                                           beta[static_cast<std::size_t>(n + 1)][static_cast<std::size_t>(j)],
                                           beta[static_cast<std::size_t>(n)][static_cast<std::size_t>(i2)],
                                           alpha[static_cast<std::size_t>(n + 1)][static_cast<std::size_t>(j2)]});
            }
        }
    }
    return must_validate(std::move(sk), std::move(rules), "evans_sims");
}

std::optional<Violation> check_twist(const KGraph& base, const TwistSpec& twist) {
    const Skeleton& sk = base.skeleton();
    if (twist.fiber < 1)
        return Violation{"twist-shape", {}, "fiber size must be >= 1"};
    if (twist.maps.size() != sk.edge_count())
        return Violation{"twist-shape", {}, "twist must map every edge (got " +
                                                std::to_string(twist.maps.size()) + " of " +
                                                std::to_string(sk.edge_count()) + ")"};
    for (std::size_t e = 0; e < twist.maps.size(); ++e) {
        if (twist.maps[e].size() != static_cast<std::size_t>(twist.fiber))
            return Violation{"twist-shape", {sk.edge(static_cast<EdgeId>(e)).id},
                             "map for edge " + sk.edge(static_cast<EdgeId>(e)).id +
                                 " must have exactly fiber entries"};
        for (int x : twist.maps[e])
            if (x < 0 || x >= twist.fiber)
                return Violation{"twist-shape", {sk.edge(static_cast<EdgeId>(e)).id},
                                 "map for edge " + sk.edge(static_cast<EdgeId>(e)).id +
                                     " leaves the fiber"};
    }
    for (const SquareRule& r : base.rules()) {
        for (int x = 0; x < twist.fiber; ++x) {
            int left = twist.maps[r.lo][static_cast<std::size_t>(twist.maps[r.hi][static_cast<std::size_t>(x)])];
            int right = twist.maps[r.hi2][static_cast<std::size_t>(twist.maps[r.lo2][static_cast<std::size_t>(x)])];
            if (left != right)
                return Violation{
                    "twist-functoriality",
                    {sk.edge(r.lo).id, sk.edge(r.hi).id, sk.edge(r.hi2).id, sk.edge(r.lo2).id},
                    "square " + sk.edge(r.lo).id + "." + sk.edge(r.hi).id + " = " +
                        sk.edge(r.hi2).id + "." + sk.edge(r.lo2).id +
                        " breaks functoriality at fiber point " + std::to_string(x)};
        }
    }
    return std::nullopt;
}

KGraph twisted_product(const KGraph& base, const TwistSpec& twist,
                       std::vector<std::string>* warnings) {
    if (auto bad = check_twist(base, twist))
        throw std::invalid_argument("twisted_product: " + bad->message);
    if (warnings) {
        auto sources = find_sources(base);
        if (!sources.empty())
            warnings->push_back("base graph has " + std::to_string(sources.size()) +
                                " (vertex, color) sources; the product is built anyway");
    }
    const Skeleton& sk = base.skeleton();
    const int fiber = twist.fiber;
    Skeleton product(base.rank());
    auto vid = [&](VertexId v, int x) { return sk.vertex_id(v) + "@" + std::to_string(x); };
    std::vector<std::vector<VertexId>> pv(sk.vertex_count());
    for (std::size_t v = 0; v < sk.vertex_count(); ++v)
        for (int x = 0; x < fiber; ++x)
            pv[v].push_back(product.add_vertex(vid(static_cast<VertexId>(v), x)));
    std::vector<std::vector<EdgeId>> pe(sk.edge_count());
    for (std::size_t e = 0; e < sk.edge_count(); ++e) {
        const Edge& ed = sk.edge(static_cast<EdgeId>(e));
        for (int x = 0; x < fiber; ++x) {
            int y = twist.maps[e][static_cast<std::size_t>(x)];
            pe[e].push_back(product.add_edge(ed.id + "@" + std::to_string(x), ed.color,
                                             pv[ed.range][static_cast<std::size_t>(y)],
                                             pv[ed.source][static_cast<std::size_t>(x)]));
        }
    }
    std::vector<SquareRule> rules;
    for (const SquareRule& r : base.rules()) {
        for (int x = 0; x < fiber; ++x) {
            int via_hi = twist.maps[r.hi][static_cast<std::size_t>(x)];
            int via_lo2 = twist.maps[r.lo2][static_cast<std::size_t>(x)];
            rules.push_back(SquareRule{pe[r.lo][static_cast<std::size_t>(via_hi)],
                                       pe[r.hi][static_cast<std::size_t>(x)],
                                       pe[r.hi2][static_cast<std::size_t>(via_lo2)],
                                       pe[r.lo2][static_cast<std::size_t>(x)]});
        }
    }
    return must_validate(std::move(product), std::move(rules), "twisted_product");
}

namespace {

int trailing_number(const std::string& id) {
    std::size_t pos = id.size();
    while (pos > 0 && std::isdigit(static_cast<unsigned char>(id[pos - 1]))) --pos;
    if (pos == id.size())
        throw std::invalid_argument("vertex id \"" + id + "\" has no numeric suffix");
    return std::stoi(id.substr(pos));
}

}  // namespace

TwistSpec mul_by_level_twist(const KGraph& ladder, int fiber) {
    TwistSpec twist;
    twist.fiber = fiber;
    const Skeleton& sk = ladder.skeleton();
    for (std::size_t e = 0; e < sk.edge_count(); ++e) {
        int level = trailing_number(sk.vertex_id(sk.edge(static_cast<EdgeId>(e)).source));
        std::vector<int> map(static_cast<std::size_t>(fiber));
        for (int x = 0; x < fiber; ++x)
            map[static_cast<std::size_t>(x)] = static_cast<int>((static_cast<long long>(level) * x) % fiber);
        twist.maps.push_back(std::move(map));
    }
    return twist;
}

TwistSpec constant_mul_twist(const KGraph& base, int fiber, int factor) {
    TwistSpec twist;
    twist.fiber = fiber;
    for (std::size_t e = 0; e < base.skeleton().edge_count(); ++e) {
        std::vector<int> map(static_cast<std::size_t>(fiber));
        for (int x = 0; x < fiber; ++x)
            map[static_cast<std::size_t>(x)] =
                static_cast<int>((static_cast<long long>(factor) * x) % fiber);
        twist.maps.push_back(std::move(map));
    }
    return twist;
}

}  // namespace kgraph
