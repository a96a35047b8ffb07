#include "kgraph/kgraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace kgraph {

namespace {

std::uint64_t pair_key(EdgeId a, EdgeId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Skeleton

Skeleton::Skeleton(int rank) : rank_(rank) {
    if (rank < 1) throw std::invalid_argument("rank must be >= 1");
}

VertexId Skeleton::add_vertex(std::string id) {
    if (id.empty()) throw std::invalid_argument("empty vertex id");
    if (find_vertex(id)) throw std::invalid_argument("duplicate vertex id: " + id);
    if (find_edge(id)) throw std::invalid_argument("vertex id collides with edge id: " + id);
    vertices_.push_back(std::move(id));
    return static_cast<VertexId>(vertices_.size() - 1);
}

EdgeId Skeleton::add_edge(std::string id, int color, VertexId range, VertexId source) {
    if (id.empty()) throw std::invalid_argument("empty edge id");
    if (find_edge(id)) throw std::invalid_argument("duplicate edge id: " + id);
    if (find_vertex(id)) throw std::invalid_argument("edge id collides with vertex id: " + id);
    if (color < 1) throw std::invalid_argument("edge color must be >= 1");
    if (range >= vertices_.size() || source >= vertices_.size())
        throw std::invalid_argument("edge endpoint refers to unknown vertex");
    edges_.push_back(Edge{std::move(id), color, range, source});
    return static_cast<EdgeId>(edges_.size() - 1);
}

EdgeId Skeleton::add_edge(std::string id, int color, const std::string& range_id,
                          const std::string& source_id) {
    auto r = find_vertex(range_id);
    auto s = find_vertex(source_id);
    if (!r) throw std::invalid_argument("unknown range vertex: " + range_id);
    if (!s) throw std::invalid_argument("unknown source vertex: " + source_id);
    return add_edge(std::move(id), color, *r, *s);
}

std::optional<VertexId> Skeleton::find_vertex(const std::string& id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i] == id) return static_cast<VertexId>(i);
    return std::nullopt;
}

std::optional<EdgeId> Skeleton::find_edge(const std::string& id) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].id == id) return static_cast<EdgeId>(i);
    return std::nullopt;
}

std::string ValidationReport::str() const {
    std::string out;
    for (const auto& v : violations) {
        out += v.kind;
        out += ": ";
        out += v.message;
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// KGraph internals

struct KGraph::Data {
    Skeleton skeleton;
    std::vector<SquareRule> rules;
    std::unordered_map<std::uint64_t, std::pair<EdgeId, EdgeId>> lohi;
    std::unordered_map<std::uint64_t, std::pair<EdgeId, EdgeId>> hilo;
    // Per-vertex edge lists sorted by (color, id), with per-color offsets.
    std::vector<std::vector<EdgeId>> by_range;
    std::vector<std::vector<EdgeId>> by_source;
    std::vector<std::vector<int>> range_offsets;   // size rank+1 per vertex
    std::vector<std::vector<int>> source_offsets;
    std::vector<std::vector<char>> grow;  // grow[v][c-1]: color c occurs in vL

    Data(Skeleton sk, std::vector<SquareRule> rs) : skeleton(std::move(sk)), rules(std::move(rs)) {}
};

int KGraph::rank() const { return data_->skeleton.rank(); }
const Skeleton& KGraph::skeleton() const { return data_->skeleton; }
std::span<const SquareRule> KGraph::rules() const { return data_->rules; }

std::pair<EdgeId, EdgeId> KGraph::swap_pair(EdgeId a, EdgeId b) const {
    const Edge& ea = edge(a);
    const Edge& eb = edge(b);
    if (ea.source != eb.range) throw std::invalid_argument("swap_pair: edges not composable");
    if (ea.color == eb.color) throw std::invalid_argument("swap_pair: equal colors");
    const auto& map = ea.color < eb.color ? data_->lohi : data_->hilo;
    auto it = map.find(pair_key(a, b));
    if (it == map.end())
        throw std::logic_error("swap_pair: no rule for (" + ea.id + "," + eb.id + ")");
    return it->second;
}

std::span<const EdgeId> KGraph::edges_with_range(VertexId v) const {
    return data_->by_range[v];
}

std::span<const EdgeId> KGraph::edges_with_range(VertexId v, int color) const {
    const auto& off = data_->range_offsets[v];
    const auto& all = data_->by_range[v];
    return std::span<const EdgeId>(all).subspan(
        static_cast<std::size_t>(off[static_cast<std::size_t>(color - 1)]),
        static_cast<std::size_t>(off[static_cast<std::size_t>(color)] -
                                 off[static_cast<std::size_t>(color - 1)]));
}

std::span<const EdgeId> KGraph::edges_with_source(VertexId v) const {
    return data_->by_source[v];
}

std::span<const EdgeId> KGraph::edges_with_source(VertexId v, int color) const {
    const auto& off = data_->source_offsets[v];
    const auto& all = data_->by_source[v];
    return std::span<const EdgeId>(all).subspan(
        static_cast<std::size_t>(off[static_cast<std::size_t>(color - 1)]),
        static_cast<std::size_t>(off[static_cast<std::size_t>(color)] -
                                 off[static_cast<std::size_t>(color - 1)]));
}

bool KGraph::color_reachable(VertexId v, int color) const {
    return data_->grow[v][static_cast<std::size_t>(color - 1)] != 0;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

struct Checker {
    const Skeleton& sk;
    const std::vector<SquareRule>& rules;
    ValidationReport report;

    void add(std::string kind, std::vector<std::string> items, std::string message) {
        report.violations.push_back({std::move(kind), std::move(items), std::move(message)});
    }

    const Edge& e(EdgeId id) { return sk.edge(id); }

    bool check_skeleton() {
        bool ok = true;
        if (sk.vertex_count() == 0) {
            add("empty-vertex-set", {}, "skeleton has no vertices");
            ok = false;
        }
        for (std::size_t i = 0; i < sk.edge_count(); ++i) {
            const Edge& ed = sk.edge(static_cast<EdgeId>(i));
            if (ed.color < 1 || ed.color > sk.rank()) {
                add("bad-color", {ed.id},
                    "edge " + ed.id + " has color " + std::to_string(ed.color) +
                        " outside 1.." + std::to_string(sk.rank()));
                ok = false;
            }
        }
        return ok;
    }

    bool check_rule_shapes() {
        bool ok = true;
        for (const SquareRule& r : rules) {
            if (r.lo >= sk.edge_count() || r.hi >= sk.edge_count() || r.hi2 >= sk.edge_count() ||
                r.lo2 >= sk.edge_count()) {
                add("bad-rule", {}, "rule refers to unknown edge");
                ok = false;
                continue;
            }
            const Edge &lo = e(r.lo), &hi = e(r.hi), &hi2 = e(r.hi2), &lo2 = e(r.lo2);
            if (!(lo.color < hi.color)) {
                add("rule-colors", {lo.id, hi.id},
                    "lhs (" + lo.id + "," + hi.id + ") is not color-ordered low-high");
                ok = false;
            }
            if (hi2.color != hi.color || lo2.color != lo.color) {
                add("rule-colors", {hi2.id, lo2.id},
                    "rhs (" + hi2.id + "," + lo2.id + ") colors do not mirror the lhs");
                ok = false;
            }
            if (lo.source != hi.range) {
                add("rule-composability", {lo.id, hi.id},
                    "lhs (" + lo.id + "," + hi.id + ") is not composable");
                ok = false;
            }
            if (hi2.source != lo2.range) {
                add("rule-composability", {hi2.id, lo2.id},
                    "rhs (" + hi2.id + "," + lo2.id + ") is not composable");
                ok = false;
            }
            if (lo.range != hi2.range) {
                add("endpoint", {lo.id, hi2.id},
                    "square " + lo.id + "." + hi.id + " = " + hi2.id + "." + lo2.id +
                        " changes the range");
                ok = false;
            }
            if (hi.source != lo2.source) {
                add("endpoint", {hi.id, lo2.id},
                    "square " + lo.id + "." + hi.id + " = " + hi2.id + "." + lo2.id +
                        " changes the source");
                ok = false;
            }
        }
        return ok;
    }

    // Every composable low-high pair must be the lhs of exactly one rule, and
    // every composable high-low pair the rhs of exactly one rule. Together
    // with the per-rule endpoint checks this makes the two directions
    // mutually inverse bijections.
    bool check_coverage() {
        bool ok = true;
        std::unordered_map<std::uint64_t, int> lhs_count, rhs_count;
        for (const SquareRule& r : rules) {
            ++lhs_count[pair_key(r.lo, r.hi)];
            ++rhs_count[pair_key(r.hi2, r.lo2)];
        }
        for (std::size_t a = 0; a < sk.edge_count(); ++a) {
            for (std::size_t b = 0; b < sk.edge_count(); ++b) {
                const Edge& ea = sk.edge(static_cast<EdgeId>(a));
                const Edge& eb = sk.edge(static_cast<EdgeId>(b));
                if (ea.source != eb.range || ea.color == eb.color) continue;
                bool is_lohi = ea.color < eb.color;
                auto& counts = is_lohi ? lhs_count : rhs_count;
                int c = 0;
                if (auto it = counts.find(pair_key(static_cast<EdgeId>(a), static_cast<EdgeId>(b)));
                    it != counts.end())
                    c = it->second;
                if (c == 0) {
                    add("missing-square", {ea.id, eb.id},
                        std::string("no square covers the ") + (is_lohi ? "low-high" : "high-low") +
                            " pair (" + ea.id + "," + eb.id + ")");
                    ok = false;
                } else if (c > 1) {
                    add("duplicate-square", {ea.id, eb.id},
                        "pair (" + ea.id + "," + eb.id + ") appears in " + std::to_string(c) +
                            " squares");
                    ok = false;
                }
            }
        }
        return ok;
    }

    // Both rewriting routes from a strictly color-descending triple to the
    // ascending order must produce the same edges (diamond property at degree
    // e_i + e_j + e_l; with termination this gives confluence).
    bool check_associativity(const std::unordered_map<std::uint64_t, std::pair<EdgeId, EdgeId>>& lohi,
                             const std::unordered_map<std::uint64_t, std::pair<EdgeId, EdgeId>>& hilo) {
        bool ok = true;
        auto swap_at = [&](std::array<EdgeId, 3>& t, int pos) {
            EdgeId a = t[static_cast<std::size_t>(pos)];
            EdgeId b = t[static_cast<std::size_t>(pos + 1)];
            const auto& map = sk.edge(a).color < sk.edge(b).color ? lohi : hilo;
            auto it = map.find(pair_key(a, b));
            auto [b2, a2] = it->second;
            t[static_cast<std::size_t>(pos)] = b2;
            t[static_cast<std::size_t>(pos + 1)] = a2;
        };
        for (std::size_t a = 0; a < sk.edge_count(); ++a) {
            for (std::size_t b = 0; b < sk.edge_count(); ++b) {
                const Edge& ea = sk.edge(static_cast<EdgeId>(a));
                const Edge& eb = sk.edge(static_cast<EdgeId>(b));
                if (ea.source != eb.range || ea.color <= eb.color) continue;
                for (std::size_t c = 0; c < sk.edge_count(); ++c) {
                    const Edge& ec = sk.edge(static_cast<EdgeId>(c));
                    if (eb.source != ec.range || eb.color <= ec.color) continue;
                    std::array<EdgeId, 3> left{static_cast<EdgeId>(a), static_cast<EdgeId>(b),
                                               static_cast<EdgeId>(c)};
                    std::array<EdgeId, 3> right = left;
                    swap_at(left, 0);
                    swap_at(left, 1);
                    swap_at(left, 0);
                    swap_at(right, 1);
                    swap_at(right, 0);
                    swap_at(right, 1);
                    if (left != right) {
                        add("associativity", {ea.id, eb.id, ec.id},
                            "triple (" + ea.id + "," + eb.id + "," + ec.id +
                                ") rewrites to different normal forms: (" + sk.edge(left[0]).id +
                                "," + sk.edge(left[1]).id + "," + sk.edge(left[2]).id + ") vs (" +
                                sk.edge(right[0]).id + "," + sk.edge(right[1]).id + "," +
                                sk.edge(right[2]).id + ")");
                        ok = false;
                    }
                }
            }
        }
        return ok;
    }
};

}  // namespace

ValidationOutcome validate(Skeleton skeleton, std::vector<SquareRule> rules) {
    Checker ch{skeleton, rules, {}};
    bool shapes = ch.check_skeleton();
    shapes = ch.check_rule_shapes() && shapes;
    bool coverage = ch.check_coverage();
    ValidationOutcome out;

    if (!(shapes && coverage)) {
        out.report = std::move(ch.report);
        return out;
    }

    auto data = std::make_shared<KGraph::Data>(std::move(skeleton), std::move(rules));
    for (const SquareRule& r : data->rules) {
        data->lohi[pair_key(r.lo, r.hi)] = {r.hi2, r.lo2};
        data->hilo[pair_key(r.hi2, r.lo2)] = {r.lo, r.hi};
    }

    if (data->skeleton.rank() >= 3) {
        Checker assoc{data->skeleton, data->rules, {}};
        if (!assoc.check_associativity(data->lohi, data->hilo)) {
            out.report = std::move(assoc.report);
            return out;
        }
    }

    const Skeleton& sk = data->skeleton;
    const int rank = sk.rank();
    data->by_range.resize(sk.vertex_count());
    data->by_source.resize(sk.vertex_count());
    for (std::size_t i = 0; i < sk.edge_count(); ++i) {
        const Edge& ed = sk.edge(static_cast<EdgeId>(i));
        data->by_range[ed.range].push_back(static_cast<EdgeId>(i));
        data->by_source[ed.source].push_back(static_cast<EdgeId>(i));
    }
    auto order = [&sk](EdgeId x, EdgeId y) {
        const Edge& ex = sk.edge(x);
        const Edge& ey = sk.edge(y);
        if (ex.color != ey.color) return ex.color < ey.color;
        return ex.id < ey.id;
    };
    auto offsets_for = [&](const std::vector<EdgeId>& list) {
        std::vector<int> off(static_cast<std::size_t>(rank) + 1, 0);
        for (EdgeId eid : list) ++off[static_cast<std::size_t>(sk.edge(eid).color)];
        for (int c = 1; c <= rank; ++c)
            off[static_cast<std::size_t>(c)] += off[static_cast<std::size_t>(c - 1)];
        std::vector<int> result(static_cast<std::size_t>(rank) + 1, 0);
        for (int c = 1; c <= rank; ++c) result[static_cast<std::size_t>(c)] = off[static_cast<std::size_t>(c)];
        return result;
    };
    data->range_offsets.resize(sk.vertex_count());
    data->source_offsets.resize(sk.vertex_count());
    for (std::size_t v = 0; v < sk.vertex_count(); ++v) {
        std::sort(data->by_range[v].begin(), data->by_range[v].end(), order);
        std::sort(data->by_source[v].begin(), data->by_source[v].end(), order);
        data->range_offsets[v] = offsets_for(data->by_range[v]);
        data->source_offsets[v] = offsets_for(data->by_source[v]);
    }

    // Color reachability along extensions: fixpoint of
    // grow(v) = union over edges e with range v of {color(e)} + grow(source(e)).
    data->grow.assign(sk.vertex_count(), std::vector<char>(static_cast<std::size_t>(rank), 0));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < sk.edge_count(); ++i) {
            const Edge& ed = sk.edge(static_cast<EdgeId>(i));
            auto& gv = data->grow[ed.range];
            if (!gv[static_cast<std::size_t>(ed.color - 1)]) {
                gv[static_cast<std::size_t>(ed.color - 1)] = 1;
                changed = true;
            }
            const auto& gs = data->grow[ed.source];
            for (int c = 0; c < rank; ++c) {
                if (gs[static_cast<std::size_t>(c)] && !gv[static_cast<std::size_t>(c)]) {
                    gv[static_cast<std::size_t>(c)] = 1;
                    changed = true;
                }
            }
        }
    }

    out.graph = KGraph(std::move(data));
    return out;
}

std::vector<std::pair<VertexId, int>> find_sources(const KGraph& g) {
    std::vector<std::pair<VertexId, int>> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        for (int c = 1; c <= g.rank(); ++c)
            if (g.edges_with_range(static_cast<VertexId>(v), c).empty())
                out.emplace_back(static_cast<VertexId>(v), c);
    return out;
}

}  // namespace kgraph
