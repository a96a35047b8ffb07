#include "kgraph/path.hpp"

#include <algorithm>
#include <stdexcept>

namespace kgraph {

namespace {

struct RawInfo {
    VertexId range;
    VertexId source;
    Degree degree;
};

RawInfo check_raw(const KGraph& g, std::span<const EdgeId> seq) {
    if (seq.empty()) throw std::invalid_argument("empty edge sequence has no endpoints");
    std::vector<int> counts(static_cast<std::size_t>(g.rank()), 0);
    for (std::size_t t = 0; t < seq.size(); ++t) {
        const Edge& e = g.edge(seq[t]);
        ++counts[static_cast<std::size_t>(e.color - 1)];
        if (t + 1 < seq.size() && e.source != g.edge(seq[t + 1]).range)
            throw std::invalid_argument("edge sequence not composable at position " +
                                        std::to_string(t) + " (" + e.id + "," +
                                        g.edge(seq[t + 1]).id + ")");
    }
    return RawInfo{g.edge(seq.front()).range, g.edge(seq.back()).source, Degree(std::move(counts))};
}

// Deterministic normalization: repeatedly fix the leftmost color inversion.
// Each swap removes exactly one inversion, so this terminates; the validated
// rules make the result independent of the swap order.
void sort_colors(const KGraph& g, std::vector<EdgeId>& seq) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
            if (g.edge(seq[t]).color > g.edge(seq[t + 1]).color) {
                auto [b2, a2] = g.swap_pair(seq[t], seq[t + 1]);
                seq[t] = b2;
                seq[t + 1] = a2;
                changed = true;
            }
        }
    }
}

// Moves every edge of the given color to the front block, preserving the
// relative order of the rest. Used by split to peel one color at a time.
void pull_color_front(const KGraph& g, std::vector<EdgeId>& seq, int color) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
            if (g.edge(seq[t]).color != color && g.edge(seq[t + 1]).color == color) {
                auto [b2, a2] = g.swap_pair(seq[t], seq[t + 1]);
                seq[t] = b2;
                seq[t + 1] = a2;
                changed = true;
            }
        }
    }
}

}  // namespace

Path::Path(KGraph g, std::vector<EdgeId> edges, VertexId range, VertexId source, Degree degree)
    : graph_(std::move(g)),
      edges_(std::move(edges)),
      range_(range),
      source_(source),
      degree_(std::move(degree)) {}

Path Path::vertex(const KGraph& g, VertexId v) {
    if (v >= g.vertex_count()) throw std::invalid_argument("unknown vertex");
    return Path(g, {}, v, v, Degree::zero(g.rank()));
}

Path Path::from_edges(const KGraph& g, std::span<const EdgeId> raw) {
    RawInfo info = check_raw(g, raw);
    std::vector<EdgeId> seq(raw.begin(), raw.end());
    sort_colors(g, seq);
    return Path(g, std::move(seq), info.range, info.source, std::move(info.degree));
}

std::string Path::str() const {
    if (is_vertex()) return graph_.vertex_id(range_);
    std::string out;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (i) out += ',';
        out += graph_.edge(edges_[i]).id;
    }
    return out;
}

bool Path::operator==(const Path& other) const {
    if (!graph_.same(other.graph_)) return false;
    if (is_vertex() || other.is_vertex()) return range_ == other.range_ && edges_ == other.edges_;
    return edges_ == other.edges_;
}

bool path_less(const Path& a, const Path& b) {
    if (a.degree() != b.degree()) return degree_less(a.degree(), b.degree());
    if (a.is_vertex() && b.is_vertex()) return a.range() < b.range();
    return a.edges() < b.edges();
}

Path compose(const Path& mu, const Path& nu) {
    if (!mu.graph().same(nu.graph()))
        throw std::invalid_argument("compose: paths from different graphs");
    if (mu.source() != nu.range())
        throw std::invalid_argument("compose: source(" + mu.str() + ") != range(" + nu.str() + ")");
    if (mu.is_vertex()) return nu;
    if (nu.is_vertex()) return mu;
    std::vector<EdgeId> seq = mu.edges();
    seq.insert(seq.end(), nu.edges().begin(), nu.edges().end());
    sort_colors(mu.graph(), seq);
    return Path(mu.graph(), std::move(seq), mu.range(), nu.source(),
                plus(mu.degree(), nu.degree()));
}

std::pair<Path, Path> split(const Path& lambda, const Degree& m) {
    const KGraph& g = lambda.graph();
    if (!leq(m, lambda.degree()))
        throw std::invalid_argument("split: degree " + m.str() + " exceeds d(path) = " +
                                    lambda.degree().str());
    if (m.is_zero()) return {Path::vertex(g, lambda.range()), lambda};
    if (m == lambda.degree()) return {lambda, Path::vertex(g, lambda.source())};

    std::vector<EdgeId> rest = lambda.edges();
    std::vector<EdgeId> head;
    for (int c = 1; c <= g.rank(); ++c) {
        int need = m[c - 1];
        if (need == 0) continue;
        pull_color_front(g, rest, c);
        head.insert(head.end(), rest.begin(), rest.begin() + need);
        rest.erase(rest.begin(), rest.begin() + need);
    }
    // head is built in ascending color blocks peeled consecutively, so it is
    // already a normal form; rest still needs sorting.
    VertexId mid = g.edge(head.back()).source;
    Path mu(g, std::move(head), lambda.range(), mid, m);
    if (rest.empty()) return {mu, Path::vertex(g, lambda.source())};
    sort_colors(g, rest);
    Path nu(g, std::move(rest), mid, lambda.source(), minus(lambda.degree(), m));
    return {mu, nu};
}

Path segment(const Path& lambda, const Degree& m, const Degree& n) {
    if (!leq(m, n) || !leq(n, lambda.degree()))
        throw std::invalid_argument("segment: need 0 <= " + m.str() + " <= " + n.str() +
                                    " <= " + lambda.degree().str());
    return split(split(lambda, n).first, m).second;
}

Path normalize_shuffled(const KGraph& g, std::span<const EdgeId> raw, std::mt19937& rng) {
    RawInfo info = check_raw(g, raw);
    std::vector<EdgeId> seq(raw.begin(), raw.end());
    while (true) {
        std::vector<std::size_t> inversions;
        for (std::size_t t = 0; t + 1 < seq.size(); ++t)
            if (g.edge(seq[t]).color > g.edge(seq[t + 1]).color) inversions.push_back(t);
        if (inversions.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, inversions.size() - 1);
        std::size_t t = inversions[pick(rng)];
        auto [b2, a2] = g.swap_pair(seq[t], seq[t + 1]);
        seq[t] = b2;
        seq[t + 1] = a2;
    }
    return Path::from_edges(g, seq);
}

namespace {

void walk_color(const KGraph& g, int color, VertexId at, int steps, std::vector<EdgeId>& acc,
                const Degree& target, int next_color, std::vector<Path>& out);

void next_block(const KGraph& g, VertexId at, const Degree& target, int color,
                std::vector<EdgeId>& acc, std::vector<Path>& out) {
    if (color > g.rank()) {
        if (acc.empty())
            out.push_back(Path::vertex(g, at));
        else
            out.push_back(Path::from_edges(g, acc));
        return;
    }
    walk_color(g, color, at, target[color - 1], acc, target, color + 1, out);
}

void walk_color(const KGraph& g, int color, VertexId at, int steps, std::vector<EdgeId>& acc,
                const Degree& target, int next_color, std::vector<Path>& out) {
    if (steps == 0) {
        next_block(g, at, target, next_color, out);
        return;
    }
    for (EdgeId e : g.edges_with_range(at, color)) {
        acc.push_back(e);
        walk_color(g, color, g.edge(e).source, steps - 1, acc, target, next_color, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Path> paths_from(const KGraph& g, VertexId v, const Degree& n) {
    if (v >= g.vertex_count()) throw std::invalid_argument("unknown vertex");
    if (n.rank() != g.rank()) throw std::invalid_argument("degree rank mismatch");
    std::vector<Path> out;
    std::vector<EdgeId> acc;
    next_block(g, v, n, 1, acc, out);
    return out;
}

std::vector<Path> paths_from_upto(const KGraph& g, VertexId v, const Degree& bound) {
    std::vector<Path> out;
    for (const Degree& d : degrees_upto(bound)) {
        std::vector<Path> batch = paths_from(g, v, d);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

namespace {

// Builds normal forms from the source end: blocks are laid down from color
// rank down to 1, each block itself extended right-to-left.
void walk_color_back(const KGraph& g, int color, VertexId at, int steps,
                     std::vector<EdgeId>& acc_rev, const Degree& target, std::vector<Path>& out);

void prev_block(const KGraph& g, VertexId at, const Degree& target, int color,
                std::vector<EdgeId>& acc_rev, std::vector<Path>& out) {
    if (color < 1) {
        if (acc_rev.empty()) {
            out.push_back(Path::vertex(g, at));
        } else {
            std::vector<EdgeId> seq(acc_rev.rbegin(), acc_rev.rend());
            out.push_back(Path::from_edges(g, seq));
        }
        return;
    }
    walk_color_back(g, color, at, target[color - 1], acc_rev, target, out);
}

void walk_color_back(const KGraph& g, int color, VertexId at, int steps,
                     std::vector<EdgeId>& acc_rev, const Degree& target, std::vector<Path>& out) {
    if (steps == 0) {
        prev_block(g, at, target, color - 1, acc_rev, out);
        return;
    }
    for (EdgeId e : g.edges_with_source(at, color)) {
        acc_rev.push_back(e);
        walk_color_back(g, color, g.edge(e).range, steps - 1, acc_rev, target, out);
        acc_rev.pop_back();
    }
}

}  // namespace

std::vector<Path> paths_into(const KGraph& g, VertexId v, const Degree& n) {
    if (v >= g.vertex_count()) throw std::invalid_argument("unknown vertex");
    if (n.rank() != g.rank()) throw std::invalid_argument("degree rank mismatch");
    std::vector<Path> out;
    std::vector<EdgeId> acc_rev;
    prev_block(g, v, n, g.rank(), acc_rev, out);
    return out;
}

Path parse_path(const KGraph& g, const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty path string");
    if (text.find(',') == std::string::npos) {
        if (auto v = g.skeleton().find_vertex(text)) return Path::vertex(g, *v);
        if (auto e = g.skeleton().find_edge(text)) {
            EdgeId ids[1] = {*e};
            return Path::from_edges(g, ids);
        }
        throw std::invalid_argument("unknown vertex or edge id: \"" + text + "\"");
    }
    std::vector<EdgeId> seq;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto e = g.skeleton().find_edge(part);
        if (!e) throw std::invalid_argument("unknown edge id: \"" + part + "\"");
        seq.push_back(*e);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Path::from_edges(g, seq);
}

}  // namespace kgraph
