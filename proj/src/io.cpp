#include "kgraph/io.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "json.hpp"

namespace kgraph {

using nlohmann::json;

namespace {

struct DocumentReader {
    std::vector<ParseIssue>& issues;

    void issue(std::string where, std::string message) {
        issues.push_back({std::move(where), std::move(message)});
    }

    bool require(bool cond, const std::string& where, const std::string& message) {
        if (!cond) issue(where, message);
        return cond;
    }

    std::optional<GraphDocument> read(const json& j) {
        GraphDocument doc;
        if (!require(j.is_object(), "$", "document must be a JSON object")) return std::nullopt;
        if (!require(j.contains("rank") && j["rank"].is_number_integer(), "$.rank",
                     "missing integer rank"))
            return std::nullopt;
        doc.rank = j["rank"].get<int>();
        if (!require(doc.rank >= 1, "$.rank", "rank must be >= 1")) return std::nullopt;

        if (!require(j.contains("vertices") && j["vertices"].is_array(), "$.vertices",
                     "missing vertices array"))
            return std::nullopt;
        std::set<std::string> vertex_ids;
        for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
            const json& v = j["vertices"][i];
            std::string where = "$.vertices[" + std::to_string(i) + "]";
            if (!require(v.is_string(), where, "vertex id must be a string")) return std::nullopt;
            std::string id = v.get<std::string>();
            if (!require(!id.empty(), where, "vertex id must be nonempty")) return std::nullopt;
            if (!require(vertex_ids.insert(id).second, where, "duplicate vertex id: " + id))
                return std::nullopt;
            doc.vertices.push_back(std::move(id));
        }

        if (!require(j.contains("edges") && j["edges"].is_array(), "$.edges",
                     "missing edges array"))
            return std::nullopt;
        std::set<std::string> edge_ids;
        for (std::size_t i = 0; i < j["edges"].size(); ++i) {
            const json& e = j["edges"][i];
            std::string where = "$.edges[" + std::to_string(i) + "]";
            if (!require(e.is_object() && e.contains("id") && e["id"].is_string() &&
                             e.contains("color") && e["color"].is_number_integer() &&
                             e.contains("range") && e["range"].is_string() &&
                             e.contains("source") && e["source"].is_string(),
                         where, "edge must have string id/range/source and integer color"))
                return std::nullopt;
            GraphDocument::EdgeRecord rec;
            rec.id = e["id"].get<std::string>();
            rec.color = e["color"].get<int>();
            rec.range = e["range"].get<std::string>();
            rec.source = e["source"].get<std::string>();
            if (!require(!rec.id.empty(), where, "edge id must be nonempty")) return std::nullopt;
            if (!require(edge_ids.insert(rec.id).second, where, "duplicate edge id: " + rec.id))
                return std::nullopt;
            if (!require(!vertex_ids.count(rec.id), where,
                         "edge id collides with vertex id: " + rec.id))
                return std::nullopt;
            if (!require(rec.color >= 1 && rec.color <= doc.rank, where,
                         "edge color outside 1.." + std::to_string(doc.rank)))
                return std::nullopt;
            if (!require(vertex_ids.count(rec.range), where, "unknown range vertex: " + rec.range))
                return std::nullopt;
            if (!require(vertex_ids.count(rec.source), where,
                         "unknown source vertex: " + rec.source))
                return std::nullopt;
            doc.edges.push_back(std::move(rec));
        }

        if (!require(j.contains("squares") && j["squares"].is_array(), "$.squares",
                     "missing squares array"))
            return std::nullopt;
        for (std::size_t i = 0; i < j["squares"].size(); ++i) {
            const json& s = j["squares"][i];
            std::string where = "$.squares[" + std::to_string(i) + "]";
            auto pair_ok = [&](const char* key) {
                return s.is_object() && s.contains(key) && s[key].is_array() &&
                       s[key].size() == 2 && s[key][0].is_string() && s[key][1].is_string();
            };
            if (!require(pair_ok("lo_hi") && pair_ok("hi_lo"), where,
                         "square must have lo_hi and hi_lo pairs of edge ids"))
                return std::nullopt;
            GraphDocument::SquareRecord rec;
            rec.lo = s["lo_hi"][0].get<std::string>();
            rec.hi = s["lo_hi"][1].get<std::string>();
            rec.hi2 = s["hi_lo"][0].get<std::string>();
            rec.lo2 = s["hi_lo"][1].get<std::string>();
            for (const std::string& id : {rec.lo, rec.hi, rec.hi2, rec.lo2})
                if (!require(edge_ids.count(id), where, "unknown edge id in square: " + id))
                    return std::nullopt;
            doc.squares.push_back(std::move(rec));
        }

        if (j.contains("twist")) {
            const json& t = j["twist"];
            if (!require(t.is_object() && t.contains("fiber") && t["fiber"].is_number_integer() &&
                             t.contains("maps") && t["maps"].is_object(),
                         "$.twist", "twist must have integer fiber and a maps object"))
                return std::nullopt;
            GraphDocument::TwistRecord twist;
            twist.fiber = t["fiber"].get<int>();
            if (!require(twist.fiber >= 1, "$.twist.fiber", "fiber must be >= 1"))
                return std::nullopt;
            for (auto it = t["maps"].begin(); it != t["maps"].end(); ++it) {
                std::string where = "$.twist.maps." + it.key();
                if (!require(edge_ids.count(it.key()), where, "unknown edge id: " + it.key()))
                    return std::nullopt;
                if (!require(it.value().is_array() &&
                                 it.value().size() == static_cast<std::size_t>(twist.fiber),
                             where, "map must be an array of exactly fiber integers"))
                    return std::nullopt;
                std::vector<int> map;
                for (const json& x : it.value()) {
                    if (!require(x.is_number_integer(), where, "map entries must be integers"))
                        return std::nullopt;
                    int val = x.get<int>();
                    if (!require(val >= 0 && val < twist.fiber, where,
                                 "map entry leaves the fiber"))
                        return std::nullopt;
                    map.push_back(val);
                }
                twist.maps[it.key()] = std::move(map);
            }
            if (!require(twist.maps.size() == edge_ids.size(), "$.twist.maps",
                         "twist must map every edge"))
                return std::nullopt;
            doc.twist = std::move(twist);
        }
        return doc;
    }
};

}  // namespace

ParseResult parse_document(const std::string& text) {
    ParseResult result;
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        result.issues.push_back({"$", "not valid JSON"});
        return result;
    }
    DocumentReader reader{result.issues};
    result.document = reader.read(j);
    if (!result.document) return result;
    const GraphDocument& doc = *result.document;

    Skeleton sk(doc.rank);
    for (const std::string& v : doc.vertices) sk.add_vertex(v);
    for (const auto& e : doc.edges) sk.add_edge(e.id, e.color, e.range, e.source);
    std::vector<SquareRule> rules;
    for (const auto& s : doc.squares) {
        SquareRule r;
        r.lo = *sk.find_edge(s.lo);
        r.hi = *sk.find_edge(s.hi);
        r.hi2 = *sk.find_edge(s.hi2);
        r.lo2 = *sk.find_edge(s.lo2);
        rules.push_back(r);
    }
    ValidationOutcome outcome = validate(std::move(sk), std::move(rules));
    result.validation = std::move(outcome.report);
    if (!outcome.graph) return result;
    result.graph = std::move(outcome.graph);

    if (doc.twist) {
        TwistSpec spec;
        spec.fiber = doc.twist->fiber;
        spec.maps.resize(result.graph->skeleton().edge_count());
        for (const auto& [id, map] : doc.twist->maps)
            spec.maps[*result.graph->skeleton().find_edge(id)] = map;
        result.twist = std::move(spec);
    }
    return result;
}

GraphDocument document_from(const KGraph& g, const TwistSpec* twist) {
    GraphDocument doc;
    const Skeleton& sk = g.skeleton();
    doc.rank = g.rank();
    doc.vertices = sk.vertices();
    std::sort(doc.vertices.begin(), doc.vertices.end());
    for (const Edge& e : sk.edges())
        doc.edges.push_back({e.id, e.color, sk.vertex_id(e.range), sk.vertex_id(e.source)});
    std::sort(doc.edges.begin(), doc.edges.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const SquareRule& r : g.rules())
        doc.squares.push_back({sk.edge(r.lo).id, sk.edge(r.hi).id, sk.edge(r.hi2).id,
                               sk.edge(r.lo2).id});
    std::sort(doc.squares.begin(), doc.squares.end(), [](const auto& a, const auto& b) {
        return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
    });
    if (twist) {
        GraphDocument::TwistRecord rec;
        rec.fiber = twist->fiber;
        for (std::size_t e = 0; e < twist->maps.size(); ++e)
            rec.maps[sk.edge(static_cast<EdgeId>(e)).id] = twist->maps[e];
        doc.twist = std::move(rec);
    }
    return doc;
}

std::string serialize(const GraphDocument& doc) {
    json j;
    j["rank"] = doc.rank;
    j["vertices"] = doc.vertices;
    j["edges"] = json::array();
    for (const auto& e : doc.edges)
        j["edges"].push_back(
            {{"color", e.color}, {"id", e.id}, {"range", e.range}, {"source", e.source}});
    j["squares"] = json::array();
    for (const auto& s : doc.squares)
        j["squares"].push_back({{"hi_lo", {s.hi2, s.lo2}}, {"lo_hi", {s.lo, s.hi}}});
    if (doc.twist) {
        json maps = json::object();
        for (const auto& [id, map] : doc.twist->maps) maps[id] = map;
        j["twist"] = {{"fiber", doc.twist->fiber}, {"maps", maps}};
    }
    return j.dump(2) + "\n";
}

std::string export_dot(const KGraph& g) {
    static const char* palette[] = {"blue", "red", "green", "orange",
                                    "purple", "brown", "cyan", "magenta"};
    auto color_name = [&](int color) -> std::string {
        if (color <= 8) return palette[color - 1];
        return "gray" + std::to_string(10 + (color * 7) % 80);
    };
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out;
    };
    const Skeleton& sk = g.skeleton();
    std::vector<std::string> vertices = sk.vertices();
    std::sort(vertices.begin(), vertices.end());
    std::string out = "digraph kgraph {\n";
    for (const std::string& v : vertices) out += "  \"" + escape(v) + "\";\n";
    std::vector<const Edge*> edges;
    for (const Edge& e : sk.edges()) edges.push_back(&e);
    std::sort(edges.begin(), edges.end(),
              [](const Edge* a, const Edge* b) { return a->id < b->id; });
    for (const Edge* e : edges) {
        out += "  \"" + escape(sk.vertex_id(e->source)) + "\" -> \"" +
               escape(sk.vertex_id(e->range)) + "\" [label=\"" + escape(e->id) + "\", color=\"" +
               color_name(e->color) + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace kgraph
