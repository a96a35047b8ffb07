// kg: command line front end for finite higher-rank graph files (.kg).
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "kgraph/align.hpp"
#include "kgraph/aperiodicity.hpp"
#include "kgraph/constructions.hpp"
#include "kgraph/io.hpp"
#include "kgraph/path.hpp"

using nlohmann::json;
using namespace kgraph;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write file: " + path);
    out << content;
}

ParseResult load(const std::string& path) {
    ParseResult result = parse_document(read_file(path));
    if (result.ok()) return result;
    for (const ParseIssue& issue : result.issues)
        std::cout << json{{"kind", "error"}, {"where", issue.where}, {"message", issue.message}}
                  << "\n";
    for (const Violation& v : result.validation.violations)
        std::cout << json{{"kind", "violation"}, {"axiom", v.kind}, {"items", v.items},
                          {"message", v.message}}
                  << "\n";
    throw DocumentError("document rejected: " + path);
}

json path_record(const Path& p) {
    return json{{"kind", "path"},
                {"path", p.str()},
                {"degree", p.degree().str()},
                {"range", p.graph().vertex_id(p.range())},
                {"source", p.graph().vertex_id(p.source())}};
}

void verdict_fields(const Verdict& v, const KGraph& g, json& rec) {
    switch (v.kind()) {
        case Verdict::Kind::Witnessed: {
            rec["verdict"] = "witnessed";
            if (const auto* star = std::get_if<StarWitness>(&v.certificate())) {
                rec["witness"] = star->lambda.str();
            } else if (const auto* tau = std::get_if<TauWitness>(&v.certificate())) {
                rec["tau"] = tau->tau.str();
            } else if (const auto* entry = std::get_if<EntryWitness>(&v.certificate())) {
                json entries = json::array();
                for (const CycleEntry& ce : entry->entries) {
                    std::string cycle;
                    for (EdgeId e : ce.cycle) {
                        if (!cycle.empty()) cycle += ',';
                        cycle += g.edge(e).id;
                    }
                    entries.push_back({{"cycle", cycle}, {"entry", g.edge(ce.entry).id}});
                }
                rec["entries"] = entries;
            }
            break;
        }
        case Verdict::Kind::RefutedUpToBound:
            rec["verdict"] = "refuted";
            rec["bound"] = v.bound().str();
            rec["exhaustive"] = v.exhaustive();
            break;
        case Verdict::Kind::ExhaustedUnknown:
            rec["verdict"] = "unknown";
            rec["bound"] = v.bound().str();
            break;
    }
}

int cmd_validate(const std::string& file) {
    ParseResult result = load(file);
    const KGraph& g = *result.graph;
    json sources = json::array();
    for (const auto& [v, c] : find_sources(g)) sources.push_back({g.vertex_id(v), c});
    std::cout << json{{"kind", "summary"},
                      {"valid", true},
                      {"rank", g.rank()},
                      {"vertices", g.vertex_count()},
                      {"edges", g.skeleton().edge_count()},
                      {"squares", g.rules().size()},
                      {"sources", sources}}
              << "\n";
    return 0;
}

int cmd_normalize(const std::string& file, const std::string& edges) {
    ParseResult result = load(file);
    Path p = parse_path(*result.graph, edges);
    std::cout << path_record(p) << "\n";
    return 0;
}

int cmd_segment(const std::string& file, const std::string& path_text, const std::string& from,
                const std::string& to) {
    ParseResult result = load(file);
    Path p = parse_path(*result.graph, path_text);
    std::cout << path_record(segment(p, parse_degree(from), parse_degree(to))) << "\n";
    return 0;
}

int cmd_mce(const std::string& file, const std::string& mu_text, const std::string& nu_text) {
    ParseResult result = load(file);
    Path mu = parse_path(*result.graph, mu_text);
    Path nu = parse_path(*result.graph, nu_text);
    MceSet set = mce(mu, nu);
    json paths = json::array();
    for (const Path& p : set.extensions) paths.push_back(p.str());
    std::cout << json{{"kind", "mce"},
                      {"mu", mu.str()},
                      {"nu", nu.str()},
                      {"count", set.extensions.size()},
                      {"paths", paths}}
              << "\n";
    return 0;
}

int cmd_check(const std::string& file, const std::string& pair_bound,
              const std::string& path_bound, const std::string& tau_bound,
              const std::string& condition) {
    ParseResult result = load(file);
    const KGraph& g = *result.graph;
    CheckOptions opt;
    opt.pair_bound = parse_degree(pair_bound);
    opt.path_bound = parse_degree(path_bound);
    opt.tau_bound = parse_degree(tau_bound);
    if (condition == "star")
        opt.condition = Condition::Star;
    else if (condition == "tau")
        opt.condition = Condition::Tau;
    else if (condition == "both")
        opt.condition = Condition::Both;
    else
        throw UsageError("unknown condition: " + condition);
    AperiodicityReport rep = check_aperiodicity(g, opt);
    for (const StarRecord& r : rep.star) {
        json rec{{"kind", "star"},
                 {"vertex", g.vertex_id(r.v)},
                 {"m", r.m.str()},
                 {"n", r.n.str()}};
        verdict_fields(r.verdict, g, rec);
        std::cout << rec << "\n";
    }
    for (const TauRecord& r : rep.tau) {
        json rec{{"kind", "tau"},
                 {"anchor", g.vertex_id(r.anchor)},
                 {"alpha", r.alpha.str()},
                 {"beta", r.beta.str()}};
        verdict_fields(r.verdict, g, rec);
        std::cout << rec << "\n";
    }
    for (const VertexSummary& s : rep.vertices) {
        std::cout << json{{"kind", "vertex"},
                          {"vertex", g.vertex_id(s.v)},
                          {"star_total", s.star_total},
                          {"star_witnessed", s.star_witnessed},
                          {"star_refuted", s.star_refuted},
                          {"star_definite", s.star_definite},
                          {"tau_total", s.tau_total},
                          {"tau_witnessed", s.tau_witnessed},
                          {"tau_refuted", s.tau_refuted},
                          {"tau_definite", s.tau_definite},
                          {"periodic_suspect", s.periodic_suspect()}}
                  << "\n";
    }
    for (const ConflictRecord& c : rep.conflicts)
        std::cout << json{{"kind", "conflict"}, {"detail", c.detail}} << "\n";
    return 0;
}

int cmd_export_dot(const std::string& file, const std::string& out) {
    ParseResult result = load(file);
    write_output(out, export_dot(*result.graph));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite higher-rank graph toolkit"};
    app.require_subcommand(1);

    std::string file, edges, path_text, from, to, mu_text, nu_text, out;
    std::string pair_bound, path_bound, tau_bound, condition = "both";

    CLI::App* validate_cmd = app.add_subcommand("validate", "validate a .kg document");
    validate_cmd->add_option("file", file)->required();

    CLI::App* normalize_cmd = app.add_subcommand("normalize", "normalize an edge sequence");
    normalize_cmd->add_option("file", file)->required();
    normalize_cmd->add_option("--edges", edges, "comma-separated edge ids")->required();

    CLI::App* segment_cmd = app.add_subcommand("segment", "extract a path segment");
    segment_cmd->add_option("file", file)->required();
    segment_cmd->add_option("--path", path_text)->required();
    segment_cmd->add_option("--from", from)->required();
    segment_cmd->add_option("--to", to)->required();

    CLI::App* mce_cmd = app.add_subcommand("mce", "minimal common extensions of two paths");
    mce_cmd->add_option("file", file)->required();
    mce_cmd->add_option("--mu", mu_text)->required();
    mce_cmd->add_option("--nu", nu_text)->required();

    CLI::App* check_cmd = app.add_subcommand("check", "bounded aperiodicity checks");
    check_cmd->add_option("file", file)->required();
    check_cmd->add_option("--pair-bound", pair_bound)->required();
    check_cmd->add_option("--path-bound", path_bound)->required();
    check_cmd->add_option("--tau-bound", tau_bound)->required();
    check_cmd->add_option("--condition", condition, "star|tau|both");

    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a built-in graph");
    gen_cmd->require_subcommand(1);
    int gen_k = 2, gen_levels = 2, gen_fiber = 1, gen_mul = 1;
    std::string gen_m, gen_base;
    bool mul_by_level = false, from_doc = false;
    CLI::App* gen_grid = gen_cmd->add_subcommand("grid", "grid graph");
    gen_grid->add_option("--k", gen_k)->required();
    gen_grid->add_option("--m", gen_m, "extent, e.g. 1,1")->required();
    gen_grid->add_option("-o,--out", out);
    CLI::App* gen_three = gen_cmd->add_subcommand("three-graph", "the two-vertex 3-graph");
    gen_three->add_option("-o,--out", out);
    CLI::App* gen_es = gen_cmd->add_subcommand("evans-sims", "truncated ladder");
    gen_es->add_option("--levels", gen_levels)->required();
    gen_es->add_option("-o,--out", out);
    CLI::App* gen_two = gen_cmd->add_subcommand("two-loop", "one vertex, two loops");
    gen_two->add_option("-o,--out", out);
    CLI::App* gen_flip = gen_cmd->add_subcommand("flip", "one vertex, one loop per color");
    gen_flip->add_option("-o,--out", out);
    CLI::App* gen_twist = gen_cmd->add_subcommand("twist", "twisted product over Z/N");
    gen_twist->add_option("--base", gen_base)->required();
    gen_twist->add_option("--fiber", gen_fiber)->required();
    gen_twist->add_flag("--mul-by-level", mul_by_level, "multiply by the source level");
    gen_twist->add_option("--mul", gen_mul, "multiply every edge by a constant");
    gen_twist->add_flag("--from-doc", from_doc, "use the twist block of the base file");
    gen_twist->add_option("-o,--out", out);

    CLI::App* dot_cmd = app.add_subcommand("export-dot", "Graphviz export");
    dot_cmd->add_option("file", file)->required();
    dot_cmd->add_option("-o,--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate_cmd) return cmd_validate(file);
        if (*normalize_cmd) return cmd_normalize(file, edges);
        if (*segment_cmd) return cmd_segment(file, path_text, from, to);
        if (*mce_cmd) return cmd_mce(file, mu_text, nu_text);
        if (*check_cmd) return cmd_check(file, pair_bound, path_bound, tau_bound, condition);
        if (*dot_cmd) return cmd_export_dot(file, out);
        if (*gen_cmd) {
            KGraph g = [&]() -> KGraph {
                if (*gen_grid) return grid(gen_k, parse_degree(gen_m));
                if (*gen_three) return three_graph_example();
                if (*gen_es) return evans_sims(gen_levels);
                if (*gen_two) return two_loop();
                if (*gen_flip) return flip();
                // twisted product
                ParseResult base = load(gen_base);
                TwistSpec twist;
                if (from_doc) {
                    if (!base.twist) throw UsageError("base file carries no twist block");
                    twist = *base.twist;
                    twist.fiber = base.twist->fiber;
                } else if (mul_by_level) {
                    twist = mul_by_level_twist(*base.graph, gen_fiber);
                } else {
                    twist = constant_mul_twist(*base.graph, gen_fiber, gen_mul);
                }
                std::vector<std::string> warnings;
                KGraph product = twisted_product(*base.graph, twist, &warnings);
                for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
                return product;
            }();
            write_output(out, serialize(document_from(g)));
            return 0;
        }
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DocumentError&) {
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
