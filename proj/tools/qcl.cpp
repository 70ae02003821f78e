// Command-line front end: expansions, matchings, DOT export, verification,
// and scenario generation.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcl/dot.hpp"
#include "qcl/scenario.hpp"
#include "qcl/verify.hpp"

namespace {

bool strict_seed_checks() {
    const char* v = std::getenv("QCL_SEED_CHECKS");
    if (!v) return true;
    std::string s = v;
    if (s == "strict") return true;
    if (s == "warn") return false;
    throw qcl::error("QCL_SEED_CHECKS must be 'strict' or 'warn'");
}

qcl::CrossingSequence resolve_arc(const qcl::Scenario& s, const std::string& name) {
    for (const auto& a : s.named_arcs)
        if (a.name == name) return a.seq;
    // fall back to an arc of the base triangulation (d = 0)
    qcl::CrossingSequence c;
    c.arc = s.tri.find_arc(name);
    return c;
}

std::string terms_json(const qcl::TorusElement& x) {
    std::string out = "[";
    bool first_term = true;
    for (const auto& [a, qh] : x.terms) {
        out += first_term ? "\n" : ",\n";
        first_term = false;
        out += "  {\"a\": [";
        for (size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
        out += "], \"q\": [";
        bool first_q = true;
        for (const auto& [e, c] : qh) {
            if (!first_q) out += ",";
            first_q = false;
            out += "[" + std::to_string(e) + "," + std::to_string(c) + "]";
        }
        out += "]}";
    }
    return out + "\n]\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum cluster-variable expansions from snake graphs"};
    app.require_subcommand(1);

    std::string path, arc_name = "gamma", format = "text", matching_name;
    bool commutative = false, count_only = false, dot = false;

    auto* expand = app.add_subcommand("expand", "Laurent expansion of an arc");
    expand->add_option("scenario", path, "scenario file")->required();
    expand->add_option("--arc", arc_name, "named arc or base arc label");
    expand->add_flag("--commutative", commutative, "q=1 expansion");
    expand->add_option("--format", format, "text|terms")->check(CLI::IsMember({"text", "terms"}));

    auto* matchings = app.add_subcommand("matchings", "perfect matchings of the snake graph");
    matchings->add_option("scenario", path, "scenario file")->required();
    matchings->add_option("--arc", arc_name, "named arc or base arc label");
    matchings->add_flag("--count", count_only, "print only the count");

    auto* snake = app.add_subcommand("snake", "snake graph structure");
    snake->add_option("scenario", path, "scenario file")->required();
    snake->add_option("--arc", arc_name, "named arc or base arc label");
    snake->add_flag("--dot", dot, "Graphviz output");
    snake->add_option("--matching", matching_name, "highlight a matching: minimal|maximal")
        ->check(CLI::IsMember({"minimal", "maximal"}));

    std::string check_filter;
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("scenario", path, "scenario file")->required();
    verify->add_option("--check", check_filter, "only checks whose name contains this substring");

    auto* scenario = app.add_subcommand("scenario", "scenario generators");
    auto* gen = scenario->add_subcommand("gen", "generate a scenario")->require_subcommand(1);
    int polygon_n = 0;
    auto* polygon = gen->add_subcommand("polygon", "fan-triangulated polygon, principal quantization");
    polygon->add_option("n", polygon_n, "vertex count (>= 4)")->required();
    auto* disk = gen->add_subcommand("disk-o2", "disk with two weight-2 orbifold points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (polygon->parsed()) {
            std::fputs(qcl::serialize_scenario(qcl::generate_polygon(polygon_n)).c_str(), stdout);
            return 0;
        }
        if (disk->parsed()) {
            std::fputs(qcl::serialize_scenario(qcl::disk_with_two_orbifold_points()).c_str(), stdout);
            return 0;
        }
        qcl::Scenario s = qcl::parse_scenario(path, strict_seed_checks());
        if (expand->parsed()) {
            qcl::CrossingSequence c = resolve_arc(s, arc_name);
            if (commutative) {
                std::printf("%s\n", qcl::render_comm(qcl::commutative_expansion(s.tri, c, s.seed)).c_str());
            } else {
                qcl::TorusElement x = qcl::quantum_expansion(s.tri, c, s.seed);
                if (format == "terms")
                    std::fputs(terms_json(x).c_str(), stdout);
                else
                    std::printf("%s\n", qcl::render(x).c_str());
            }
        } else if (matchings->parsed()) {
            qcl::SnakeGraph g = qcl::build_snake_graph(s.tri, resolve_arc(s, arc_name));
            auto ms = qcl::enumerate_matchings(g);
            if (count_only) {
                std::printf("%zu\n", ms.size());
            } else {
                for (const auto& p : ms) {
                    std::string line;
                    for (int e : p) line += (line.empty() ? "e" : " e") + std::to_string(e);
                    std::printf("%s\n", line.c_str());
                }
            }
        } else if (snake->parsed()) {
            qcl::SnakeGraph g = qcl::build_snake_graph(s.tri, resolve_arc(s, arc_name));
            if (dot) {
                qcl::PerfectMatching m;
                const qcl::PerfectMatching* mp = nullptr;
                if (matching_name == "minimal") m = qcl::minimal_matching(g), mp = &m;
                if (matching_name == "maximal") m = qcl::maximal_matching(g), mp = &m;
                std::fputs(qcl::to_dot(g, s.tri, mp).c_str(), stdout);
            } else {
                for (int t = 0; t < g.tile_count(); ++t)
                    std::printf("tile %d: diagonal %s\n", t + 1, s.tri.arcs[g.tiles[t].diagonal].label.c_str());
                std::printf("%d tiles, %zu edges, %d vertices\n", g.tile_count(), g.edges.size(), g.num_vertices);
            }
        } else if (verify->parsed()) {
            bool any_fail = false;
            for (const auto& r : qcl::run_verification(s)) {
                if (!check_filter.empty() && r.name.find(check_filter) == std::string::npos) continue;
                std::printf("%s\n", qcl::format_check(r).c_str());
                any_fail |= !r.pass;
            }
            return any_fail ? 1 : 0;
        }
        return 0;
    } catch (const qcl::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
