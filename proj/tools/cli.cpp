#include "cli.hpp"

#include <csignal>

#include <CLI11.hpp>

#include "bloxorz/formats.hpp"
#include "bloxorz/reduction.hpp"
#include "bloxorz/service.hpp"
#include "bloxorz/solver.hpp"

namespace blox::cli {

namespace {

std::string upper_moves(const std::vector<Direction>& m) {
    std::string r;
    for (auto d : m) {
        std::string n = direction_name(d);
        for (auto& c : n) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        r += (r.empty() ? "" : " ") + n;
    }
    return r;
}

// Loads and validates a level; semantic violations are input errors too.
Level load_level(const std::string& path) {
    Level lv = parse_level(read_file(path));
    auto v = validate_level(lv);
    if (!v.empty()) throw ParseError("invalid level: " + v.front().message);
    return lv;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") out << text;
    else write_file(path, text);
}

service::HttpServer* g_server = nullptr;
void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bloxorz reduction compiler and verification toolkit", "bloxorz"};
    app.require_subcommand(1);

    std::string level_path, graph_path, cnf_path, out_path, mode_text = "free", levels_dir = ".";
    uint64_t budget = kDefaultStateBudget;
    int r = 0, port = 8080;

    auto* solve = app.add_subcommand("solve", "shortest solution by breadth-first search");
    solve->add_option("level", level_path)->required();
    solve->add_option("--budget", budget, "state budget");

    auto* cube = app.add_subcommand("cube-solve", "polynomial closure solver (cube variant)");
    cube->add_option("level", level_path)->required();

    auto* rncl = app.add_subcommand("reduce-ncl", "compile a constraint graph into a level");
    rncl->add_option("graph", graph_path)->required();
    rncl->add_option("--mode", mode_text)->check(CLI::IsMember({"free", "all-open", "all-closed"}));
    rncl->add_option("-o", out_path)->required();

    auto* rsat = app.add_subcommand("reduce-sat", "compile a DIMACS formula into a level");
    rsat->add_option("cnf", cnf_path)->required();
    rsat->add_option("-o", out_path)->required();

    auto* quad = app.add_subcommand("gen-quadratic", "quadratic-length cube level");
    quad->add_option("-r", r)->required()->check(CLI::Range(1, 100000));
    quad->add_option("-o", out_path)->required();

    auto* nsolve = app.add_subcommand("ncl-solve", "decide target-edge reversal");
    nsolve->add_option("graph", graph_path)->required();

    auto* verify = app.add_subcommand("verify", "model checks");
    verify->require_subcommand(1);
    auto* vg = verify->add_subcommand("gadgets", "check every gadget contract");
    auto* vr = verify->add_subcommand("reduction", "compare compiled level against the graph");
    vr->add_option("graph", graph_path)->required();
    vr->add_option("--mode", mode_text)->check(CLI::IsMember({"free", "all-open", "all-closed"}));
    vr->add_option("--budget", budget, "state budget");

    auto* render = app.add_subcommand("render", "ASCII view of a level");
    render->add_option("level", level_path)->required();

    auto* serve = app.add_subcommand("serve", "HTTP session service");
    serve->add_option("--port", port);
    serve->add_option("--levels", levels_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*solve) {
            Level lv = load_level(level_path);
            BfsOptions opt;
            opt.budget = budget;
            BfsResult res = bfs_solve(lv, opt);
            if (res.status == SolveStatus::BudgetExceeded) {
                err << "budget exceeded after " << res.explored << " states\n";
                return 3;
            }
            if (res.status == SolveStatus::Unsolvable) {
                out << "unsolvable (" << res.explored << " states)\n";
                return 1;
            }
            out << upper_moves(res.solution->moves) << "\n";
            out << "length " << res.solution->length() << "\n";
            out << "explored " << res.explored << " states\n";
            return 0;
        }
        if (*cube) {
            Level lv = load_level(level_path);
            ClosureResult res = cube_closure_solve(lv);
            if (res.error) {
                err << (*res.error == ClosureError::VariantMismatch ? "level is not a cube level"
                                                                    : "fragile tiles present; use solve")
                    << "\n";
                return 2;
            }
            if (!res.solution) {
                out << "unsolvable\n";
                return 1;
            }
            out << upper_moves(res.solution->moves) << "\n";
            out << "length " << res.solution->length() << "\n";
            return 0;
        }
        if (*rncl) {
            GraphDocument doc = parse_graph(read_file(graph_path));
            ReductionArtifact a = compile_ncl(doc.graph, doc.initial, *parse_mode(mode_text));
            write_or_print(out_path, serialize_level(a.level), out);
            err << a.level.tiles.size() << " tiles, " << a.level.trapdoor_open.size() << " trapdoors\n";
            return 0;
        }
        if (*rsat) {
            ReductionArtifact a = compile_sat(parse_dimacs(read_file(cnf_path)));
            write_or_print(out_path, serialize_level(a.level), out);
            err << a.level.tiles.size() << " tiles\n";
            return 0;
        }
        if (*quad) {
            write_or_print(out_path, serialize_level(gen_quadratic(r)), out);
            return 0;
        }
        if (*nsolve) {
            GraphDocument doc = parse_graph(read_file(graph_path));
            auto probs = ncl::validate_graph(doc.graph);
            if (!probs.empty()) throw ParseError("invalid graph: " + probs.front());
            auto res = ncl::reachable_reversal(doc.graph, doc.initial);
            if (std::holds_alternative<ncl::InitialConfigIllegal>(res)) {
                err << "initial configuration is illegal\n";
                return 2;
            }
            if (std::holds_alternative<ncl::Unreachable>(res)) {
                out << "unreachable\n";
                return 1;
            }
            std::string w;
            for (int e : std::get<std::vector<int>>(res)) w += (w.empty() ? "" : " ") + doc.graph.edges[e].name;
            out << "reachable: " << w << "\n";
            return 0;
        }
        if (*vg) {
            bool ok = true;
            auto check = [&](const GadgetTemplate& t, const GadgetContract& c) {
                GadgetReport rep = verify_gadget(t, c);
                out << rep.text();
                ok = ok && rep.pass;
            };
            check(edge_gadget(Orientation::TowardRight), claim1_contract());
            check(edge_gadget(Orientation::TowardLeft), claim1_contract());
            check(or_vertex_gadget(), or_contract());
            check(and_vertex_gadget(), and_contract());
            check(force_close_gadget(), force_close_contract());
            check(force_open_gadget(), force_open_contract());
            out << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? 0 : 1;
        }
        if (*vr) {
            GraphDocument doc = parse_graph(read_file(graph_path));
            ReductionReport rep = verify_reduction(doc.graph, doc.initial, *parse_mode(mode_text), budget);
            out << rep.text();
            if (rep.level_verdict == "budget") return 3;
            return rep.pass ? 0 : 1;
        }
        if (*render) {
            out << render_ascii(load_level(level_path));
            return 0;
        }
        if (*serve) {
            service::SessionStore store(service::load_levels(levels_dir));
            service::HttpServer srv(store);
            int bound = srv.bind("0.0.0.0", port);
            if (bound < 0) {
                err << "cannot bind port " << port << "\n";
                return 2;
            }
            out << "serving " << levels_dir << " on port " << bound << std::endl;
            g_server = &srv;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            srv.listen();
            g_server = nullptr;
            return 0;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const GraphInvalid& e) {
        err << "invalid graph: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace blox::cli
