// fairedge: command line front-end for generation, coloring, verification,
// fairness estimation, M-digraph diagnostics and scaling benchmarks.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairedge/coloring.hpp"
#include "fairedge/error.hpp"
#include "fairedge/fairmatch.hpp"
#include "fairedge/graph.hpp"
#include "fairedge/harness.hpp"
#include "fairedge/mdigraph.hpp"
#include "fairedge/walk.hpp"

using namespace fairedge;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Globals {
    std::uint64_t seed = 1;
    double budget_factor = 2.0;
    int trunc_exponent = 2;
    std::string out;
};

Graph load_graph(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return read_edge_list(in);
}

// Writes to --out when given, otherwise to stdout.
template <class F>
void emit(const std::string& out, F&& write)
{
    if (out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(out);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + out);
    write(f);
}

ColoringOptions coloring_options(const Globals& g)
{
    ColoringOptions opt;
    opt.match.budget_factor = g.budget_factor;
    opt.match.trunc_exponent = g.trunc_exponent;
    opt.record_trace = true;
    return opt;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Near-Vizing edge coloring via fair matchings"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals gl;
    app.add_option("--seed", gl.seed, "Master seed");
    app.add_option("--budget-factor", gl.budget_factor, "FairMatching budget threshold factor (>= 1)");
    app.add_option("--trunc-exponent", gl.trunc_exponent, "AltPath truncation exponent c (>= 2)");
    app.add_option("--out", gl.out, "Output file (default: standard output)");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a graph as an edge list");
    std::string family;
    std::size_t gen_n = 0, gen_d = 0, gen_m = 0;
    gen->add_option("family", family, "regular | gnm | star | clique | cycle | petersen")
        ->required()
        ->check(CLI::IsMember({"regular", "gnm", "star", "clique", "cycle", "petersen"}));
    gen->add_option("-n,--n", gen_n, "Vertices (leaves for star)");
    gen->add_option("-d,--degree", gen_d, "Degree for regular");
    gen->add_option("-m,--edges", gen_m, "Edges for gnm");

    // color
    auto* color = app.add_subcommand("color", "Color a graph");
    std::string algo, color_in, json_out;
    double eps = 0.5, eta0 = 2.0, reparam = 8.0;
    color->add_option("algorithm", algo, "near-vizing | vizing | eps | greedy-fallback")
        ->required()
        ->check(CLI::IsMember({"near-vizing", "vizing", "eps", "greedy-fallback"}));
    color->add_option("graph", color_in, "Edge list file")->required();
    color->add_option("--eps", eps, "Epsilon for the eps algorithm");
    color->add_option("--eta0", eta0, "Constant in the eps >= eta0 ln(n)/delta precondition");
    color->add_option("--reparam", reparam, "FairMatching budget becomes ln(reparam/eps)");
    color->add_option("--json", json_out, "Also write the report as JSON");

    // verify
    auto* verify = app.add_subcommand("verify", "Check a coloring file against a graph");
    std::string verify_graph, verify_coloring;
    verify->add_option("graph", verify_graph)->required();
    verify->add_option("coloring", verify_coloring)->required();

    // fairness
    auto* fair = app.add_subcommand("fairness", "Monte-Carlo per-vertex unmatched frequencies");
    std::string fair_in;
    std::size_t trials = 2000;
    bool fair_rows = false;
    fair->add_option("graph", fair_in)->required();
    fair->add_option("--trials", trials)->check(CLI::PositiveNumber);
    fair->add_flag("--rows", fair_rows, "Print one line per vertex");

    // digraph
    auto* dig = app.add_subcommand("digraph", "Build and check the M-digraph of a matching");
    std::string dig_in, dig_matching;
    dig->add_option("graph", dig_in)->required();
    dig->add_option("--matching", dig_matching, "Matching as an edge list (default: empty)");

    // bench
    auto* bench = app.add_subcommand("bench", "Near-Vizing scaling on random regular graphs");
    std::size_t bench_d = 16, repeats = 5;
    std::vector<std::size_t> sizes{1024, 2048, 4096};
    bench->add_option("-d,--degree", bench_d);
    bench->add_option("--sizes", sizes)->delimiter(',');
    bench->add_option("--repeats", repeats)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) {
            Rng rng(derive_seed(gl.seed, Stream::GraphGen));
            Graph g;
            if (family == "regular") g = gen_regular(gen_n, gen_d, rng);
            else if (family == "gnm") g = gen_gnm(gen_n, gen_m, rng);
            else if (family == "star") g = gen_star(gen_n);
            else if (family == "clique") g = gen_clique(gen_n);
            else if (family == "cycle") g = gen_cycle(gen_n);
            else g = gen_petersen();
            emit(gl.out, [&](std::ostream& os) { write_edge_list(os, g); });
            return kOk;
        }

        if (*color) {
            const Graph g = load_graph(color_in);
            const auto opt = coloring_options(gl);
            validate(opt.match);
            const auto t0 = std::chrono::steady_clock::now();
            ColoringRun run;
            if (algo == "near-vizing") {
                run = near_vizing_coloring(g, opt, gl.seed);
            } else if (algo == "vizing") {
                run = vizing_coloring(g, opt, gl.seed);
            } else if (algo == "eps") {
                run = eps_coloring(g, EpsOptions{eps, eta0, reparam}, opt, gl.seed);
            } else {
                run.coloring = classical_fallback(g);
                run.delta = g.max_degree();
                run.palette = run.pre_fallback_palette = run.coloring.palette_size();
                run.palette_bound = run.delta + 1;
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (!gl.out.empty()) emit(gl.out, [&](std::ostream& os) { write_coloring(os, run.coloring); });
            const auto report = RunReport::from_run(g, run, algo, gl.seed, secs);
            report.write_kv(std::cout);
            if (!json_out.empty()) {
                std::ofstream js(json_out);
                js << report.to_json(true) << '\n';
            }
            return report.proper ? kOk : kVerifyFailed;
        }

        if (*verify) {
            const Graph g = load_graph(verify_graph);
            std::ifstream in(verify_coloring);
            if (!in) throw Error(ErrorCode::ParseError, "cannot open " + verify_coloring);
            const auto file = read_coloring_file(in);
            auto r = verify_entries(g, file.n, file.entries);
            if (r.proper && r.palette_size != file.palette) {
                r.proper = false;
                r.detail = "header palette " + std::to_string(file.palette) + " but entries use " +
                           std::to_string(r.palette_size);
            }
            std::cout << "proper=" << (r.proper ? "true" : "false") << '\n' << "palette=" << r.palette_size << '\n';
            if (!r.proper) {
                if (r.violation) std::cout << "violation=" << r.violation->u << ' ' << r.violation->v << '\n';
                std::cout << "detail=" << r.detail << '\n';
                return kVerifyFailed;
            }
            return kOk;
        }

        if (*fair) {
            const Graph g = load_graph(fair_in);
            FairMatchConfig cfg;
            cfg.budget_factor = gl.budget_factor;
            cfg.trunc_exponent = gl.trunc_exponent;
            const auto t = fairness_trials(g, trials, cfg, gl.seed);
            emit(gl.out, [&](std::ostream& os) {
                os << "delta=" << t.delta << '\n'
                   << "trials=" << t.trials << '\n'
                   << "vertices=" << t.rows.size() << '\n'
                   << "bound=" << t.bound << '\n'
                   << "max_frequency=" << t.max_frequency << '\n'
                   << "mean_walks=" << t.mean_walks << '\n'
                   << "mean_walk_length=" << t.mean_walk_length << '\n'
                   << "all_pass=" << (t.all_pass ? "true" : "false") << '\n';
                if (fair_rows)
                    for (const auto& r : t.rows)
                        os << "vertex=" << r.vertex << " unmatched=" << r.unmatched << " frequency=" << r.frequency
                           << " limit=" << r.limit << " pass=" << (r.pass ? "true" : "false") << '\n';
            });
            return t.all_pass ? kOk : kVerifyFailed;
        }

        if (*dig) {
            const Graph g = load_graph(dig_in);
            const auto vd = max_degree_vertices(g);
            Matching m(g.num_vertices(), vd);
            if (!dig_matching.empty()) {
                const Graph mg = load_graph(dig_matching);
                for (const auto& e : mg.edges()) {
                    if (e.v >= g.num_vertices() || !g.has_edge(e.u, e.v))
                        throw Error(ErrorCode::MissingEdge, "matching edge (" + std::to_string(e.u) + ", " +
                                                                std::to_string(e.v) + ") is not in the graph");
                    m.match(e.u, e.v);
                }
            }
            const auto d = build_m_digraph(g, m);
            const auto bal = check_balanced(d);
            const auto con = check_connectivity_and_size(d, vd.size(), g.max_degree());
            double worst = 0.0;
            bool stationary_ok = false;
            if (con.strongly_connected) {
                const auto pi = stationary_distribution(d);
                const double total = static_cast<double>(d.edge_count());
                for (std::uint32_t v = 0; v < d.num_nodes(); ++v)
                    worst = std::max(worst, std::abs(pi[v] - static_cast<double>(d.out_degree(v)) / total));
                stationary_ok = worst <= 1e-9;
            }
            emit(gl.out, [&](std::ostream& os) {
                os << "nodes=" << d.num_nodes() << '\n'
                   << "edges=" << con.edge_count << '\n'
                   << "edge_bound=" << con.edge_bound << '\n'
                   << "balanced=" << (bal.balanced ? "true" : "false") << '\n'
                   << "strongly_connected=" << (con.strongly_connected ? "true" : "false") << '\n'
                   << "edge_bound_ok=" << (con.bound_ok ? "true" : "false") << '\n'
                   << "stationary_max_error=" << worst << '\n'
                   << "stationary_ok=" << (stationary_ok ? "true" : "false") << '\n';
            });
            return bal.balanced && con.strongly_connected && con.bound_ok && stationary_ok ? kOk : kVerifyFailed;
        }

        if (*bench) {
            const auto opt = coloring_options(gl);
            const auto rows = bench_scaling(bench_d, sizes, opt, gl.seed, repeats);
            emit(gl.out, [&](std::ostream& os) {
                for (const auto& r : rows)
                    os << "n=" << r.n << " m=" << r.m << " delta=" << r.delta << " seconds=" << r.seconds
                       << " walk_length=" << r.walk_length << " time_ratio=" << r.time_ratio
                       << " walk_ratio=" << r.walk_ratio << '\n';
            });
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
