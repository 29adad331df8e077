#include "fairedge/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "fairedge/error.hpp"

namespace fairedge {

namespace {

Graph complement(const Graph& g)
{
    const std::size_t n = g.num_vertices();
    Graph c(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) c.add_edge(u, v);
    return c;
}

// One pairing attempt; false when it gets stuck.
bool try_pairing(std::size_t n, std::size_t d, Rng& rng, Graph& out)
{
    out = Graph(n);
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (Vertex v = 0; v < n; ++v) points.insert(points.end(), d, v);
    auto take = [&](std::size_t i) {
        const Vertex x = points[i];
        points[i] = points.back();
        points.pop_back();
        return x;
    };
    std::size_t misses = 0;
    while (!points.empty()) {
        const std::size_t i = rng.index(points.size());
        const std::size_t j = rng.index(points.size());
        const Vertex a = points[i], b = points[j];
        if (i != j && a != b && !out.has_edge(a, b)) {
            // Remove the larger index first so the smaller stays valid.
            take(std::max(i, j));
            take(std::min(i, j));
            out.add_edge(a, b);
            misses = 0;
            continue;
        }
        if (++misses < 64) continue;
        bool any = false;
        for (std::size_t p = 0; p < points.size() && !any; ++p)
            for (std::size_t q = p + 1; q < points.size() && !any; ++q)
                any = points[p] != points[q] && !out.has_edge(points[p], points[q]);
        if (!any) return false;
        misses = 0;
    }
    return true;
}

} // namespace

Graph gen_regular(std::size_t n, std::size_t d, Rng& rng)
{
    if (d >= n || (n * d) % 2 != 0)
        throw Error(ErrorCode::InfeasibleParameters,
                    "no simple " + std::to_string(d) + "-regular graph on " + std::to_string(n) + " vertices");
    if (2 * d > n - 1) return complement(gen_regular(n, n - 1 - d, rng));
    Graph g;
    while (!try_pairing(n, d, rng, g)) {
    }
    return g;
}

Graph gen_gnm(std::size_t n, std::size_t m, Rng& rng)
{
    const std::size_t cap = n < 2 ? 0 : n * (n - 1) / 2;
    if (m > cap) throw Error(ErrorCode::TooManyEdges, std::to_string(m) + " edges on " + std::to_string(n) + " vertices");
    if (2 * m > cap) return complement(gen_gnm(n, cap - m, rng));
    Graph g(n);
    while (g.num_edges() < m) {
        const auto u = static_cast<Vertex>(rng.index(n));
        const auto v = static_cast<Vertex>(rng.index(n));
        if (u != v && !g.has_edge(u, v)) g.add_edge(u, v);
    }
    return g;
}

Graph gen_star(std::size_t leaves)
{
    Graph g(leaves + 1);
    for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

Graph gen_clique(std::size_t n)
{
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph gen_cycle(std::size_t n)
{
    Graph g(n);
    if (n < 3) {
        if (n == 2) g.add_edge(0, 1);
        return g;
    }
    for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n));
    return g;
}

Graph gen_petersen()
{
    Graph g(10);
    for (Vertex i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer cycle
        g.add_edge(i, i + 5);                // spokes
        g.add_edge(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    return g;
}

std::vector<Vertex> max_degree_vertices(const Graph& g)
{
    const std::size_t delta = g.max_degree();
    std::vector<Vertex> out;
    if (delta == 0) return out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == delta) out.push_back(v);
    return out;
}

FairnessTable fairness_trials(const Graph& g, std::size_t trials, const FairMatchConfig& cfg, std::uint64_t seed)
{
    FairnessTable t;
    t.delta = g.max_degree();
    t.trials = trials;
    const auto vd = max_degree_vertices(g);
    if (t.delta == 0 || trials == 0) return t;
    const double D = static_cast<double>(t.delta);
    t.bound = 1.0 / D + 2.0 / (D * D);

    std::vector<std::size_t> misses(g.num_vertices(), 0);
    LabeledPath path(g.num_vertices(), derive_seed(seed, Stream::TreapPriority));
    double walks = 0, length = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        Rng rng(derive_seed(seed, Stream::Trial, k));
        const auto res = fair_matching(g, t.delta, vd, cfg, rng, &path);
        for (Vertex v : res.matching.unmatched_delta()) ++misses[v];
        walks += static_cast<double>(res.stats.walks);
        length += static_cast<double>(res.stats.total_walk_length);
    }
    t.mean_walks = walks / static_cast<double>(trials);
    t.mean_walk_length = length / static_cast<double>(trials);

    // The bound exceeds 1 for tiny delta; the error is taken at a valid probability.
    const double p0 = std::min(t.bound, 1.0);
    const double se = std::sqrt(p0 * (1.0 - p0) / static_cast<double>(trials));
    for (Vertex v : vd) {
        FairnessRow r;
        r.vertex = v;
        r.unmatched = misses[v];
        r.frequency = static_cast<double>(misses[v]) / static_cast<double>(trials);
        r.std_error = se;
        r.limit = t.bound + 3.0 * se;
        r.pass = r.frequency <= r.limit;
        t.all_pass = t.all_pass && r.pass;
        t.max_frequency = std::max(t.max_frequency, r.frequency);
        t.rows.push_back(r);
    }
    return t;
}

std::vector<BenchRow> bench_scaling(std::size_t degree, std::span<const std::size_t> sizes, const ColoringOptions& opt,
                                    std::uint64_t seed, std::size_t repeats)
{
    std::vector<BenchRow> rows;
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t h = v.size() / 2;
        return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    };
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const std::size_t n = sizes[si];
        std::vector<double> secs, walk;
        BenchRow row;
        for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
            Rng grng(derive_seed(seed, Stream::GraphGen, si * 1000 + r));
            const Graph g = gen_regular(n, degree, grng);
            const auto t0 = std::chrono::steady_clock::now();
            const auto run = near_vizing_coloring(g, opt, derive_seed(seed, Stream::Trial, si * 1000 + r));
            const auto t1 = std::chrono::steady_clock::now();
            secs.push_back(std::chrono::duration<double>(t1 - t0).count());
            walk.push_back(static_cast<double>(run.total_walk_length));
            row.n = n;
            row.m = g.num_edges();
            row.delta = g.max_degree();
        }
        row.seconds = median(secs);
        row.walk_length = median(walk);
        const double lnd = std::log(std::max<double>(static_cast<double>(row.delta), 2.0));
        row.time_ratio = row.seconds / (static_cast<double>(row.m) * lnd);
        row.walk_ratio = row.walk_length / (static_cast<double>(row.n) * lnd);
        rows.push_back(row);
    }
    return rows;
}

RunReport RunReport::from_run(const Graph& g, const ColoringRun& run, std::string algorithm, std::uint64_t seed,
                              double seconds)
{
    RunReport r;
    r.n = g.num_vertices();
    r.m = g.num_edges();
    r.delta = g.max_degree();
    r.algorithm = std::move(algorithm);
    r.seed = seed;
    r.palette = run.coloring.palette_size();
    r.pre_fallback_palette = run.pre_fallback_palette;
    r.palette_bound = run.palette_bound;
    r.fallback = run.fallback;
    r.proper = verify_proper(g, run.coloring).proper;
    r.seconds = seconds;
    r.delta_f = run.delta_f;
    for (const auto& step : run.trace) r.walk_length_per_round.push_back(step.match.total_walk_length);
    return r;
}

void RunReport::write_kv(std::ostream& out, bool with_time) const
{
    out << "n=" << n << '\n'
        << "m=" << m << '\n'
        << "delta=" << delta << '\n'
        << "algorithm=" << algorithm << '\n'
        << "seed=" << seed << '\n'
        << "palette=" << palette << '\n'
        << "pre_fallback_palette=" << pre_fallback_palette << '\n'
        << "palette_bound=" << palette_bound << '\n'
        << "fallback=" << (fallback ? "true" : "false") << '\n'
        << "proper=" << (proper ? "true" : "false") << '\n'
        << "delta_f=" << delta_f << '\n';
    std::size_t total = 0;
    for (auto w : walk_length_per_round) total += w;
    out << "walk_length_total=" << total << '\n';
    if (with_time) out << "seconds=" << seconds << '\n';
}

std::string RunReport::to_json(bool with_time) const
{
    nlohmann::ordered_json j;
    j["n"] = n;
    j["m"] = m;
    j["delta"] = delta;
    j["algorithm"] = algorithm;
    j["seed"] = seed;
    j["palette"] = palette;
    j["pre_fallback_palette"] = pre_fallback_palette;
    j["palette_bound"] = palette_bound;
    j["fallback"] = fallback;
    j["proper"] = proper;
    j["delta_f"] = delta_f;
    j["walk_length_per_round"] = walk_length_per_round;
    if (with_time) j["seconds"] = seconds;
    return j.dump(2);
}

} // namespace fairedge
