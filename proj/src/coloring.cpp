#include "fairedge/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fairedge/error.hpp"
#include "text_lines.hpp"

namespace fairedge {

Color Coloring::color_of(Vertex u, Vertex v) const
{
    auto it = color_.find(edge_key(u, v));
    return it == color_.end() ? kNoColor : it->second;
}

Color Coloring::first_free(Vertex v, Color limit) const noexcept
{
    const auto& row = at_[v];
    for (Color c = 0; c < limit; ++c)
        if (c >= row.size() || row[c] == kNoVertex) return c;
    return kNoColor;
}

void Coloring::set(Vertex u, Vertex v, Color c)
{
    if (u >= at_.size() || v >= at_.size() || u == v)
        throw Error(ErrorCode::VertexOutOfRange, "cannot color (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    if (c == kNoColor) throw Error(ErrorCode::InvariantViolation, "invalid color");
    if (!is_free(u, c) || !is_free(v, c))
        throw Error(ErrorCode::InvariantViolation, "color " + std::to_string(c) + " already used at an endpoint of (" +
                                                       std::to_string(u) + ", " + std::to_string(v) + ")");
    if (!color_.try_emplace(edge_key(u, v), c).second)
        throw Error(ErrorCode::InvariantViolation, "(" + std::to_string(u) + ", " + std::to_string(v) + ") already colored");
    for (Vertex x : {u, v}) {
        auto& row = at_[x];
        if (c >= row.size()) row.resize(c + 1, kNoVertex);
        row[c] = x == u ? v : u;
    }
}

void Coloring::clear(Vertex u, Vertex v)
{
    auto it = color_.find(edge_key(u, v));
    if (it == color_.end()) return;
    const Color c = it->second;
    color_.erase(it);
    at_[u][c] = kNoVertex;
    at_[v][c] = kNoVertex;
}

std::size_t Coloring::palette_size() const noexcept
{
    std::size_t p = 0;
    for (const auto& [key, c] : color_) p = std::max<std::size_t>(p, c + 1);
    return p;
}

std::vector<Coloring::Entry> Coloring::entries() const
{
    std::vector<Entry> out;
    out.reserve(color_.size());
    for (const auto& [key, c] : color_) out.push_back({edge_from_key(key), c});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.e < b.e; });
    return out;
}

VerifyResult verify_entries(const Graph& g, std::size_t n, std::span<const Coloring::Entry> entries)
{
    VerifyResult r;
    auto fail = [&](Edge e, std::string what) {
        if (!r.proper) return;
        r.proper = false;
        r.violation = e;
        r.detail = std::move(what);
    };
    auto name = [](Edge e) { return "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")"; };
    if (n != g.num_vertices())
        fail(Edge{}, "coloring has " + std::to_string(n) + " vertices, graph has " + std::to_string(g.num_vertices()));

    absl::flat_hash_map<std::uint64_t, Color> color;
    color.reserve(entries.size());
    for (const auto& en : entries) {
        if (en.e.v >= g.num_vertices() || !g.has_edge(en.e.u, en.e.v)) {
            fail(en.e, "colored pair " + name(en.e) + " is not an edge");
            break;
        }
        if (!color.try_emplace(edge_key(en.e.u, en.e.v), en.c).second) {
            fail(en.e, "edge " + name(en.e) + " is colored twice");
            break;
        }
    }
    std::vector<std::pair<Color, Vertex>> seen;
    for (Vertex v = 0; v < g.num_vertices() && r.proper; ++v) {
        seen.clear();
        for (Vertex w : g.neighbors(v)) {
            auto it = color.find(edge_key(v, w));
            if (it == color.end()) {
                fail(Edge(v, w), "UncoloredEdge: " + name(Edge(v, w)) + " has no color");
                break;
            }
            r.palette_size = std::max<std::size_t>(r.palette_size, it->second + 1);
            seen.emplace_back(it->second, w);
        }
        std::sort(seen.begin(), seen.end());
        for (std::size_t k = 1; k < seen.size() && r.proper; ++k) {
            if (seen[k].first != seen[k - 1].first) continue;
            fail(Edge(v, seen[k].second), "color " + std::to_string(seen[k].first) + " repeats at vertex " +
                                              std::to_string(v) + " on " + name(Edge(v, seen[k - 1].second)) + " and " +
                                              name(Edge(v, seen[k].second)));
        }
    }
    return r;
}

VerifyResult verify_proper(const Graph& g, const Coloring& c)
{
    const auto entries = c.entries();
    return verify_entries(g, c.num_vertices(), entries);
}

void greedy_residual_coloring(std::span<const Edge> f_edges, std::size_t delta_f, Color base, Rng& rng,
                              Coloring& coloring)
{
    const std::uint64_t range = 3 * static_cast<std::uint64_t>(delta_f);
    for (const Edge& e : f_edges) {
        for (;;) {
            const Color c = base + static_cast<Color>(rng.index(range));
            if (coloring.is_free(e.u, c) && coloring.is_free(e.v, c)) {
                coloring.set(e.u, e.v, c);
                break;
            }
        }
    }
}

namespace {

std::size_t max_degree_of(std::span<const Edge> edges, std::size_t n)
{
    std::vector<std::uint32_t> deg(n, 0);
    std::size_t best = 0;
    for (const Edge& e : edges) best = std::max<std::size_t>({best, ++deg[e.u], ++deg[e.v]});
    return best;
}

// Degree peeling shared by the near-Vizing and (1+eps) pipelines. Colors
// every M_i with color i-1 and returns the leftover edges F.
std::vector<Edge> peel(const Graph& g, const ColoringOptions& opt, const FairMatchConfig& mcfg, std::uint64_t seed,
                       ColoringRun& run)
{
    const std::size_t n = g.num_vertices();
    const std::size_t delta = g.max_degree();
    run.delta = delta;
    run.coloring = Coloring(n);
    if (opt.record_xy) {
        run.x.assign(n, 0);
        run.y.assign(n, 0);
    }
    std::vector<Edge> f;
    if (delta == 0) return f;

    Graph rem = g;
    std::vector<std::vector<Vertex>> bucket(delta + 1);
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) > 0) bucket[g.degree(v)].push_back(v);

    Rng walk_rng(derive_seed(seed, Stream::Walk));
    Rng pick_rng(derive_seed(seed, Stream::Walk, 1));
    LabeledPath path(n, derive_seed(seed, Stream::TreapPriority));

    auto drop = [&](Vertex a, Vertex b) {
        rem.remove_edge(a, b);
        for (Vertex x : {a, b})
            if (rem.degree(x) > 0) bucket[rem.degree(x)].push_back(x);
    };

    std::vector<Vertex> u_i;
    std::vector<Edge> f_i;
    for (std::size_t i = 1; i <= delta; ++i) {
        const std::size_t di = delta - i + 1;
        u_i.clear();
        // Entries whose degree has since dropped are stale copies.
        for (Vertex v : bucket[di])
            if (rem.degree(v) == di) u_i.push_back(v);
        std::vector<Vertex>().swap(bucket[di]);

        if (opt.check_peeling) {
            std::size_t full = 0;
            for (Vertex v = 0; v < n; ++v) {
                if (rem.degree(v) > di)
                    throw Error(ErrorCode::InvariantViolation, "round " + std::to_string(i) + ": vertex " +
                                                                   std::to_string(v) + " exceeds degree " + std::to_string(di));
                full += rem.degree(v) == di ? 1 : 0;
            }
            if (full != u_i.size())
                throw Error(ErrorCode::InvariantViolation, "round " + std::to_string(i) + ": candidate pool misses vertices");
        }
        if (u_i.empty()) continue;

        FairMatchResult fm = fair_matching(rem, di, u_i, mcfg, walk_rng, &path);
        const auto unmatched = unmatched_in(fm.matching, u_i);
        f_i.clear();
        for (Vertex v : unmatched) {
            const Vertex w = rem.random_neighbor(v, pick_rng);
            f_i.emplace_back(v, w);
            if (opt.record_xy) {
                ++run.x[v];
                ++run.y[w];
            }
        }
        std::sort(f_i.begin(), f_i.end());
        f_i.erase(std::unique(f_i.begin(), f_i.end()), f_i.end());

        for (const Edge& e : fm.matching.edges()) {
            run.coloring.set(e.u, e.v, static_cast<Color>(i - 1));
            drop(e.u, e.v);
        }
        for (const Edge& e : f_i) {
            drop(e.u, e.v);
            f.push_back(e);
        }
        run.total_walks += fm.stats.walks;
        run.total_walk_length += fm.stats.total_walk_length;
        if (opt.record_trace) run.trace.push_back({di, u_i.size(), unmatched.size(), f_i.size(), fm.stats});
    }
    if (rem.num_edges() != 0)
        throw Error(ErrorCode::InvariantViolation, std::to_string(rem.num_edges()) + " edges survived peeling");
    std::sort(f.begin(), f.end());
    run.f_edges = f.size();
    run.delta_f = max_degree_of(f, n);
    return f;
}

} // namespace

ColoringRun near_vizing_coloring(const Graph& g, const ColoringOptions& opt, std::uint64_t seed)
{
    ColoringRun run;
    const auto f = peel(g, opt, opt.match, seed, run);
    Rng greedy_rng(derive_seed(seed, Stream::Greedy));
    greedy_residual_coloring(f, run.delta_f, static_cast<Color>(run.delta), greedy_rng, run.coloring);

    const double n = static_cast<double>(std::max<std::size_t>(g.num_vertices(), 1));
    run.palette_bound = run.delta + static_cast<std::size_t>(std::ceil(opt.fallback_constant * std::log(n)));
    run.pre_fallback_palette = run.coloring.palette_size();
    if (run.pre_fallback_palette > run.palette_bound) {
        run.fallback = true;
        run.coloring = classical_fallback(g);
    }
    run.palette = run.coloring.palette_size();
    return run;
}

ColoringRun eps_coloring(const Graph& g, const EpsOptions& eps, const ColoringOptions& opt, std::uint64_t seed)
{
    const std::size_t delta = g.max_degree();
    const double n = static_cast<double>(std::max<std::size_t>(g.num_vertices(), 1));
    if (!(eps.eps > 0.0 && eps.eps < 1.0)) throw Error(ErrorCode::EpsilonOutOfRange, "eps must lie in (0, 1)");
    if (delta == 0 || eps.eps < eps.eta0 * std::log(n) / static_cast<double>(delta))
        throw Error(ErrorCode::EpsilonOutOfRange, "eps=" + std::to_string(eps.eps) + " is below eta0 ln(n)/delta = " +
                                                      std::to_string(delta == 0 ? INFINITY
                                                                                : eps.eta0 * std::log(n) / static_cast<double>(delta)));
    if (!(eps.reparam >= 1.0)) throw Error(ErrorCode::InvalidConfig, "reparametrization factor must be at least 1");

    FairMatchConfig mcfg = opt.match;
    mcfg.budget_override = std::max(std::log(eps.reparam / eps.eps), 1.0);

    ColoringRun run;
    const auto f = peel(g, opt, mcfg, seed, run);
    if (!f.empty()) {
        const Graph fg = Graph::from_edge_list(g.num_vertices(), f);
        const Coloring fc = classical_fallback(fg);
        for (const auto& en : fc.entries()) run.coloring.set(en.e.u, en.e.v, static_cast<Color>(run.delta) + en.c);
    }
    run.palette_bound = static_cast<std::size_t>(std::ceil((1.0 + eps.eps) * static_cast<double>(delta) - 1e-9));
    run.pre_fallback_palette = run.coloring.palette_size();
    if (run.pre_fallback_palette > run.palette_bound) {
        ColoringRun v = vizing_coloring(g, opt, seed);
        run.coloring = std::move(v.coloring);
        run.fallback = true;
    }
    run.palette = run.coloring.palette_size();
    return run;
}

void write_coloring(std::ostream& out, const Coloring& c)
{
    const auto entries = c.entries();
    out << c.num_vertices() << ' ' << entries.size() << ' ' << c.palette_size() << '\n';
    for (const auto& en : entries) out << en.e.u << ' ' << en.e.v << ' ' << en.c << '\n';
}

ColoringFile read_coloring_file(std::istream& in)
{
    using detail::next_data_line;
    using detail::parse_fail;
    std::string line;
    std::size_t lineno = 0;
    if (!next_data_line(in, line, lineno)) parse_fail(lineno, "missing header");
    long long n = -1, m = -1, palette = -1;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m >> palette) || n < 0 || m < 0 || palette < 0 || (hs >> extra))
            parse_fail(lineno, "bad header '" + line + "'");
    }
    ColoringFile file;
    file.n = static_cast<std::size_t>(n);
    file.palette = static_cast<std::size_t>(palette);
    file.entries.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_data_line(in, line, lineno)) parse_fail(lineno, "expected " + std::to_string(m) + " colored edges");
        std::istringstream ls(line);
        long long u = -1, v = -1, col = -1;
        std::string extra;
        if (!(ls >> u >> v >> col) || (ls >> extra) || col < 0 || col >= static_cast<long long>(kNoColor))
            parse_fail(lineno, "bad entry '" + line + "'");
        if (u < 0 || v < 0 || u >= n || v >= n) throw Error(ErrorCode::VertexOutOfRange, "line " + std::to_string(lineno));
        if (u == v) throw Error(ErrorCode::SelfLoop, "line " + std::to_string(lineno));
        file.entries.push_back({Edge(static_cast<Vertex>(u), static_cast<Vertex>(v)), static_cast<Color>(col)});
    }
    if (next_data_line(in, line, lineno)) parse_fail(lineno, "trailing data");
    return file;
}

Coloring read_coloring(std::istream& in)
{
    const ColoringFile file = read_coloring_file(in);
    Coloring c(file.n);
    for (const auto& en : file.entries) {
        if (c.is_colored(en.e.u, en.e.v))
            throw Error(ErrorCode::DuplicateEdge, "(" + std::to_string(en.e.u) + ", " + std::to_string(en.e.v) + ")");
        if (!c.is_free(en.e.u, en.c) || !c.is_free(en.e.v, en.c))
            throw Error(ErrorCode::ParseError, "color " + std::to_string(en.c) + " repeats at an endpoint of (" +
                                                   std::to_string(en.e.u) + ", " + std::to_string(en.e.v) + ")");
        c.set(en.e.u, en.e.v, en.c);
    }
    if (file.palette != c.palette_size())
        throw Error(ErrorCode::ParseError, "header palette " + std::to_string(file.palette) + " but entries use " +
                                               std::to_string(c.palette_size()));
    return c;
}

} // namespace fairedge
