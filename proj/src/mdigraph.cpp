#include "fairedge/mdigraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairedge/error.hpp"

namespace fairedge {

std::uint64_t MDigraph::edge_count() const noexcept
{
    std::uint64_t total = 0;
    for (const auto& arcs : out)
        for (const auto& a : arcs) total += a.multiplicity;
    return total;
}

std::uint64_t MDigraph::out_degree(std::uint32_t v) const noexcept
{
    std::uint64_t total = 0;
    for (const auto& a : out[v]) total += a.multiplicity;
    return total;
}

std::vector<std::uint64_t> MDigraph::in_degrees() const
{
    std::vector<std::uint64_t> in(nodes.size(), 0);
    for (const auto& arcs : out)
        for (const auto& a : arcs) in[a.target] += a.multiplicity;
    return in;
}

void MDigraph::drop_arc(std::uint32_t from, std::uint32_t to, std::uint64_t k)
{
    auto& arcs = out[from];
    for (auto it = arcs.begin(); it != arcs.end(); ++it) {
        if (it->target != to) continue;
        if (it->multiplicity <= k)
            arcs.erase(it);
        else
            it->multiplicity -= k;
        return;
    }
}

std::uint32_t MDigraph::find(NodeKind kind, Vertex a, Vertex b) const
{
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        const auto& nd = nodes[i];
        if (nd.kind != kind) continue;
        if (kind == NodeKind::Source || kind == NodeKind::Sink) return i;
        if (nd.a == a && (kind != NodeKind::Beta || nd.b == b)) return i;
    }
    return npos;
}

std::string MDigraph::describe(std::uint32_t v) const
{
    const auto& nd = nodes[v];
    switch (nd.kind) {
    case NodeKind::Source: return "s";
    case NodeKind::Sink: return "t";
    case NodeKind::Alpha: return "alpha(" + std::to_string(nd.a) + ")";
    case NodeKind::Gamma: return "gamma(" + std::to_string(nd.a) + ")";
    case NodeKind::Beta:
        return "beta(" + std::to_string(nd.a) + "," + std::to_string(nd.b) + ")" + (nd.stop ? "[stop]" : "[cont]");
    }
    return "?";
}

MDigraph build_m_digraph(const Graph& g, const Matching& m)
{
    if (m.unmatch_delta() == 0) throw Error(ErrorCode::NoUnmatchedStart, "M-digraph needs an unmatched V_delta vertex");
    if (!m.is_covered()) throw Error(ErrorCode::NotCovered, "some matching edge avoids V_delta");
    const std::size_t n = g.num_vertices();
    const std::size_t delta = g.max_degree();
    for (Vertex v : m.delta_vertices())
        if (g.degree(v) != delta)
            throw Error(ErrorCode::DegreeMismatch,
                        "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) + ", expected " +
                            std::to_string(delta));

    const WalkSupport support = compute_walk_support(g, m);
    std::vector<std::uint8_t> in_star(support.contains);
    std::vector<Vertex> queue(support.vertices);
    std::size_t added = 0;
    auto include = [&](Vertex w) {
        if (in_star[w]) return;
        in_star[w] = 1;
        queue.push_back(w);
        ++added;
    };
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        if (m.in_delta(v))
            for (Vertex w : g.neighbors(v)) include(w);
        if (m.is_matched(v)) include(m.mate(v));
    }

    auto in_star_delta = [&](Vertex v) { return in_star[v] && m.in_delta(v); };
    std::vector<std::uint64_t> deg_delta(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (!in_star[v]) continue;
        for (Vertex w : g.neighbors(v))
            if (in_star_delta(w)) ++deg_delta[v];
    }

    MDigraph d;
    d.delta = delta;
    d.support_size = support.vertices.size() + added;
    d.closure_added = added;
    d.nodes.push_back({NodeKind::Source});
    d.nodes.push_back({NodeKind::Sink});
    constexpr std::uint32_t none = MDigraph::npos;
    std::vector<std::uint32_t> alpha(n, none), beta(n, none), gamma(n, none);
    for (Vertex v = 0; v < n; ++v) {
        if (!in_star[v]) continue;
        if (!m.is_matched(v)) {
            if (m.in_delta(v)) {
                alpha[v] = static_cast<std::uint32_t>(d.nodes.size());
                d.nodes.push_back({NodeKind::Alpha, v});
                ++d.alpha_count;
            }
            gamma[v] = static_cast<std::uint32_t>(d.nodes.size());
            d.nodes.push_back({NodeKind::Gamma, v});
            ++d.gamma_count;
        } else {
            const Vertex w = m.mate(v);
            const bool stop = !in_star_delta(w);
            beta[v] = static_cast<std::uint32_t>(d.nodes.size());
            d.nodes.push_back({NodeKind::Beta, v, w, stop});
            ++(stop ? d.beta_stop_count : d.beta_cont_count);
        }
    }

    // Node reached when the walk samples u at an even position.
    auto target = [&](Vertex u) { return m.is_matched(u) ? beta[u] : gamma[u]; };
    auto step_from = [&](std::vector<MArc>& arcs, Vertex odd_vertex) {
        for (Vertex u : g.neighbors(odd_vertex))
            if (in_star[u]) arcs.push_back({target(u), 1});
    };

    d.out.resize(d.nodes.size());
    const std::uint64_t D = delta;
    for (std::uint32_t id = 2; id < d.nodes.size(); ++id) {
        const MNode nd = d.nodes[id];
        auto& arcs = d.out[id];
        switch (nd.kind) {
        case NodeKind::Alpha:
            d.out[d.source].push_back({id, D});
            step_from(arcs, nd.a);
            break;
        case NodeKind::Beta:
            if (nd.stop)
                arcs.push_back({d.sink, D});
            else
                step_from(arcs, nd.b);
            if (D > deg_delta[nd.a]) d.out[d.sink].push_back({id, D - deg_delta[nd.a]});
            break;
        case NodeKind::Gamma:
            if (deg_delta[nd.a] > 0) arcs.push_back({d.sink, deg_delta[nd.a]});
            break;
        default: break;
        }
    }
    d.out[d.sink].push_back({d.source, static_cast<std::uint64_t>(d.alpha_count) * D});

    // Drop nodes without arcs (e.g. Gamma of a V_Δ vertex whose neighbors all
    // lie outside V_Δ) and compact ids.
    const auto in = d.in_degrees();
    std::vector<std::uint32_t> remap(d.nodes.size(), none);
    std::uint32_t next = 0;
    for (std::uint32_t id = 0; id < d.nodes.size(); ++id)
        if (id < 2 || in[id] > 0 || !d.out[id].empty()) remap[id] = next++;
    if (next != d.nodes.size()) {
        MDigraph c = d;
        c.nodes.clear();
        c.out.assign(next, {});
        for (std::uint32_t id = 0; id < d.nodes.size(); ++id) {
            if (remap[id] == none) {
                ++c.dropped_isolated;
                if (d.nodes[id].kind == NodeKind::Gamma) --c.gamma_count;
                continue;
            }
            c.nodes.push_back(d.nodes[id]);
            for (auto a : d.out[id]) c.out[remap[id]].push_back({remap[a.target], a.multiplicity});
        }
        d = std::move(c);
    }
    return d;
}

BalanceReport check_balanced(const MDigraph& d)
{
    BalanceReport r;
    r.in_degree = d.in_degrees();
    r.out_degree.resize(d.num_nodes());
    for (std::uint32_t v = 0; v < d.num_nodes(); ++v) {
        r.out_degree[v] = d.out_degree(v);
        if (r.in_degree[v] != r.out_degree[v]) {
            r.balanced = false;
            r.unbalanced.push_back(v);
        }
    }
    return r;
}

std::vector<std::uint32_t> strongly_connected_components(const MDigraph& d, std::size_t* count)
{
    const std::uint32_t n = static_cast<std::uint32_t>(d.num_nodes());
    constexpr std::uint32_t unvisited = 0xffffffffU;
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0), comp(n, unvisited), stack;
    std::vector<std::uint8_t> on_stack(n, 0);
    std::uint32_t counter = 0, ncomp = 0;
    struct Frame {
        std::uint32_t v;
        std::size_t next_arc;
    };
    std::vector<Frame> call;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& arcs = d.out[f.v];
            if (f.next_arc < arcs.size()) {
                const std::uint32_t w = arcs[f.next_arc++].target;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const std::uint32_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
        }
    }
    if (count) *count = ncomp;
    return comp;
}

ConnectivityReport check_connectivity_and_size(const MDigraph& d, std::size_t n_delta, std::size_t delta)
{
    ConnectivityReport r;
    strongly_connected_components(d, &r.components);
    r.strongly_connected = r.components == 1;
    r.edge_count = d.edge_count();
    r.edge_bound = 7ULL * n_delta * delta;
    r.bound_ok = r.edge_count <= r.edge_bound;
    return r;
}

std::vector<double> stationary_distribution(const MDigraph& d, StationaryOptions opt)
{
    std::size_t comps = 0;
    strongly_connected_components(d, &comps);
    if (comps != 1) throw Error(ErrorCode::NotStronglyConnected, std::to_string(comps) + " components");
    const std::size_t n = d.num_nodes();
    std::vector<double> out_deg(n);
    for (std::uint32_t v = 0; v < n; ++v) out_deg[v] = static_cast<double>(d.out_degree(v));

    std::vector<double> pi(n, 1.0 / static_cast<double>(n)), next(n);
    for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
        for (std::size_t v = 0; v < n; ++v) next[v] = 0.5 * pi[v];
        for (std::uint32_t v = 0; v < n; ++v) {
            const double share = 0.5 * pi[v] / out_deg[v];
            for (const auto& a : d.out[v]) next[a.target] += share * static_cast<double>(a.multiplicity);
        }
        const double total = std::accumulate(next.begin(), next.end(), 0.0);
        double change = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            next[v] /= total;
            change += std::abs(next[v] - pi[v]);
        }
        pi.swap(next);
        if (change < opt.tol) return pi;
    }
    throw Error(ErrorCode::NotConverged, "power iteration exceeded " + std::to_string(opt.max_iterations) + " iterations");
}

std::vector<Vertex> simulate_source_to_sink(const MDigraph& d, Rng& rng)
{
    std::vector<Vertex> seq;
    std::uint32_t cur = d.source;
    for (;;) {
        const auto& arcs = d.out[cur];
        std::uint64_t total = 0;
        for (const auto& a : arcs) total += a.multiplicity;
        std::uint64_t pick = rng.index(total);
        std::uint32_t nxt = arcs.back().target;
        for (const auto& a : arcs) {
            if (pick < a.multiplicity) {
                nxt = a.target;
                break;
            }
            pick -= a.multiplicity;
        }
        if (nxt == d.sink) return seq;
        const MNode& nd = d.nodes[nxt];
        seq.push_back(nd.a);
        if (nd.kind == NodeKind::Beta) seq.push_back(nd.b);
        cur = nxt;
    }
}

} // namespace fairedge
