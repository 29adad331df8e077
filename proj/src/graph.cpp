#include "fairedge/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fairedge/error.hpp"
#include "text_lines.hpp"

namespace fairedge {

Graph::Graph(std::size_t n) : adj_(n) {}

Graph Graph::from_edge_list(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges)
{
    Graph g(n);
    g.slot_.reserve(2 * edges.size());
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

Graph Graph::from_edge_list(std::size_t n, std::span<const Edge> edges)
{
    Graph g(n);
    g.slot_.reserve(2 * edges.size());
    for (const auto& e : edges) g.add_edge(e.u, e.v);
    return g;
}

void Graph::check_vertex(Vertex v) const
{
    if (v >= adj_.size())
        throw Error(ErrorCode::VertexOutOfRange,
                    "vertex " + std::to_string(v) + " with n=" + std::to_string(adj_.size()));
}

std::size_t Graph::max_degree() const noexcept
{
    std::size_t best = 0;
    for (const auto& a : adj_) best = std::max(best, a.size());
    return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const
{
    if (u == v) throw Error(ErrorCode::SelfLoopQuery, "has_edge(" + std::to_string(u) + ", " + std::to_string(u) + ")");
    return slot_.contains(directed_key(u, v));
}

Vertex Graph::random_neighbor(Vertex v, Rng& rng) const
{
    const auto& a = adj_[v];
    if (a.empty()) throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v) + " has no neighbors");
    return a[rng.index(a.size())];
}

void Graph::add_edge(Vertex u, Vertex v)
{
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw Error(ErrorCode::SelfLoop, "loop at vertex " + std::to_string(u));
    auto [it, inserted] = slot_.try_emplace(directed_key(u, v), static_cast<std::uint32_t>(adj_[u].size()));
    if (!inserted) {
        const Edge e(u, v);
        throw Error(ErrorCode::DuplicateEdge, "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
    slot_.emplace(directed_key(v, u), static_cast<std::uint32_t>(adj_[v].size()));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++m_;
}

void Graph::remove_edge(Vertex u, Vertex v)
{
    check_vertex(u);
    check_vertex(v);
    auto it = u == v ? slot_.end() : slot_.find(directed_key(u, v));
    if (it == slot_.end())
        throw Error(ErrorCode::MissingEdge, "(" + std::to_string(u) + ", " + std::to_string(v) + ")");

    auto drop = [this](Vertex from, Vertex to, std::uint32_t pos) {
        auto& a = adj_[from];
        const Vertex moved = a.back();
        a[pos] = moved;
        a.pop_back();
        if (moved != to) slot_[directed_key(from, moved)] = pos;
        slot_.erase(directed_key(from, to));
    };
    const std::uint32_t pos_uv = it->second;
    const std::uint32_t pos_vu = slot_.at(directed_key(v, u));
    drop(u, v, pos_uv);
    drop(v, u, pos_vu);
    --m_;
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < adj_.size(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
}

bool Graph::check_invariants() const
{
    std::size_t degree_sum = 0;
    for (Vertex u = 0; u < adj_.size(); ++u) {
        degree_sum += adj_[u].size();
        for (std::uint32_t pos = 0; pos < adj_[u].size(); ++pos) {
            const Vertex v = adj_[u][pos];
            if (v == u || v >= adj_.size()) return false;
            auto it = slot_.find(directed_key(u, v));
            if (it == slot_.end() || it->second != pos) return false;
            if (!slot_.contains(directed_key(v, u))) return false;
        }
    }
    return degree_sum == 2 * m_ && slot_.size() == 2 * m_;
}

DegreeBuckets build_degree_buckets(const Graph& g)
{
    DegreeBuckets b;
    b.buckets.resize(g.max_degree() + 1);
    for (Vertex v = 0; v < g.num_vertices(); ++v) b.buckets[g.degree(v)].push_back(v);
    return b;
}

Graph read_edge_list(std::istream& in)
{
    using detail::next_data_line;
    using detail::parse_fail;
    std::string line;
    std::size_t lineno = 0;
    if (!next_data_line(in, line, lineno)) parse_fail(lineno, "missing header");
    long long n = -1, m = -1;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || n < 0 || m < 0 || (hs >> extra)) parse_fail(lineno, "bad header '" + line + "'");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_data_line(in, line, lineno)) parse_fail(lineno, "expected " + std::to_string(m) + " edges");
        std::istringstream ls(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra)) parse_fail(lineno, "bad edge '" + line + "'");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw Error(ErrorCode::VertexOutOfRange, "line " + std::to_string(lineno));
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (next_data_line(in, line, lineno)) parse_fail(lineno, "trailing data");
    Graph g(static_cast<std::size_t>(n));
    for (const auto& e : edges) {
        if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(e.u));
        g.add_edge(e.u, e.v);
    }
    return g;
}

void write_edge_list(std::ostream& out, const Graph& g)
{
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

} // namespace fairedge
