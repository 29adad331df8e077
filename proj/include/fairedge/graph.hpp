#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "fairedge/rng.hpp"

namespace fairedge {

using Vertex = std::uint32_t;

/// Undirected edge, normalized so that u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr std::uint64_t directed_key(Vertex from, Vertex to) noexcept
{
    return (static_cast<std::uint64_t>(from) << 32) | to;
}

constexpr std::uint64_t edge_key(Vertex a, Vertex b) noexcept
{
    return a < b ? directed_key(a, b) : directed_key(b, a);
}

constexpr Edge edge_from_key(std::uint64_t key) noexcept
{
    Edge e;
    e.u = static_cast<Vertex>(key >> 32);
    e.v = static_cast<Vertex>(key & 0xffffffffULL);
    return e;
}

/// Simple undirected graph with O(1) uniform neighbor sampling, O(1) expected
/// edge queries and O(1) expected edge deletion.
///
/// Each vertex keeps a dense neighbor array; a single hash table maps every
/// directed pair (u, v) to v's slot in u's array so that deletion can swap the
/// last neighbor into the hole.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    /// Throws DuplicateEdge, SelfLoop or VertexOutOfRange.
    static Graph from_edge_list(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);
    static Graph from_edge_list(std::size_t n, std::span<const Edge> edges);

    std::size_t num_vertices() const noexcept { return adj_.size(); }
    std::size_t num_edges() const noexcept { return m_; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }
    std::size_t max_degree() const noexcept;

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }

    /// Throws SelfLoopQuery when u == v.
    bool has_edge(Vertex u, Vertex v) const;

    /// Uniform over N(v); throws IsolatedVertex when deg(v) = 0.
    Vertex random_neighbor(Vertex v, Rng& rng) const;

    void add_edge(Vertex u, Vertex v);
    /// Throws MissingEdge.
    void remove_edge(Vertex u, Vertex v);

    /// All edges, normalized and sorted ascending.
    std::vector<Edge> edges() const;

    /// Degree/symmetry/slot-table consistency. O(n + m).
    bool check_invariants() const;

private:
    void check_vertex(Vertex v) const;

    std::vector<std::vector<Vertex>> adj_;
    absl::flat_hash_map<std::uint64_t, std::uint32_t> slot_;
    std::size_t m_ = 0;
};

/// bucket[d] lists the vertices of degree d, ascending.
struct DegreeBuckets {
    std::vector<std::vector<Vertex>> buckets;

    std::size_t max_degree() const noexcept { return buckets.empty() ? 0 : buckets.size() - 1; }
};

DegreeBuckets build_degree_buckets(const Graph& g);

/// Edge-list text format: header "n m", then m lines "u v". Lines whose first
/// non-blank character is '#' are comments. Throws ParseError.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

} // namespace fairedge
