#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairedge/graph.hpp"
#include "fairedge/rng.hpp"
#include "fairedge/walk.hpp"

namespace fairedge {

// Diagnostic digraph whose standard s-to-t random walk reproduces the Matching
// Random Walk. Only tests and the `digraph` CLI subcommand build it.

enum class NodeKind : std::uint8_t { Source, Sink, Alpha, Beta, Gamma };

struct MNode {
    NodeKind kind;
    Vertex a = kNoVertex; // Alpha/Gamma: the vertex; Beta: tail of the matched pair
    Vertex b = kNoVertex; // Beta: head of the matched pair
    bool stop = false;    // Beta whose head is outside V*_Δ
};

struct MArc {
    std::uint32_t target;
    std::uint64_t multiplicity;
};

/// Parallel edges are stored once with an integer multiplicity.
struct MDigraph {
    std::vector<MNode> nodes;
    std::vector<std::vector<MArc>> out;
    std::uint32_t source = 0;
    std::uint32_t sink = 1;
    std::size_t delta = 0;

    std::size_t alpha_count = 0;
    std::size_t beta_cont_count = 0;
    std::size_t beta_stop_count = 0;
    std::size_t gamma_count = 0;
    std::size_t support_size = 0;   // |V*|
    std::size_t closure_added = 0;  // vertices added to the reachable support (see build_m_digraph)
    std::size_t dropped_isolated = 0;

    std::size_t num_nodes() const noexcept { return nodes.size(); }
    std::uint64_t edge_count() const noexcept;
    std::uint64_t out_degree(std::uint32_t v) const noexcept;
    std::vector<std::uint64_t> in_degrees() const;

    /// Removes up to k parallel copies of from->to (fault injection in tests).
    void drop_arc(std::uint32_t from, std::uint32_t to, std::uint64_t k = 1);

    /// Node lookup helpers; npos when absent.
    static constexpr std::uint32_t npos = 0xffffffffU;
    std::uint32_t find(NodeKind kind, Vertex a, Vertex b = kNoVertex) const;

    std::string describe(std::uint32_t v) const;
};

/// Builds the digraph for a covered matching with unmatch_delta() > 0.
///
/// The vertex universe is the walk support closed under two rules: every
/// neighbor of a V_Δ member is included, and every matched member brings its
/// partner. Without the closure a V_Δ vertex reached only at even positions
/// can have neighbors outside the support, which breaks balance at the
/// reverse-direction Beta node. Nodes with no incident arcs are dropped.
///
/// Throws NotCovered, NoUnmatchedStart, DegreeMismatch (V_Δ degrees differ).
MDigraph build_m_digraph(const Graph& g, const Matching& m);

struct BalanceReport {
    bool balanced = true;
    std::vector<std::uint64_t> in_degree;
    std::vector<std::uint64_t> out_degree;
    std::vector<std::uint32_t> unbalanced;
};

BalanceReport check_balanced(const MDigraph& d);

struct ConnectivityReport {
    bool strongly_connected = false;
    std::size_t components = 0;
    std::uint64_t edge_count = 0;
    std::uint64_t edge_bound = 0; // 7 * n_Δ * Δ
    bool bound_ok = false;
};

ConnectivityReport check_connectivity_and_size(const MDigraph& d, std::size_t n_delta, std::size_t delta);

/// Strongly connected component id per node (Tarjan, iterative).
std::vector<std::uint32_t> strongly_connected_components(const MDigraph& d, std::size_t* count = nullptr);

struct StationaryOptions {
    double tol = 1e-12;
    std::size_t max_iterations = 1'000'000;
};

/// Power iteration on the lazy walk (I + P) / 2, which shares its fixed point
/// with P but is aperiodic. Stops once the L1 change falls below tol.
/// Throws NotStronglyConnected or NotConverged.
std::vector<double> stationary_distribution(const MDigraph& d, StationaryOptions opt = {});

/// Standard random walk from s until t is first reached, choosing out-arcs
/// proportionally to multiplicity. Returns the original-graph vertices
/// visited, in order (a Beta node contributes its tail then its head).
std::vector<Vertex> simulate_source_to_sink(const MDigraph& d, Rng& rng);

} // namespace fairedge
