#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fairedge/graph.hpp"
#include "fairedge/rng.hpp"

namespace fairedge {

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// A matching together with its distinguished vertex set V_Δ.
///
/// Besides the partner array it keeps the unmatched members of V_Δ in an
/// indexed set, so unmatch_delta() is O(1) and a uniform unmatched start
/// vertex can be drawn in O(1).
class Matching {
public:
    Matching() = default;
    Matching(std::size_t n, std::span<const Vertex> v_delta);

    std::size_t num_vertices() const noexcept { return mate_.size(); }
    std::size_t size() const noexcept { return size_; }

    bool is_matched(Vertex v) const noexcept { return mate_[v] != kNoVertex; }
    /// kNoVertex when v is unmatched.
    Vertex mate(Vertex v) const noexcept { return mate_[v]; }
    std::optional<Vertex> partner(Vertex v) const
    {
        return is_matched(v) ? std::optional<Vertex>(mate_[v]) : std::nullopt;
    }

    bool in_delta(Vertex v) const noexcept { return in_delta_[v] != 0; }
    std::span<const Vertex> delta_vertices() const noexcept { return delta_; }

    /// Number of V_Δ vertices without a partner.
    std::size_t unmatch_delta() const noexcept { return unmatched_.size(); }
    std::span<const Vertex> unmatched_delta() const noexcept { return unmatched_; }

    /// Both endpoints must currently be unmatched.
    void match(Vertex u, Vertex v);
    /// Removes v's matching edge; no-op when v is unmatched.
    void unmatch(Vertex v);

    /// Matching edges, normalized and sorted.
    std::vector<Edge> edges() const;

    /// Every matching edge has an endpoint in V_Δ.
    bool is_covered() const;

    /// Partner symmetry, size, and the unmatched-set bookkeeping.
    bool check_invariants() const;

private:
    void mark_unmatched(Vertex v);
    void mark_matched(Vertex v);

    std::vector<Vertex> mate_;
    std::vector<std::uint8_t> in_delta_;
    std::vector<Vertex> delta_;
    std::vector<Vertex> unmatched_;
    std::vector<std::uint32_t> unmatched_pos_;
    std::size_t size_ = 0;
};

enum class WalkEnd : std::uint8_t {
    None,
    HitUnmatched,   // an even-position vertex had no partner
    LeftDeltaAtOdd, // the partner reached at an odd position is outside V_Δ
};

struct WalkStep {
    Vertex vertex = kNoVertex;
    std::uint32_t position = 0; // 1-based
    WalkEnd end = WalkEnd::None;

    bool odd() const noexcept { return (position & 1U) != 0; }
    bool terminal() const noexcept { return end != WalkEnd::None; }
};

/// Matching Random Walk generated one step at a time, so a consumer may stop
/// early without paying for the remainder.
///
/// Step 1 is a uniform unmatched V_Δ vertex; an even step is a uniform
/// neighbor of the previous vertex; an odd step (after the first) is the
/// partner of the previous vertex. The walk ends on an unmatched even vertex
/// or on an odd vertex outside V_Δ.
class MatchingWalk {
public:
    /// Throws NoUnmatchedStart when unmatch_delta() == 0.
    MatchingWalk(const Graph& g, const Matching& m, Rng& rng);

    std::optional<WalkStep> next();

    std::size_t length() const noexcept { return position_; }
    bool finished() const noexcept { return done_; }

private:
    const Graph* g_;
    const Matching* m_;
    Rng* rng_;
    Vertex last_ = kNoVertex;
    std::uint32_t position_ = 0;
    bool done_ = false;
};

/// Drains a walk into a vector (tests and diagnostics).
std::vector<WalkStep> materialize_walk(const Graph& g, const Matching& m, Rng& rng);

/// Vertices that occur in at least one Matching Random Walk, and the subgraph
/// they induce.
struct WalkSupport {
    std::vector<Vertex> vertices;       // ascending
    std::vector<std::uint8_t> contains; // indexed by vertex
    std::vector<Edge> edges;            // induced, sorted

    bool has(Vertex v) const noexcept { return v < contains.size() && contains[v] != 0; }
};

/// Breadth-first search over the walk transition relation from every
/// unmatched V_Δ vertex. Throws InvariantViolation if a matching edge has
/// exactly one endpoint in the support.
WalkSupport compute_walk_support(const Graph& g, const Matching& m);

} // namespace fairedge
