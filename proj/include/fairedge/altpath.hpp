#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fairedge/graph.hpp"
#include "fairedge/rng.hpp"
#include "fairedge/treap.hpp"
#include "fairedge/walk.hpp"

namespace fairedge {

/// The path P under construction: a treap T holding the flushed prefix, a
/// staging buffer S holding vertices appended since the last flush, and a
/// membership table over both. The vertex at 1-based index k of T+S is
/// labeled 'odd' iff k is odd, so reversals relabel for free.
///
/// Membership is a dense per-vertex flag array with a touched list, so reset
/// costs O(|P|) and the object can be reused across walks.
class LabeledPath {
public:
    LabeledPath(std::size_t n, std::uint64_t treap_seed);

    void reset();
    bool contains(Vertex v) const noexcept { return on_path_[v] != 0; }
    std::size_t size() const noexcept { return tree_.size() + staging_.size(); }
    std::size_t staged() const noexcept { return staging_.size(); }

    /// Appends to S. The caller guarantees v is not on the path.
    void stage(Vertex v);
    /// Append(T, S).
    void flush();

    /// 1-based index of v after flushing; 0 when absent.
    std::size_t index_of(Vertex v);

    /// Removes every vertex after the even-indexed `at`'s partner, i.e. the
    /// range [2j+2, |P|] when at = u_{2j}. Throws WrongParity.
    void fix_even(Vertex at);

    enum class FixOddResult { Rotated, Stop };

    /// at = u_{2j+1}, head = u_{2k+1} (the last vertex). Looks for an odd
    /// u_{2l+1} adjacent to head with min_ell <= l <= j-1. Candidates come from
    /// ceil(log2 max(|T|,2)) random neighbor probes of head; the smallest
    /// sampled index wins, otherwise a backward scan from `at` takes the first
    /// hit. On success P becomes (u_1..u_{2l+1}, u_{2k+1}, u_{2k}, .., u_{2j}).
    /// Throws WrongParity.
    FixOddResult fix_odd(const Graph& g, Vertex head, Vertex at, Rng& rng, std::size_t min_ell = 0);

    std::vector<Vertex> to_vector() const;

    std::size_t fixodd_probes() const noexcept { return probes_; }

private:
    void purge(std::span<const Vertex> removed);

    ImplicitTreap tree_;
    std::vector<Vertex> staging_;
    std::vector<std::uint8_t> on_path_;
    std::vector<Vertex> touched_;
    std::vector<Vertex> removed_;
    std::size_t probes_ = 0;
};

enum class Termination : std::uint8_t {
    WalkExhaustedAugmenting,
    WalkExhaustedAlternating,
    RandomTruncation,
    FixOddStop,
};

std::string_view to_string(Termination t) noexcept;

struct AltPathOutcome {
    std::vector<Vertex> path;
    Termination termination = Termination::WalkExhaustedAlternating;
    std::size_t walk_length = 0; // walk vertices actually drawn
    std::size_t fix_even_calls = 0;
    std::size_t rotations = 0;
};

struct AltPathOptions {
    /// Verify the alternating-path invariant at every loop boundary (O(|P|)).
    bool check_invariants = false;
    /// Smallest l FixOdd may rotate to. 0 admits u_1; 1 is the literal
    /// 1 <= l <= j-1 rule.
    std::size_t fixodd_min_ell = 0;
};

/// Runs AltPath over a freshly started walk. Random truncation with
/// probability trunc_prob is tried before every iteration except the first.
/// Throws WalkInconsistent when a walk step disagrees with m, and
/// InvariantViolation when checking is enabled and fails.
AltPathOutcome alt_path(const Graph& g, const Matching& m, MatchingWalk& walk, Rng& rng, double trunc_prob,
                        LabeledPath& path, const AltPathOptions& opt = {});

/// Same over an explicit walk sequence; every step is validated against g and m.
AltPathOutcome alt_path(const Graph& g, const Matching& m, std::span<const Vertex> walk, Rng& rng,
                        double trunc_prob, LabeledPath& path, const AltPathOptions& opt = {});

/// Why a sequence fails to be an alternating path for m, or empty when it is
/// one: distinct vertices, u_1 unmatched, (u_{2t-1},u_{2t}) in E\M,
/// (u_{2t},u_{2t+1}) in M, and an unmatched last vertex for even length.
std::string alternating_path_defect(const Graph& g, const Matching& m, std::span<const Vertex> p);

/// m becomes m XOR p. Validates the matching-side conditions first and throws
/// NotAlternating without modifying m.
void apply_path(Matching& m, std::span<const Vertex> p);

} // namespace fairedge
