#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "fairedge/fairmatch.hpp"
#include "fairedge/graph.hpp"
#include "fairedge/rng.hpp"

namespace fairedge {

using Color = std::uint32_t;
inline constexpr Color kNoColor = std::numeric_limits<Color>::max();

/// Partial edge coloring. Colors are 0-based; palette_size() is the largest
/// color in use plus one.
///
/// Each vertex keeps a dense color -> neighbor table grown on demand, which
/// makes "is c free at v" and "follow the c-edge out of v" O(1).
class Coloring {
public:
    Coloring() = default;
    explicit Coloring(std::size_t n) : at_(n) {}

    std::size_t num_vertices() const noexcept { return at_.size(); }
    std::size_t num_colored() const noexcept { return color_.size(); }

    /// kNoColor when uncolored.
    Color color_of(Vertex u, Vertex v) const;
    bool is_colored(Vertex u, Vertex v) const { return color_of(u, v) != kNoColor; }

    bool is_free(Vertex v, Color c) const noexcept { return c >= at_[v].size() || at_[v][c] == kNoVertex; }
    /// Endpoint of the c-colored edge at v, or kNoVertex.
    Vertex via(Vertex v, Color c) const noexcept { return c < at_[v].size() ? at_[v][c] : kNoVertex; }
    /// Smallest color in [0, limit) free at v, or kNoColor.
    Color first_free(Vertex v, Color limit) const noexcept;

    /// Colors an uncolored edge. Throws InvariantViolation if c is taken at
    /// either endpoint or the edge is already colored.
    void set(Vertex u, Vertex v, Color c);
    /// No-op when uncolored.
    void clear(Vertex u, Vertex v);

    std::size_t palette_size() const noexcept;

    struct Entry {
        Edge e;
        Color c;
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    /// Sorted by edge.
    std::vector<Entry> entries() const;

private:
    absl::flat_hash_map<std::uint64_t, Color> color_;
    std::vector<std::vector<Vertex>> at_;
};

struct VerifyResult {
    bool proper = true;
    std::size_t palette_size = 0;
    std::optional<Edge> violation; // first offending edge
    std::string detail;
};

/// Independent O(m log Δ) check that every edge of g is colored, that no
/// colored pair is missing from g, and that colors at each vertex are
/// pairwise distinct.
VerifyResult verify_proper(const Graph& g, const Coloring& c);
/// Same check over raw entries, which may repeat edges or clash.
VerifyResult verify_entries(const Graph& g, std::size_t n, std::span<const Coloring::Entry> entries);

/// Random greedy: each edge repeatedly draws a color from
/// [base, base + 3*delta_f) until one is free at both endpoints.
void greedy_residual_coloring(std::span<const Edge> f_edges, std::size_t delta_f, Color base, Rng& rng,
                              Coloring& coloring);

/// Colors the uncolored edge e of g within palette [0, palette) using a
/// Misra-Gries fan rotation and a two-color chain flip. Earlier edges may be
/// recolored. Throws PaletteTooSmall when palette <= Δ(g), MissingEdge when e
/// is not in g.
void vizing_extend(const Graph& g, Coloring& coloring, Edge e, std::size_t palette);

/// Misra-Gries from scratch over the edges in ascending order: at most Δ+1 colors.
Coloring classical_fallback(const Graph& g);

struct PeelStep {
    std::size_t delta_i = 0;
    std::size_t candidates = 0; // |U_i|
    std::size_t unmatched = 0;  // |U_i| minus matched
    std::size_t f_edges = 0;    // distinct edges added to F
    FairMatchStats match;
};

struct ColoringOptions {
    FairMatchConfig match;
    /// Fallback when the palette exceeds Δ + ceil(fallback_constant * ln n).
    double fallback_constant = 300.0;
    /// Assert Δ(E_rem) <= Δ_i and that U_i holds every degree-Δ_i vertex (O(n) per round).
    bool check_peeling = false;
    bool record_trace = false;
    /// Per-vertex X(v) (rounds in U_i left unmatched) and Y(v) (times picked as F endpoint).
    bool record_xy = false;
};

struct ColoringRun {
    Coloring coloring;
    std::size_t delta = 0;
    std::size_t palette = 0;
    std::size_t pre_fallback_palette = 0;
    std::size_t palette_bound = 0;
    bool fallback = false;
    std::size_t f_edges = 0;
    std::size_t delta_f = 0;
    std::size_t total_walks = 0;
    std::size_t total_walk_length = 0;
    std::vector<PeelStep> trace;
    std::vector<std::uint32_t> x, y;
};

/// Degree peeling with fair matchings; leftover edges F get colors from
/// [Δ, Δ + 3Δ(F)). Falls back to classical_fallback if the palette exceeds
/// the bound.
ColoringRun near_vizing_coloring(const Graph& g, const ColoringOptions& opt, std::uint64_t seed);

/// Keeps the Δ+1 largest classes of a near-Vizing coloring (ties to the
/// smaller color), renumbers them 0..Δ and extends the rest edge by edge.
ColoringRun vizing_coloring(const Graph& g, const ColoringOptions& opt, std::uint64_t seed);

struct EpsOptions {
    double eps = 0.5;
    double eta0 = 2.0;
    /// FairMatching runs with budget ln(K / eps).
    double reparam = 8.0;
};

/// (1+eps)Δ variant: peeling with the shorter budget, F colored with Δ(F)+1
/// colors by Misra-Gries, vizing_coloring when the palette exceeds
/// ceil((1+eps)Δ). Throws EpsilonOutOfRange unless 0 < eps < 1 and
/// eps >= eta0 ln(n) / Δ.
ColoringRun eps_coloring(const Graph& g, const EpsOptions& eps, const ColoringOptions& opt, std::uint64_t seed);

/// Header "n m palette", then one "u v c" line per edge in ascending order.
void write_coloring(std::ostream& out, const Coloring& c);

struct ColoringFile {
    std::size_t n = 0;
    std::size_t palette = 0; // as declared in the header
    std::vector<Coloring::Entry> entries;
};

/// Syntax only: throws ParseError, VertexOutOfRange or SelfLoop.
ColoringFile read_coloring_file(std::istream& in);
/// Also rejects repeated edges (DuplicateEdge), clashing colors and a header
/// palette that disagrees with the body (ParseError).
Coloring read_coloring(std::istream& in);

} // namespace fairedge
