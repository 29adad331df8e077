#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fairedge/coloring.hpp"
#include "fairedge/fairmatch.hpp"
#include "fairedge/graph.hpp"
#include "fairedge/rng.hpp"

namespace fairedge {

/// Simple d-regular graph. Points are paired one random pair at a time,
/// rejecting pairs that would create a loop or a repeated edge and
/// restarting when the remaining points admit no valid pair. Degrees above
/// (n-1)/2 are generated as the complement of an (n-1-d)-regular graph.
/// Throws InfeasibleParameters when n*d is odd or d >= n.
Graph gen_regular(std::size_t n, std::size_t d, Rng& rng);

/// m distinct uniform edges. Throws TooManyEdges when m > n(n-1)/2.
Graph gen_gnm(std::size_t n, std::size_t m, Rng& rng);

Graph gen_star(std::size_t leaves);
Graph gen_clique(std::size_t n);
Graph gen_cycle(std::size_t n);
Graph gen_petersen();

/// V_Δ of g, ascending.
std::vector<Vertex> max_degree_vertices(const Graph& g);

struct FairnessRow {
    Vertex vertex = 0;
    std::size_t unmatched = 0;
    double frequency = 0.0;
    double std_error = 0.0; // binomial, at the bound's probability
    double limit = 0.0;     // bound + 3 std_error
    bool pass = true;
};

struct FairnessTable {
    std::size_t delta = 0;
    std::size_t trials = 0;
    double bound = 0.0; // 1/Δ + 2/Δ²
    std::vector<FairnessRow> rows;
    bool all_pass = true;
    double max_frequency = 0.0;
    double mean_walks = 0.0;
    double mean_walk_length = 0.0;
};

/// Runs fair_matching on the max-degree vertices of g `trials` times with
/// streams derived from `seed` and tabulates per-vertex unmatched rates.
FairnessTable fairness_trials(const Graph& g, std::size_t trials, const FairMatchConfig& cfg, std::uint64_t seed);

struct BenchRow {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t delta = 0;
    double seconds = 0.0;         // median
    double walk_length = 0.0;     // median total over all peeling rounds
    double time_ratio = 0.0;      // seconds / (m ln Δ)
    double walk_ratio = 0.0;      // walk_length / (n_Δ ln Δ)
};

/// Near-Vizing coloring of random d-regular graphs, one row per size with
/// medians over `repeats` seeds.
std::vector<BenchRow> bench_scaling(std::size_t degree, std::span<const std::size_t> sizes, const ColoringOptions& opt,
                                    std::uint64_t seed, std::size_t repeats = 5);

struct RunReport {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t delta = 0;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::size_t palette = 0;
    std::size_t pre_fallback_palette = 0;
    std::size_t palette_bound = 0;
    bool fallback = false;
    bool proper = false;
    double seconds = 0.0;
    std::size_t delta_f = 0;
    std::vector<std::size_t> walk_length_per_round;

    static RunReport from_run(const Graph& g, const ColoringRun& run, std::string algorithm, std::uint64_t seed,
                              double seconds);
    /// One key=value per line. Wall time is omitted unless asked for, so the
    /// default output is a pure function of the inputs.
    void write_kv(std::ostream& out, bool with_time = false) const;
    std::string to_json(bool with_time = false) const;
};

} // namespace fairedge
