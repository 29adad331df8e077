#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fairedge/altpath.hpp"
#include "fairedge/graph.hpp"
#include "fairedge/rng.hpp"
#include "fairedge/walk.hpp"

namespace fairedge {

struct FairMatchConfig {
    /// Budget threshold is budget_factor * (trunc_exponent / 2) * ln(delta),
    /// floored at 1, so raising the exponent raises the budget with it.
    double budget_factor = 2.0;
    /// Truncation probability is delta^-trunc_exponent.
    int trunc_exponent = 2;
    /// Replaces the computed threshold when set (still floored at 1).
    std::optional<double> budget_override;
    AltPathOptions altpath;
};

struct FairMatchStats {
    std::size_t walks = 0;
    std::size_t total_walk_length = 0;
    std::size_t augmentations = 0;
    std::size_t truncations = 0;
    std::size_t fixodd_stops = 0;
    double budget = 0.0;
    double threshold = 0.0;
};

struct FairMatchResult {
    Matching matching;
    FairMatchStats stats;
};

/// Throws InvalidConfig on budget_factor < 1, trunc_exponent < 2, or a
/// non-positive override.
void validate(const FairMatchConfig& cfg);

double budget_threshold(const FairMatchConfig& cfg, std::size_t delta);

/// Repeats walk, AltPath, apply until the budget reaches the threshold or
/// every V_Δ vertex is matched. Each round first adds 1/unmatch_Δ to the
/// budget. `path` is scratch space sized for g; pass one in to reuse it.
/// Throws DegreeMismatch if some v_delta vertex has degree other than delta.
FairMatchResult fair_matching(const Graph& g, std::size_t delta, std::span<const Vertex> v_delta,
                              const FairMatchConfig& cfg, Rng& rng, LabeledPath* path = nullptr);

/// V_Δ vertices without a partner, ascending.
std::vector<Vertex> unmatched_in(const Matching& m, std::span<const Vertex> v_delta);

} // namespace fairedge
