#include "fairedge/fairmatch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairedge/error.hpp"

namespace fairedge {

void validate(const FairMatchConfig& cfg)
{
    if (!(cfg.budget_factor >= 1.0))
        throw Error(ErrorCode::InvalidConfig, "budget factor must be at least 1, got " + std::to_string(cfg.budget_factor));
    if (cfg.trunc_exponent < 2)
        throw Error(ErrorCode::InvalidConfig, "truncation exponent must be at least 2, got " + std::to_string(cfg.trunc_exponent));
    if (cfg.budget_override && !(*cfg.budget_override > 0.0))
        throw Error(ErrorCode::InvalidConfig, "budget override must be positive");
}

double budget_threshold(const FairMatchConfig& cfg, std::size_t delta)
{
    const double raw = cfg.budget_override
                           ? *cfg.budget_override
                           : cfg.budget_factor * (cfg.trunc_exponent / 2.0) * std::log(static_cast<double>(delta));
    return std::max(raw, 1.0);
}

FairMatchResult fair_matching(const Graph& g, std::size_t delta, std::span<const Vertex> v_delta,
                              const FairMatchConfig& cfg, Rng& rng, LabeledPath* path)
{
    validate(cfg);
    if (delta == 0) throw Error(ErrorCode::DegreeMismatch, "delta must be positive");
    for (Vertex v : v_delta)
        if (v >= g.num_vertices() || g.degree(v) != delta)
            throw Error(ErrorCode::DegreeMismatch, "vertex " + std::to_string(v) + " does not have degree " + std::to_string(delta));

    FairMatchResult res{Matching(g.num_vertices(), v_delta), {}};
    auto& m = res.matching;
    auto& st = res.stats;
    st.threshold = budget_threshold(cfg, delta);
    const double trunc = std::pow(static_cast<double>(delta), -static_cast<double>(cfg.trunc_exponent));

    std::optional<LabeledPath> own;
    if (!path) path = &own.emplace(g.num_vertices(), rng.next_u64());

    while (st.budget < st.threshold && m.unmatch_delta() > 0) {
        st.budget += 1.0 / static_cast<double>(m.unmatch_delta());
        MatchingWalk walk(g, m, rng);
        const auto out = alt_path(g, m, walk, rng, trunc, *path, cfg.altpath);
        ++st.walks;
        st.total_walk_length += out.walk_length;
        if (out.termination == Termination::WalkExhaustedAugmenting) ++st.augmentations;
        if (out.termination == Termination::RandomTruncation) ++st.truncations;
        if (out.termination == Termination::FixOddStop) ++st.fixodd_stops;
        apply_path(m, out.path);
    }
    return res;
}

std::vector<Vertex> unmatched_in(const Matching& m, std::span<const Vertex> v_delta)
{
    std::vector<Vertex> out;
    for (Vertex v : v_delta)
        if (!m.is_matched(v)) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace fairedge
