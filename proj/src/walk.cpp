#include "fairedge/walk.hpp"

#include <algorithm>
#include <string>

#include "fairedge/error.hpp"

namespace fairedge {

namespace {
constexpr std::uint32_t kNotListed = std::numeric_limits<std::uint32_t>::max();
}

Matching::Matching(std::size_t n, std::span<const Vertex> v_delta)
    : mate_(n, kNoVertex), in_delta_(n, 0), unmatched_pos_(n, kNotListed)
{
    delta_.reserve(v_delta.size());
    unmatched_.reserve(v_delta.size());
    for (Vertex v : v_delta) {
        if (v >= n) throw Error(ErrorCode::VertexOutOfRange, "V_delta vertex " + std::to_string(v));
        if (in_delta_[v]) continue;
        in_delta_[v] = 1;
        delta_.push_back(v);
        mark_unmatched(v);
    }
}

void Matching::mark_unmatched(Vertex v)
{
    if (!in_delta_[v] || unmatched_pos_[v] != kNotListed) return;
    unmatched_pos_[v] = static_cast<std::uint32_t>(unmatched_.size());
    unmatched_.push_back(v);
}

void Matching::mark_matched(Vertex v)
{
    const std::uint32_t pos = unmatched_pos_[v];
    if (pos == kNotListed) return;
    const Vertex moved = unmatched_.back();
    unmatched_[pos] = moved;
    unmatched_pos_[moved] = pos;
    unmatched_.pop_back();
    unmatched_pos_[v] = kNotListed;
}

void Matching::match(Vertex u, Vertex v)
{
    if (u == v || is_matched(u) || is_matched(v))
        throw Error(ErrorCode::NotAlternating,
                    "cannot match " + std::to_string(u) + " with " + std::to_string(v));
    mate_[u] = v;
    mate_[v] = u;
    mark_matched(u);
    mark_matched(v);
    ++size_;
}

void Matching::unmatch(Vertex v)
{
    const Vertex w = mate_[v];
    if (w == kNoVertex) return;
    mate_[v] = kNoVertex;
    mate_[w] = kNoVertex;
    mark_unmatched(v);
    mark_unmatched(w);
    --size_;
}

std::vector<Edge> Matching::edges() const
{
    std::vector<Edge> out;
    out.reserve(size_);
    for (Vertex v = 0; v < mate_.size(); ++v)
        if (mate_[v] != kNoVertex && v < mate_[v]) out.emplace_back(v, mate_[v]);
    return out;
}

bool Matching::is_covered() const
{
    for (Vertex v = 0; v < mate_.size(); ++v)
        if (mate_[v] != kNoVertex && !in_delta(v) && !in_delta(mate_[v])) return false;
    return true;
}

bool Matching::check_invariants() const
{
    std::size_t matched = 0;
    for (Vertex v = 0; v < mate_.size(); ++v) {
        const Vertex w = mate_[v];
        if (w == kNoVertex) continue;
        if (w >= mate_.size() || w == v || mate_[w] != v) return false;
        ++matched;
    }
    if (matched != 2 * size_) return false;
    std::size_t expected_unmatched = 0;
    for (Vertex v : delta_) {
        const bool listed = unmatched_pos_[v] != kNotListed;
        if (listed != !is_matched(v)) return false;
        if (listed && unmatched_[unmatched_pos_[v]] != v) return false;
        expected_unmatched += listed ? 1 : 0;
    }
    return expected_unmatched == unmatched_.size();
}

MatchingWalk::MatchingWalk(const Graph& g, const Matching& m, Rng& rng) : g_(&g), m_(&m), rng_(&rng)
{
    if (m.unmatch_delta() == 0) throw Error(ErrorCode::NoUnmatchedStart, "every V_delta vertex is matched");
}

std::optional<WalkStep> MatchingWalk::next()
{
    if (done_) return std::nullopt;
    WalkStep step;
    step.position = ++position_;
    if (position_ == 1) {
        const auto pool = m_->unmatched_delta();
        step.vertex = pool[rng_->index(pool.size())];
    } else if (position_ % 2 == 0) {
        step.vertex = g_->random_neighbor(last_, *rng_);
        if (!m_->is_matched(step.vertex)) step.end = WalkEnd::HitUnmatched;
    } else {
        step.vertex = m_->mate(last_);
        if (!m_->in_delta(step.vertex)) step.end = WalkEnd::LeftDeltaAtOdd;
    }
    last_ = step.vertex;
    done_ = step.terminal();
    return step;
}

std::vector<WalkStep> materialize_walk(const Graph& g, const Matching& m, Rng& rng)
{
    std::vector<WalkStep> out;
    MatchingWalk walk(g, m, rng);
    while (auto s = walk.next()) out.push_back(*s);
    return out;
}

WalkSupport compute_walk_support(const Graph& g, const Matching& m)
{
    const std::size_t n = g.num_vertices();
    WalkSupport sup;
    sup.contains.assign(n, 0);
    // Odd-position states are the only ones that branch; track them separately
    // so each vertex is expanded at most once as an odd vertex.
    std::vector<std::uint8_t> odd_seen(n, 0);
    std::vector<Vertex> queue;
    for (Vertex v : m.unmatched_delta()) {
        odd_seen[v] = 1;
        queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex u = queue[head];
        sup.contains[u] = 1;
        // Odd vertices outside V_Δ end the walk (only reachable as partners).
        if (!m.in_delta(u)) continue;
        for (Vertex w : g.neighbors(u)) {
            sup.contains[w] = 1;
            const Vertex x = m.mate(w);
            if (x == kNoVertex || odd_seen[x]) continue;
            odd_seen[x] = 1;
            queue.push_back(x);
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (sup.contains[v]) sup.vertices.push_back(v);
    for (Vertex v : sup.vertices) {
        const Vertex w = m.mate(v);
        if (w != kNoVertex && !sup.contains[w])
            throw Error(ErrorCode::InvariantViolation,
                        "matching edge (" + std::to_string(v) + ", " + std::to_string(w) + ") straddles the walk support");
        for (Vertex x : g.neighbors(v))
            if (v < x && sup.contains[x]) sup.edges.emplace_back(v, x);
    }
    std::sort(sup.edges.begin(), sup.edges.end());
    return sup;
}

} // namespace fairedge
