#include "fairedge/altpath.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

#include "fairedge/error.hpp"

namespace fairedge {

LabeledPath::LabeledPath(std::size_t n, std::uint64_t treap_seed) : tree_(treap_seed), on_path_(n, 0) {}

void LabeledPath::reset()
{
    for (Vertex v : touched_) on_path_[v] = 0;
    touched_.clear();
    staging_.clear();
    tree_.clear();
}

void LabeledPath::stage(Vertex v)
{
    on_path_[v] = 1;
    touched_.push_back(v);
    staging_.push_back(v);
}

void LabeledPath::flush()
{
    if (staging_.empty()) return;
    tree_.append(staging_);
    staging_.clear();
}

std::size_t LabeledPath::index_of(Vertex v)
{
    if (!contains(v)) return 0;
    flush();
    return tree_.search(v).value_or(0);
}

void LabeledPath::purge(std::span<const Vertex> removed)
{
    // touched_ may keep stale entries; reset() clears them harmlessly.
    for (Vertex v : removed) on_path_[v] = 0;
}

void LabeledPath::fix_even(Vertex at)
{
    const std::size_t idx = index_of(at);
    if (idx == 0 || idx % 2 != 0)
        throw Error(ErrorCode::WrongParity, "FixEven at vertex " + std::to_string(at) + " (index " + std::to_string(idx) + ")");
    const std::size_t len = tree_.size();
    if (idx + 2 > len) return;
    removed_.clear();
    tree_.delete_range(idx + 2, len, removed_);
    purge(removed_);
}

LabeledPath::FixOddResult LabeledPath::fix_odd(const Graph& g, Vertex head, Vertex at, Rng& rng, std::size_t min_ell)
{
    const std::size_t idx = index_of(at);
    if (idx == 0 || idx % 2 == 0)
        throw Error(ErrorCode::WrongParity, "FixOdd at vertex " + std::to_string(at) + " (index " + std::to_string(idx) + ")");
    const std::size_t j = (idx - 1) / 2;
    if (j < min_ell + 1) return FixOddResult::Stop;
    const std::size_t lo = 2 * min_ell + 1; // smallest admissible index
    const std::size_t hi = 2 * j - 1;       // largest admissible index

    const std::size_t len = tree_.size();
    const std::size_t samples = std::bit_width(std::max<std::size_t>(len, 2) - 1);
    std::size_t best = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const Vertex w = g.random_neighbor(head, rng);
        ++probes_;
        if (!contains(w)) continue;
        const std::size_t p = tree_.search(w).value_or(0);
        if (p % 2 == 1 && p >= lo && p <= hi && (best == 0 || p < best)) best = p;
    }
    if (best == 0) {
        auto it = tree_.pred_iter(at);
        for (std::size_t p = idx - 1; p >= lo; --p) {
            const auto x = it.next();
            if (!x) break;
            if (p % 2 == 1 && p <= hi && g.has_edge(head, *x)) {
                best = p;
                break;
            }
        }
    }
    if (best == 0) return FixOddResult::Stop;

    // best = 2l+1: drop u_{2l+2}..u_{2j-1}, then reverse the tail block.
    if (best + 1 <= idx - 2) {
        removed_.clear();
        tree_.delete_range(best + 1, idx - 2, removed_);
        purge(removed_);
    }
    tree_.reverse_range(best + 1, tree_.size());
    return FixOddResult::Rotated;
}

std::vector<Vertex> LabeledPath::to_vector() const
{
    auto out = tree_.to_vector();
    out.insert(out.end(), staging_.begin(), staging_.end());
    return out;
}

std::string_view to_string(Termination t) noexcept
{
    switch (t) {
    case Termination::WalkExhaustedAugmenting: return "walk-exhausted-augmenting";
    case Termination::WalkExhaustedAlternating: return "walk-exhausted-alternating";
    case Termination::RandomTruncation: return "random-truncation";
    case Termination::FixOddStop: return "fixodd-stop";
    }
    return "unknown";
}

namespace {

struct LiveSource {
    MatchingWalk* walk;
    std::optional<Vertex> next()
    {
        auto s = walk->next();
        if (!s) return std::nullopt;
        return s->vertex;
    }
    bool finished() const { return walk->finished(); }
    std::size_t drawn() const { return walk->length(); }
    static constexpr bool trusted = true;
};

struct SpanSource {
    std::span<const Vertex> seq;
    std::size_t pos = 0;
    std::optional<Vertex> next()
    {
        if (pos >= seq.size()) return std::nullopt;
        return seq[pos++];
    }
    bool finished() const { return pos >= seq.size(); }
    std::size_t drawn() const { return pos; }
    static constexpr bool trusted = false;
};

[[noreturn]] void inconsistent(const std::string& what)
{
    throw Error(ErrorCode::WalkInconsistent, what);
}

template <class Source>
AltPathOutcome run_alt_path(const Graph& g, const Matching& m, Source& src, Rng& rng, double trunc_prob,
                            LabeledPath& path, const AltPathOptions& opt)
{
    AltPathOutcome out;
    path.reset();
    auto finish = [&](Termination t) {
        out.termination = t;
        out.walk_length = src.drawn();
        out.path = path.to_vector();
        return out;
    };

    const auto first = src.next();
    if (!first) inconsistent("empty walk");
    Vertex head = *first;
    if (!Source::trusted) {
        if (head >= g.num_vertices()) inconsistent("start vertex out of range");
        if (m.is_matched(head) || !m.in_delta(head))
            inconsistent("start vertex " + std::to_string(head) + " is not an unmatched V_delta vertex");
    }
    path.stage(head);

    for (std::size_t i = 1;; ++i) {
        if (opt.check_invariants) {
            const auto p = path.to_vector();
            auto defect = alternating_path_defect(g, m, p);
            if (defect.empty() && (p.size() % 2 == 0 || p.front() != *first || p.back() != head))
                defect = "path does not run from v1 to the current head with odd length";
            if (!defect.empty()) throw Error(ErrorCode::InvariantViolation, "iteration " + std::to_string(i) + ": " + defect);
        }
        if (src.finished()) return finish(Termination::WalkExhaustedAlternating);
        if (i != 1 && rng.bernoulli(trunc_prob)) return finish(Termination::RandomTruncation);

        const auto x = src.next();
        if (!x) return finish(Termination::WalkExhaustedAlternating);
        if (!Source::trusted) {
            if (!m.in_delta(head)) inconsistent("walk continues past odd vertex " + std::to_string(head) + " outside V_delta");
            if (*x >= g.num_vertices() || *x == head || !g.has_edge(head, *x))
                inconsistent(std::to_string(*x) + " is not a neighbor of " + std::to_string(head));
        }
        const bool x_matched = m.is_matched(*x);
        std::optional<Vertex> y;
        if (x_matched) {
            y = src.next();
            if (!y || *y != m.mate(*x)) inconsistent("step after " + std::to_string(*x) + " is not its partner");
        } else if (!src.finished()) {
            inconsistent("walk continues past unmatched vertex " + std::to_string(*x));
        }

        if (!path.contains(*x)) {
            path.stage(*x);
            if (!y) return finish(Termination::WalkExhaustedAugmenting);
            path.stage(*y);
            head = *y;
            continue;
        }

        const std::size_t idx = path.index_of(*x);
        if (idx % 2 == 0) {
            if (!y) throw Error(ErrorCode::InvariantViolation, "unmatched vertex carries an even label");
            path.fix_even(*x);
            ++out.fix_even_calls;
        } else {
            if (path.fix_odd(g, head, *x, rng, opt.fixodd_min_ell) == LabeledPath::FixOddResult::Stop)
                return finish(Termination::FixOddStop);
            ++out.rotations;
        }
        head = *y;
    }
}

} // namespace

AltPathOutcome alt_path(const Graph& g, const Matching& m, MatchingWalk& walk, Rng& rng, double trunc_prob,
                        LabeledPath& path, const AltPathOptions& opt)
{
    LiveSource src{&walk};
    return run_alt_path(g, m, src, rng, trunc_prob, path, opt);
}

AltPathOutcome alt_path(const Graph& g, const Matching& m, std::span<const Vertex> walk, Rng& rng,
                        double trunc_prob, LabeledPath& path, const AltPathOptions& opt)
{
    SpanSource src{walk};
    return run_alt_path(g, m, src, rng, trunc_prob, path, opt);
}

std::string alternating_path_defect(const Graph& g, const Matching& m, std::span<const Vertex> p)
{
    if (p.empty()) return "empty path";
    const std::size_t n = g.num_vertices();
    std::vector<Vertex> sorted(p.begin(), p.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.back() >= n) return "vertex out of range";
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "repeated vertex";
    if (m.is_matched(p[0])) return "first vertex " + std::to_string(p[0]) + " is matched";
    for (std::size_t k = 1; k < p.size(); ++k) {
        const Vertex a = p[k - 1], b = p[k];
        if (!g.has_edge(a, b)) return "(" + std::to_string(a) + ", " + std::to_string(b) + ") is not an edge";
        const bool in_m = m.mate(a) == b;
        // k is the 1-based index of a; edges leaving odd indices are non-matching.
        if (k % 2 == 1 && in_m) return "edge at position " + std::to_string(k) + " should be outside M";
        if (k % 2 == 0 && !in_m) return "edge at position " + std::to_string(k) + " should be in M";
    }
    if (p.size() % 2 == 0 && m.is_matched(p.back())) return "even-length path ends at a matched vertex";
    return {};
}

void apply_path(Matching& m, std::span<const Vertex> p)
{
    if (p.empty()) return;
    if (m.is_matched(p[0])) throw Error(ErrorCode::NotAlternating, "first vertex " + std::to_string(p[0]) + " is matched");
    for (std::size_t k = 1; k + 1 < p.size(); k += 2)
        if (m.mate(p[k]) != p[k + 1])
            throw Error(ErrorCode::NotAlternating,
                        "(" + std::to_string(p[k]) + ", " + std::to_string(p[k + 1]) + ") is not a matching edge");
    if (p.size() % 2 == 0 && m.is_matched(p.back()))
        throw Error(ErrorCode::NotAlternating, "last vertex " + std::to_string(p.back()) + " is matched");
    for (std::size_t k = 1; k + 1 < p.size(); k += 2) m.unmatch(p[k]);
    for (std::size_t k = 0; k + 1 < p.size(); k += 2) m.match(p[k], p[k + 1]);
}

} // namespace fairedge
