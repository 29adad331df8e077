#include <doctest.h>

#include <cmath>

#include "build.hpp"
#include "expect_error.hpp"
#include "fairedge/altpath.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace fairedge;
using V = std::vector<Vertex>;

namespace {

AltPathOutcome run(const Graph& g, const Matching& m, const V& walk, std::size_t min_ell = 0)
{
    Rng rng(1);
    LabeledPath path(g.num_vertices(), 99);
    AltPathOptions opt;
    opt.check_invariants = true;
    opt.fixodd_min_ell = min_ell;
    return alt_path(g, m, walk, rng, 0.0, path, opt);
}

// 0-1-2-3-4 with chords (2,4), (0,4) and pendants 5, 6, 7 so that 0..4 all
// have degree 3.
Graph rotation_graph()
{
    return graph_of(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 4}, {0, 4}, {0, 5}, {1, 6}, {3, 7}});
}

} // namespace

TEST_CASE("single augmenting edge")
{
    const auto g = graph_of(2, {{0, 1}});
    const auto m = matching_of(2, {0, 1}, {});
    const auto out = run(g, m, {0, 1});
    CHECK(out.path == V{0, 1});
    CHECK(out.termination == Termination::WalkExhaustedAugmenting);
    CHECK(out.walk_length == 2);
}

TEST_CASE("triangle walk stops in fix odd")
{
    const auto g = graph_of(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto m = matching_of(3, {0, 1, 2}, {{1, 2}});
    const auto out = run(g, m, {0, 1, 2, 0});
    CHECK(out.path == V{0, 1, 2});
    CHECK(out.termination == Termination::FixOddStop);
}

TEST_CASE("five-cycle walk back to the start stops")
{
    const auto g = gen_cycle(5);
    const auto m = matching_of(5, {0, 1, 2, 3, 4}, {{1, 2}, {3, 4}});
    const auto out = run(g, m, {0, 1, 2, 3, 4, 0});
    CHECK(out.path == V{0, 1, 2, 3, 4});
    CHECK(out.termination == Termination::FixOddStop);
    CHECK(alternating_path_defect(g, m, out.path).empty());
}

TEST_CASE("fix odd rotates onto the first vertex")
{
    const auto g = rotation_graph();
    const auto m = matching_of(8, {0, 1, 2, 3, 4}, {{1, 2}, {3, 4}});
    // Head 4 samples 2 = u_3 (j = 1); 4 is adjacent to u_1 = 0, so l = 0.
    const auto out = run(g, m, {0, 1, 2, 3, 4, 2, 1});
    CHECK(out.path == V{0, 4, 3, 2, 1});
    CHECK(out.rotations == 1);
    CHECK(out.termination == Termination::WalkExhaustedAlternating);
    CHECK(alternating_path_defect(g, m, out.path).empty());

    const auto literal = run(g, m, {0, 1, 2, 3, 4, 2, 1}, 1);
    CHECK(literal.path == V{0, 1, 2, 3, 4});
    CHECK(literal.termination == Termination::FixOddStop);
}

TEST_CASE("fix even trims back to the collision")
{
    // Head 4 samples 1 = u_2, so everything after u_3 = 2 goes.
    const auto g = graph_of(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 4}});
    const auto m = matching_of(5, {0, 1, 2, 3, 4}, {{1, 2}, {3, 4}});
    const auto out = run(g, m, {0, 1, 2, 3, 4, 1, 2});
    CHECK(out.path == V{0, 1, 2});
    CHECK(out.fix_even_calls == 1);
    CHECK(out.termination == Termination::WalkExhaustedAlternating);
}

TEST_CASE("labeled path operations")
{
    LabeledPath p(10, 3);
    for (Vertex v : {0, 1, 2, 3, 4}) p.stage(v);
    CHECK(p.size() == 5);
    CHECK(p.staged() == 5);
    CHECK(p.index_of(3) == 4);
    CHECK(p.staged() == 0);
    CHECK(p.index_of(9) == 0);
    p.fix_even(1);
    CHECK(p.to_vector() == V{0, 1, 2});
    CHECK_FALSE(p.contains(3));
    p.fix_even(1);
    CHECK(p.to_vector() == V{0, 1, 2});
    CHECK(error_code([&] { p.fix_even(2); }) == ErrorCode::WrongParity);
    const auto g = graph_of(10, {{0, 1}, {1, 2}});
    Rng rng(1);
    CHECK(error_code([&] { p.fix_odd(g, 2, 1, rng); }) == ErrorCode::WrongParity);
    p.reset();
    CHECK(p.size() == 0);
    CHECK_FALSE(p.contains(0));
}

TEST_CASE("apply path")
{
    auto m = matching_of(2, {0, 1}, {});
    apply_path(m, V{0, 1});
    CHECK(m.edges() == std::vector<Edge>{{0, 1}});

    auto t = matching_of(3, {0, 1, 2}, {{1, 2}});
    apply_path(t, V{0, 1, 2});
    CHECK(t.edges() == std::vector<Edge>{{0, 1}});
    CHECK_FALSE(t.is_matched(2));
    CHECK(t.unmatch_delta() == 1);

    auto e = matching_of(3, {0, 1, 2}, {});
    CHECK(error_code([&] { apply_path(e, V{0, 1, 2}); }) == ErrorCode::NotAlternating);
    CHECK(e.size() == 0);
    auto f = matching_of(4, {0, 1, 2, 3}, {{1, 2}});
    CHECK(error_code([&] { apply_path(f, V{1, 0}); }) == ErrorCode::NotAlternating);
}

TEST_CASE("inconsistent walks are rejected")
{
    const auto g = graph_of(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto m = matching_of(3, {0, 1, 2}, {{1, 2}});
    CHECK(error_code([&] { run(g, m, {1, 0}); }) == ErrorCode::WalkInconsistent);
    CHECK(error_code([&] { run(g, m, {0, 1, 0}); }) == ErrorCode::WalkInconsistent);
    const auto p = graph_of(3, {{0, 1}, {1, 2}});
    CHECK(error_code([&] { run(p, matching_of(3, {1}, {}), {1, 1}); }) == ErrorCode::WalkInconsistent);
    CHECK(error_code([&] { run(g, m, {}); }) == ErrorCode::WalkInconsistent);
}

TEST_CASE("alt path agrees with the reference on structure")
{
    Rng rng(77);
    LabeledPath path(40, 5);
    for (int trial = 0; trial < 400; ++trial) {
        auto in = trial % 2 ? random_instance(rng, 30, 0, true, 5) : random_instance(rng, 30, 70);
        if (in.m.unmatch_delta() == 0) continue;
        const auto snap = oracle::Snapshot::of(in.g, in.m);
        std::vector<Vertex> walk;
        for (const auto& s : materialize_walk(in.g, in.m, rng)) walk.push_back(s.vertex);

        AltPathOptions opt;
        opt.check_invariants = true;
        const auto out = alt_path(in.g, in.m, walk, rng, 0.0, path, opt);
        std::size_t pos = 0;
        auto next = [&]() -> std::optional<Vertex> {
            if (pos >= walk.size()) return std::nullopt;
            return walk[pos++];
        };
        const auto ref = oracle::ReferenceAltPath::run(snap, next, [] { return false; });

        for (const V* p : {&out.path, &ref.path}) {
            REQUIRE(oracle::is_alternating(snap, *p));
            const auto after = oracle::xor_path(snap, *p);
            REQUIRE(oracle::is_matching(after));
            CHECK(after.count(walk.front()) == 1);
            CHECK(p->front() == walk.front());
        }
        auto m = in.m;
        const auto before = m.unmatch_delta();
        apply_path(m, out.path);
        CHECK(m.check_invariants());
        CHECK(m.unmatch_delta() <= before);
        CHECK(m.is_matched(walk.front()));
    }
}

TEST_CASE("single-path fairness on a fixed instance")
{
    Rng grng(404);
    const auto in = random_instance(grng, 16, 0, true, 4);
    REQUIRE(in.m.unmatch_delta() > 0);
    const double delta = 4.0, u = static_cast<double>(in.m.unmatch_delta());
    Vertex matched_v = kNoVertex, free_v = kNoVertex;
    for (Vertex v : in.v_delta) {
        if (in.m.is_matched(v) && matched_v == kNoVertex) matched_v = v;
        if (!in.m.is_matched(v) && free_v == kNoVertex) free_v = v;
    }
    REQUIRE(matched_v != kNoVertex);
    const auto snap = oracle::Snapshot::of(in.g, in.m);
    const double trunc = 1.0 / (delta * delta);
    const int trials = 100000;

    Rng rng(405);
    LabeledPath path(16, 7);
    int lost = 0, gained = 0, ref_lost = 0, ref_gained = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<Vertex> walk;
        for (const auto& s : materialize_walk(in.g, in.m, rng)) walk.push_back(s.vertex);
        const auto out = alt_path(in.g, in.m, walk, rng, trunc, path);
        const auto after = oracle::xor_path(snap, out.path);
        lost += after.count(matched_v) == 0;
        gained += after.count(free_v) == 1;

        std::size_t pos = 0;
        auto next = [&]() -> std::optional<Vertex> {
            if (pos >= walk.size()) return std::nullopt;
            return walk[pos++];
        };
        const auto ref = oracle::ReferenceAltPath::run(snap, next, [&] { return rng.bernoulli(trunc); });
        const auto ref_after = oracle::xor_path(snap, ref.path);
        ref_lost += ref_after.count(matched_v) == 0;
        ref_gained += ref_after.count(free_v) == 1;
    }
    const double lose_p = (1.0 / u) * (1.0 / delta + 1.0 / (delta * delta));
    const double lose_limit = lose_p + 3 * std::sqrt(lose_p * (1 - lose_p) / trials);
    const double gain_p = 1.0 / u;
    const double gain_limit = gain_p - 3 * std::sqrt(gain_p * (1 - gain_p) / trials);
    CHECK(static_cast<double>(lost) / trials <= lose_limit);
    CHECK(static_cast<double>(ref_lost) / trials <= lose_limit);
    CHECK(static_cast<double>(gained) / trials >= gain_limit);
    CHECK(static_cast<double>(ref_gained) / trials >= gain_limit);
}
