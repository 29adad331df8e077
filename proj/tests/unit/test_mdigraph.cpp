#include <doctest.h>

#include "build.hpp"
#include "expect_error.hpp"
#include "fairedge/mdigraph.hpp"
#include "instances.hpp"

using namespace fairedge;

namespace {

std::uint64_t mult(const MDigraph& d, std::uint32_t from, std::uint32_t to)
{
    std::uint64_t k = 0;
    for (const auto& a : d.out[from])
        if (a.target == to) k += a.multiplicity;
    return k;
}

double max_stationary_error(const MDigraph& d)
{
    const auto pi = stationary_distribution(d);
    const double total = static_cast<double>(d.edge_count());
    double worst = 0;
    for (std::uint32_t v = 0; v < d.num_nodes(); ++v)
        worst = std::max(worst, std::abs(pi[v] - static_cast<double>(d.out_degree(v)) / total));
    return worst;
}

} // namespace

TEST_CASE("m-digraph of a single edge")
{
    const auto g = graph_of(2, {{0, 1}});
    const auto m = matching_of(2, {0, 1}, {});
    const auto d = build_m_digraph(g, m);
    CHECK(d.num_nodes() == 6);
    CHECK(d.alpha_count == 2);
    CHECK(d.gamma_count == 2);
    CHECK(d.beta_cont_count + d.beta_stop_count == 0);
    const auto a0 = d.find(NodeKind::Alpha, 0), a1 = d.find(NodeKind::Alpha, 1);
    const auto g0 = d.find(NodeKind::Gamma, 0), g1 = d.find(NodeKind::Gamma, 1);
    CHECK(mult(d, d.source, a0) == 1);
    CHECK(mult(d, a0, g1) == 1);
    CHECK(mult(d, a1, g0) == 1);
    CHECK(mult(d, g0, d.sink) == 1);
    CHECK(mult(d, d.sink, d.source) == 2);
    CHECK(d.edge_count() == 8);
    CHECK(check_balanced(d).balanced);
    const auto c = check_connectivity_and_size(d, 2, 1);
    CHECK(c.strongly_connected);
    CHECK(c.edge_bound == 14);
    CHECK(c.bound_ok);
    CHECK(max_stationary_error(d) <= 1e-9);
}

TEST_CASE("m-digraph of a triangle with one matched edge")
{
    const auto g = graph_of(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto m = matching_of(3, {0, 1, 2}, {{1, 2}});
    const auto d = build_m_digraph(g, m);
    const auto a0 = d.find(NodeKind::Alpha, 0), g0 = d.find(NodeKind::Gamma, 0);
    const auto b12 = d.find(NodeKind::Beta, 1, 2), b21 = d.find(NodeKind::Beta, 2, 1);
    REQUIRE(b12 != MDigraph::npos);
    REQUIRE(b21 != MDigraph::npos);
    CHECK(d.num_nodes() == 6);
    CHECK(d.beta_cont_count == 2);
    CHECK(d.beta_stop_count == 0);
    CHECK(mult(d, d.source, a0) == 2);
    CHECK(mult(d, a0, b12) == 1);
    CHECK(mult(d, a0, b21) == 1);
    // beta(1,2) continues from 2, whose neighbors are 0 (free) and 1 (matched to 2).
    CHECK(mult(d, b12, g0) == 1);
    CHECK(mult(d, b12, b12) == 1);
    CHECK(mult(d, g0, d.sink) == 2);
    CHECK(mult(d, d.sink, d.source) == 2);
    CHECK(mult(d, d.sink, b12) == 0);
    CHECK(d.edge_count() == 12);
    CHECK(check_balanced(d).balanced);
    const auto c = check_connectivity_and_size(d, 3, 2);
    CHECK(c.strongly_connected);
    CHECK(c.edge_bound == 42);
    CHECK(max_stationary_error(d) <= 1e-9);
}

TEST_CASE("m-digraph preconditions")
{
    const auto g = graph_of(4, {{0, 1}, {2, 3}, {1, 2}});
    CHECK(error_code([&] { build_m_digraph(g, matching_of(4, {1, 2}, {{1, 2}})); }) == ErrorCode::NoUnmatchedStart);
    const auto h = graph_of(4, {{0, 1}, {2, 3}});
    CHECK(error_code([&] { build_m_digraph(h, matching_of(4, {0}, {{2, 3}})); }) == ErrorCode::NotCovered);
}

TEST_CASE("fault injection breaks balance and connectivity")
{
    const auto g = graph_of(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto m = matching_of(3, {0, 1, 2}, {{1, 2}});
    auto d = build_m_digraph(g, m);
    const auto a0 = d.find(NodeKind::Alpha, 0);
    d.drop_arc(d.source, a0);
    const auto bal = check_balanced(d);
    CHECK_FALSE(bal.balanced);
    CHECK(bal.unbalanced == std::vector<std::uint32_t>{d.source, a0});

    auto e = build_m_digraph(g, m);
    e.drop_arc(e.sink, e.source, 2);
    CHECK_FALSE(check_connectivity_and_size(e, 3, 2).strongly_connected);
    CHECK(error_code([&] { stationary_distribution(e); }) == ErrorCode::NotStronglyConnected);
}

TEST_CASE("stationary distribution of a directed 3-cycle")
{
    MDigraph d;
    d.nodes = {{NodeKind::Source}, {NodeKind::Sink}, {NodeKind::Alpha, 0}};
    d.out = {{{1, 1}}, {{2, 1}}, {{0, 1}}};
    const auto pi = stationary_distribution(d);
    for (double p : pi) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("source-to-sink walk reproduces the matching walk")
{
    const auto g = graph_of(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto m = matching_of(3, {0, 1, 2}, {{1, 2}});
    const auto d = build_m_digraph(g, m);
    Rng rng(9);
    double total = 0;
    const int runs = 20000;
    for (int r = 0; r < runs; ++r) {
        const auto seq = simulate_source_to_sink(d, rng);
        REQUIRE(seq.size() % 2 == 0);
        REQUIRE(seq.front() == 0u);
        REQUIRE(seq.back() == 0u);
        total += static_cast<double>(seq.size());
    }
    CHECK(total / runs == doctest::Approx(6.0).epsilon(0.03));
}

TEST_CASE("random covered matchings give balanced strongly connected digraphs")
{
    Rng rng(2024);
    for (int k = 0; k < 40; ++k) {
        auto in = k % 2 ? random_instance(rng, 24, 0, true, 4) : random_instance(rng, 20, 40);
        const auto d = build_m_digraph(in.g, in.m);
        INFO("instance " << k);
        CHECK(check_balanced(d).balanced);
        const auto c = check_connectivity_and_size(d, in.v_delta.size(), in.g.max_degree());
        CHECK(c.strongly_connected);
        CHECK(c.bound_ok);
        CHECK(max_stationary_error(d) <= 1e-9);
    }
}
