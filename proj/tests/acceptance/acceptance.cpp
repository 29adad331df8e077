// Acceptance gate: one PASS/FAIL line per criterion. Pass a list of criterion
// numbers to run a subset, e.g. `acceptance 3 8`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "fairedge/altpath.hpp"
#include "fairedge/coloring.hpp"
#include "fairedge/error.hpp"
#include "fairedge/fairmatch.hpp"
#include "fairedge/harness.hpp"
#include "fairedge/mdigraph.hpp"
#include "fairedge/treap.hpp"
#include "fairedge/walk.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace fairedge;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Corpus shared by criteria 1 and 2: 1000 graphs over five families, n <= 5000.
struct CorpusGraph {
    std::string family;
    Graph g;
};

std::vector<CorpusGraph> build_corpus()
{
    std::vector<CorpusGraph> out;
    Rng rng(derive_seed(1, Stream::GraphGen));
    auto pick = [&](std::size_t lo, std::size_t hi) { return lo + rng.index(hi - lo + 1); };
    for (int i = 0; i < 1000; ++i) {
        // Most graphs are small; every tenth one is large.
        const std::size_t cap = i % 10 == 0 ? 5000 : 300;
        switch (i % 5) {
        case 0: {
            const std::size_t n = pick(8, cap);
            std::size_t d = pick(1, std::min<std::size_t>(24, n - 1));
            if (n * d % 2) --d;
            if (d == 0) d = 2;
            out.push_back({"regular", gen_regular(n, d, rng)});
            break;
        }
        case 1: {
            const std::size_t n = pick(2, cap);
            const std::size_t m = pick(0, std::min(n * (n - 1) / 2, 8 * n));
            out.push_back({"gnm", gen_gnm(n, m, rng)});
            break;
        }
        case 2: out.push_back({"star", gen_star(pick(1, std::min<std::size_t>(cap, 400)))}); break;
        case 3: out.push_back({"clique", gen_clique(pick(2, 40))}); break;
        default: out.push_back({"cycle", gen_cycle(pick(3, cap))}); break;
        }
    }
    return out;
}

const std::vector<CorpusGraph>& corpus()
{
    static const std::vector<CorpusGraph> c = build_corpus();
    return c;
}

Outcome properness()
{
    Outcome o;
    std::size_t runs = 0, bad = 0;
    std::string first_bad;
    std::uint64_t seed = 0;
    auto check = [&](const CorpusGraph& cg, const Coloring& c, const char* algo) {
        ++runs;
        const auto r = verify_proper(cg.g, c);
        if (r.proper) return;
        if (!bad++) first_bad = fmt("%s on %s n=%zu: %s", algo, cg.family.c_str(), cg.g.num_vertices(), r.detail.c_str());
    };
    for (const auto& cg : corpus()) {
        ++seed;
        check(cg, near_vizing_coloring(cg.g, {}, seed).coloring, "near-vizing");
        check(cg, vizing_coloring(cg.g, {}, seed).coloring, "vizing");
        check(cg, classical_fallback(cg.g), "classical");
        const double n = static_cast<double>(cg.g.num_vertices());
        const double delta = static_cast<double>(cg.g.max_degree());
        if (delta > 0 && 0.5 >= 2.0 * std::log(n) / delta) check(cg, eps_coloring(cg.g, {0.5}, {}, seed).coloring, "eps");
    }
    o.pass = bad == 0;
    o.summary = fmt("%zu colorings of %zu graphs, %zu improper", runs, corpus().size(), bad);
    if (bad) o.summary += "; first: " + first_bad;
    return o;
}

Outcome vizing_bound()
{
    Outcome o;
    std::size_t over = 0;
    std::uint64_t seed = 0;
    for (const auto& cg : corpus()) {
        ++seed;
        const std::size_t limit = cg.g.max_degree() + 1;
        const auto v = vizing_coloring(cg.g, {}, seed);
        const auto c = classical_fallback(cg.g);
        if (!verify_proper(cg.g, v.coloring).proper || v.coloring.palette_size() > limit) ++over;
        if (!verify_proper(cg.g, c).proper || c.palette_size() > limit) ++over;
    }
    const auto p = gen_petersen();
    const bool no_three = !oracle::edge_colorable(p.num_vertices(), p.edges(), 3);
    std::size_t petersen_palette = 0;
    bool petersen_ok = no_three;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto run = vizing_coloring(p, {}, s);
        petersen_palette = std::max(petersen_palette, run.coloring.palette_size());
        petersen_ok = petersen_ok && run.coloring.palette_size() == 4 && verify_proper(p, run.coloring).proper;
    }
    petersen_ok = petersen_ok && classical_fallback(p).palette_size() == 4;
    o.pass = over == 0 && petersen_ok;
    o.summary = fmt("%zu over Delta+1 on %zu graphs; Petersen uses %zu colors, 3-coloring %s", over, corpus().size(),
                    petersen_palette, no_three ? "impossible (exhaustive)" : "FOUND");
    return o;
}

Outcome fairness()
{
    Outcome o;
    for (std::size_t delta : {8, 16, 32}) {
        Rng grng(derive_seed(3, Stream::GraphGen, delta));
        const auto g = gen_regular(64 * delta, delta, grng);
        const auto t = fairness_trials(g, 2000, {}, derive_seed(3, Stream::Trial, delta));
        std::size_t failing = 0;
        for (const auto& r : t.rows) failing += !r.pass;
        o.pass = o.pass && t.all_pass;
        o.summary += fmt("%sDelta=%zu: max freq %.4f vs bound %.4f (+3SE %.4f), %zu/%zu over", o.summary.empty() ? "" : "; ",
                         delta, t.max_frequency, t.bound, t.rows.empty() ? 0.0 : t.rows[0].limit, failing, t.rows.size());
    }
    return o;
}

Outcome mdigraph_structure()
{
    Outcome o;
    Rng rng(derive_seed(4, Stream::GraphGen));
    std::size_t bad_balance = 0, bad_sc = 0, bad_size = 0, bad_pi = 0;
    double worst = 0;
    for (int k = 0; k < 200; ++k) {
        Instance in;
        switch (k % 4) {
        case 0: in = random_instance(rng, 2 * (10 + rng.index(30)), 0, true, 3 + rng.index(6)); break;
        case 1: in = random_instance(rng, 30 + rng.index(100), 0, true, 8); break;
        default: {
            const std::size_t n = 10 + rng.index(120);
            in = random_instance(rng, n, n + rng.index(3 * n));
        }
        }
        const auto d = build_m_digraph(in.g, in.m);
        bad_balance += !check_balanced(d).balanced;
        const auto c = check_connectivity_and_size(d, in.v_delta.size(), in.g.max_degree());
        bad_sc += !c.strongly_connected;
        bad_size += !c.bound_ok;
        if (!c.strongly_connected) continue;
        const auto pi = stationary_distribution(d);
        const double total = static_cast<double>(d.edge_count());
        double err = 0;
        for (std::uint32_t v = 0; v < d.num_nodes(); ++v)
            err = std::max(err, std::abs(pi[v] - static_cast<double>(d.out_degree(v)) / total));
        worst = std::max(worst, err);
        bad_pi += err > 1e-9;
    }
    o.pass = bad_balance + bad_sc + bad_size + bad_pi == 0;
    o.summary = fmt("200 instances: unbalanced %zu, not strongly connected %zu, over 7 n_D D %zu, stationary off %zu "
                    "(max error %.2e)",
                    bad_balance, bad_sc, bad_size, bad_pi, worst);
    return o;
}

Outcome walk_statistics()
{
    Outcome o;
    Rng rng(derive_seed(5, Stream::GraphGen));
    std::size_t len_fail = 0, chi_fail = 0;
    double worst_ratio = 0;
    for (int k = 0; k < 20; ++k) {
        const double skip = k < 10 ? 0.0 : 0.2;
        const auto in = k % 2 ? random_instance(rng, 100, 0, true, 6 + k % 5, skip) : random_instance(rng, 80, 300, false, 0, skip);
        const double n_delta = static_cast<double>(in.v_delta.size());
        const double u = static_cast<double>(in.m.unmatch_delta());
        const auto free = in.m.unmatched_delta();
        std::vector<std::size_t> slot(in.g.num_vertices(), 0);
        for (std::size_t i = 0; i < free.size(); ++i) slot[free[i]] = i;
        std::vector<std::size_t> starts(free.size(), 0);
        const int walks = 5000;
        double sum = 0, sq = 0;
        Rng wrng(derive_seed(5, Stream::Walk, static_cast<std::uint64_t>(k)));
        for (int w = 0; w < walks; ++w) {
            const auto steps = materialize_walk(in.g, in.m, wrng);
            const double len = static_cast<double>(steps.size());
            sum += len;
            sq += len * len;
            ++starts[slot[steps.front().vertex]];
        }
        const double mean = sum / walks;
        const double sd = std::sqrt(std::max(0.0, sq / walks - mean * mean));
        const double bound = 7 * n_delta / u;
        const double limit = bound + 3 * sd / std::sqrt(static_cast<double>(walks));
        len_fail += mean > limit;
        worst_ratio = std::max(worst_ratio, mean / bound);
        chi_fail += !oracle::uniform_chi_square(starts, 0.001).pass;
    }
    o.pass = len_fail == 0 && chi_fail == 0;
    o.summary = fmt("20 instances x 5000 walks: mean length over bound %zu (max mean/bound %.3f), chi-square failures %zu",
                    len_fail, worst_ratio, chi_fail);
    return o;
}

Outcome altpath_invariants()
{
    Outcome o;
    Rng rng(derive_seed(6, Stream::GraphGen));
    std::size_t violations = 0, v1_unmatched = 0, grew = 0, trials = 0;
    std::string first;
    AltPathOptions opt;
    opt.check_invariants = true;
    while (trials < 10000) {
        auto in = trials % 3 ? random_instance(rng, 2 * (20 + rng.index(20)), 0, true, 3 + rng.index(8))
                             : random_instance(rng, 60, 150 + rng.index(150));
        const double delta = static_cast<double>(in.g.max_degree());
        LabeledPath path(in.g.num_vertices(), rng.next_u64());
        // A few successive rounds on the same instance, as FairMatching does.
        for (int r = 0; r < 5 && in.m.unmatch_delta() > 0 && trials < 10000; ++r, ++trials) {
            const auto before = in.m.unmatch_delta();
            MatchingWalk walk(in.g, in.m, rng);
            AltPathOutcome out;
            try {
                out = alt_path(in.g, in.m, walk, rng, 1.0 / (delta * delta), path, opt);
                apply_path(in.m, out.path);
            } catch (const Error& e) {
                if (!violations++) first = e.what();
                break;
            }
            v1_unmatched += !in.m.is_matched(out.path.front());
            grew += in.m.unmatch_delta() > before;
            if (!in.m.check_invariants()) {
                if (!violations++) first = "matching bookkeeping broken";
                break;
            }
        }
    }
    o.pass = violations + v1_unmatched + grew == 0;
    o.summary = fmt("%zu trials: invariant violations %zu, v1 unmatched %zu, unmatch_D increased %zu", trials, violations,
                    v1_unmatched, grew);
    if (violations) o.summary += "; first: " + first;
    return o;
}

Outcome treap_equivalence()
{
    Outcome o;
    std::size_t mismatches = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(derive_seed(seed, Stream::Trial));
        ImplicitTreap t(derive_seed(seed, Stream::TreapPriority));
        oracle::ArrayModel a;
        std::uint32_t next = 0;
        for (int op = 0; op < 10000; ++op) {
            const std::size_t len = a.a.size();
            const auto kind = len < 2 ? 0 : rng.index(6);
            std::size_t i = len ? 1 + rng.index(len) : 1, j = len ? 1 + rng.index(len) : 1;
            if (i > j) std::swap(i, j);
            switch (kind) {
            case 0: {
                const std::size_t at = 1 + rng.index(len + 1);
                t.insert(next, at);
                a.insert(next, at);
                ++next;
                break;
            }
            case 1: {
                const auto x = static_cast<std::uint32_t>(rng.index(next + 1));
                mismatches += t.search(x) != a.search(x);
                break;
            }
            case 2: mismatches += t.delete_range(i, j) != a.erase(i, j); break;
            case 3:
                t.reverse_range(i, j);
                a.reverse(i, j);
                break;
            case 4: {
                std::vector<std::uint32_t> s;
                for (auto k = rng.index(5); k > 0; --k) s.push_back(next++);
                t.append(s);
                a.a.insert(a.a.end(), s.begin(), s.end());
                break;
            }
            default: {
                const auto x = a.a[rng.index(len)];
                std::vector<std::uint32_t> got;
                auto it = t.pred_iter(x);
                while (auto y = it.next()) got.push_back(*y);
                mismatches += got != a.preds(x);
            }
            }
            mismatches += t.size() != a.a.size();
        }
        mismatches += t.to_vector() != a.a;
        mismatches += !t.check_invariants();
    }
    o.pass = mismatches == 0;
    o.summary = fmt("20 seeds x 10000 operations: %zu mismatches", mismatches);
    return o;
}

Outcome near_vizing_palette()
{
    Outcome o;
    for (std::size_t delta : {16, 64}) {
        std::size_t final_over = 0, pre_within = 0, fallbacks = 0, max_pre = 0, bound = 0;
        for (std::uint64_t s = 0; s < 50; ++s) {
            Rng grng(derive_seed(s, Stream::GraphGen, delta));
            const auto g = gen_regular(4096, delta, grng);
            const auto run = near_vizing_coloring(g, {}, derive_seed(s, Stream::Trial, delta));
            bound = run.palette_bound;
            final_over += run.coloring.palette_size() > bound || !verify_proper(g, run.coloring).proper;
            pre_within += run.pre_fallback_palette <= bound;
            fallbacks += run.fallback;
            max_pre = std::max(max_pre, run.pre_fallback_palette);
        }
        o.pass = o.pass && final_over == 0 && pre_within >= 49;
        o.summary += fmt("Delta=%zu: bound %zu, pre-fallback within %zu/50 (max %zu), final over %zu; ", delta, bound,
                         pre_within, max_pre, final_over);
    }
    std::vector<std::size_t> sizes;
    for (std::size_t n = 1024; n <= 16384; n *= 2) sizes.push_back(n);
    const auto rows = bench_scaling(16, sizes, {}, 8, 5);
    double lo = rows.front().time_ratio, hi = lo;
    for (const auto& r : rows) {
        lo = std::min(lo, r.time_ratio);
        hi = std::max(hi, r.time_ratio);
    }
    const double spread = hi / lo;
    o.pass = o.pass && spread < 3.0;
    o.summary += fmt("time/(m ln D) spread %.2fx over n=1024..16384", spread);
    return o;
}

Outcome eps_bound()
{
    Outcome o;
    for (double eps : {0.25, 0.5}) {
        std::size_t over = 0, fallbacks = 0, max_palette = 0, max_pre = 0, bound = 0;
        for (std::uint64_t s = 0; s < 20; ++s) {
            Rng grng(derive_seed(s, Stream::GraphGen, 9));
            const auto g = gen_regular(1024, 64, grng);
            const auto run = eps_coloring(g, {eps}, {}, derive_seed(s, Stream::Trial, 9));
            bound = run.palette_bound;
            over += run.coloring.palette_size() > bound || !verify_proper(g, run.coloring).proper;
            fallbacks += run.fallback;
            max_palette = std::max(max_palette, run.coloring.palette_size());
            max_pre = std::max(max_pre, run.pre_fallback_palette);
        }
        o.pass = o.pass && over == 0 && fallbacks <= 2;
        o.summary += fmt("%seps=%.2f: bound %zu, max palette %zu (pre-fallback %zu), over %zu, fallbacks %zu/20",
                         o.summary.empty() ? "" : "; ", eps, bound, max_palette, max_pre, over, fallbacks);
    }
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> all{
        {1, "properness", 120, properness},
        {2, "vizing bound", 300, vizing_bound},
        {3, "fairness", 600, fairness},
        {4, "m-digraph structure", 120, mdigraph_structure},
        {5, "walk statistics", 180, walk_statistics},
        {6, "altpath invariants", 180, altpath_invariants},
        {7, "treap oracle", 30, treap_equivalence},
        {8, "near-vizing palette", 900, near_vizing_palette},
        {9, "(1+eps) bound", 300, eps_bound},
    };
    std::vector<int> pick;
    for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!pick.empty() && std::find(pick.begin(), pick.end(), c.id) == pick.end()) continue;
        const auto t0 = Clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.summary = std::string("exception: ") + e.what();
        }
        const double secs = seconds_since(t0);
        const bool in_time = secs < c.limit_seconds;
        const bool pass = out.pass && in_time;
        failed += !pass;
        std::printf("criterion %d (%s): %s  %s  [%.1fs, limit %.0fs%s]\n", c.id, c.name, pass ? "PASS" : "FAIL",
                    out.summary.c_str(), secs, c.limit_seconds, in_time ? "" : ", TOO SLOW");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
