#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "fairedge/coloring.hpp"
#include "fairedge/error.hpp"

namespace fairedge {

namespace {

// Misra-Gries extension with scratch space reused across edges.
class Extender {
public:
    Extender(const Graph& g, Coloring& c, std::size_t palette)
        : g_(g), c_(c), k_(static_cast<Color>(palette)), mark_(g.num_vertices(), 0)
    {
    }

    void extend(Vertex u, Vertex v)
    {
        for (Color col = 0; col < k_; ++col) {
            if (c_.is_free(u, col) && c_.is_free(v, col)) {
                c_.set(u, v, col);
                return;
            }
        }
        build_fan(u, v);
        const Color a = c_.first_free(u, k_);
        const Color d = c_.first_free(fan_.back(), k_);
        if (a == kNoColor || d == kNoColor) throw Error(ErrorCode::PaletteTooSmall, "no free color in palette");
        if (a != d) flip_chain(u, a, d);

        // The first fan prefix that is still a fan and ends at a vertex missing d.
        std::size_t w = fan_.size();
        for (std::size_t i = 0; i < fan_.size(); ++i) {
            if (i > 0 && !c_.is_free(fan_[i - 1], c_.color_of(u, fan_[i]))) break;
            if (c_.is_free(fan_[i], d)) {
                w = i;
                break;
            }
        }
        if (w == fan_.size())
            throw Error(ErrorCode::InvariantViolation, "no fan rotation point for (" + std::to_string(u) + ", " +
                                                           std::to_string(v) + ")");
        for (std::size_t j = 0; j < w; ++j) {
            const Color cj = c_.color_of(u, fan_[j + 1]);
            c_.clear(u, fan_[j + 1]);
            c_.set(u, fan_[j], cj);
        }
        c_.set(u, fan_[w], d);
    }

private:
    // Maximal fan at u starting with v: each next vertex's edge to u carries
    // a color missing at the previous fan vertex.
    void build_fan(Vertex u, Vertex v)
    {
        ++stamp_;
        fan_.assign(1, v);
        mark_[v] = stamp_;
        for (bool grown = true; grown;) {
            grown = false;
            const Vertex last = fan_.back();
            for (Color col = 0; col < k_; ++col) {
                if (!c_.is_free(last, col)) continue;
                const Vertex w = c_.via(u, col);
                if (w == kNoVertex || mark_[w] == stamp_) continue;
                fan_.push_back(w);
                mark_[w] = stamp_;
                grown = true;
                break;
            }
        }
    }

    // Swap colors a and d along the alternating path leaving u by its d-edge.
    void flip_chain(Vertex u, Color a, Color d)
    {
        chain_.clear();
        Vertex x = u;
        Color want = d;
        for (Vertex y; (y = c_.via(x, want)) != kNoVertex;) {
            chain_.push_back({x, y});
            x = y;
            want = want == d ? a : d;
        }
        for (const auto& [p, q] : chain_) c_.clear(p, q);
        want = a;
        for (const auto& [p, q] : chain_) {
            c_.set(p, q, want);
            want = want == d ? a : d;
        }
    }

    const Graph& g_;
    Coloring& c_;
    Color k_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<Vertex> fan_;
    std::vector<std::pair<Vertex, Vertex>> chain_;
};

} // namespace

void vizing_extend(const Graph& g, Coloring& coloring, Edge e, std::size_t palette)
{
    const std::size_t delta = g.max_degree();
    if (palette < delta + 1)
        throw Error(ErrorCode::PaletteTooSmall,
                    "palette " + std::to_string(palette) + " with max degree " + std::to_string(delta));
    if (e.v >= g.num_vertices() || !g.has_edge(e.u, e.v))
        throw Error(ErrorCode::MissingEdge, "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    if (coloring.is_colored(e.u, e.v)) return;
    Extender(g, coloring, palette).extend(e.u, e.v);
}

Coloring classical_fallback(const Graph& g)
{
    Coloring c(g.num_vertices());
    if (g.num_edges() == 0) return c;
    Extender ext(g, c, g.max_degree() + 1);
    for (const Edge& e : g.edges()) ext.extend(e.u, e.v);
    return c;
}

ColoringRun vizing_coloring(const Graph& g, const ColoringOptions& opt, std::uint64_t seed)
{
    ColoringRun run = near_vizing_coloring(g, opt, seed);
    const std::size_t keep = run.delta + 1;
    const auto entries = run.coloring.entries();

    std::vector<std::size_t> class_size(run.coloring.palette_size(), 0);
    for (const auto& en : entries) ++class_size[en.c];
    std::vector<Color> order(class_size.size());
    std::iota(order.begin(), order.end(), Color{0});
    std::stable_sort(order.begin(), order.end(), [&](Color a, Color b) { return class_size[a] > class_size[b]; });
    if (order.size() > keep) order.resize(keep);
    std::sort(order.begin(), order.end());
    std::vector<Color> remap(class_size.size(), kNoColor);
    for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<Color>(i);

    Coloring c(g.num_vertices());
    std::vector<Edge> rest;
    for (const auto& en : entries) {
        if (remap[en.c] != kNoColor)
            c.set(en.e.u, en.e.v, remap[en.c]);
        else
            rest.push_back(en.e);
    }
    if (!rest.empty()) {
        Extender ext(g, c, keep);
        for (const Edge& e : rest) ext.extend(e.u, e.v);
    }
    run.coloring = std::move(c);
    run.palette = run.coloring.palette_size();
    return run;
}

} // namespace fairedge
