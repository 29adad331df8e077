#include "fairedge/treap.hpp"

#include <string>
#include <utility>

#include "fairedge/error.hpp"

namespace fairedge {

ImplicitTreap::ImplicitTreap(std::uint64_t priority_seed) : prio_rng_(priority_seed) {}

void ImplicitTreap::clear()
{
    nodes_.clear();
    free_.clear();
    handle_.clear();
    root_ = -1;
}

std::int32_t ImplicitTreap::make_node(Payload x)
{
    Node n{x, prio_rng_.next_u64(), 1, -1, -1, -1, false};
    std::int32_t id;
    if (!free_.empty()) {
        id = free_.back();
        free_.pop_back();
        nodes_[id] = n;
    } else {
        id = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(n);
    }
    handle_[x] = id;
    return id;
}

void ImplicitTreap::free_node(std::int32_t t)
{
    handle_.erase(nodes_[t].value);
    free_.push_back(t);
}

void ImplicitTreap::push(std::int32_t t) noexcept
{
    Node& n = nodes_[t];
    if (!n.reversed) return;
    std::swap(n.left, n.right);
    if (n.left >= 0) nodes_[n.left].reversed ^= true;
    if (n.right >= 0) nodes_[n.right].reversed ^= true;
    n.reversed = false;
}

void ImplicitTreap::pull(std::int32_t t) noexcept
{
    Node& n = nodes_[t];
    n.size = 1 + sz(n.left) + sz(n.right);
    if (n.left >= 0) nodes_[n.left].parent = t;
    if (n.right >= 0) nodes_[n.right].parent = t;
}

// a receives the first k elements of t, b the rest.
void ImplicitTreap::split(std::int32_t t, std::size_t k, std::int32_t& a, std::int32_t& b)
{
    if (t < 0) {
        a = b = -1;
        return;
    }
    push(t);
    const std::size_t left_size = sz(nodes_[t].left);
    if (k <= left_size) {
        std::int32_t rest;
        split(nodes_[t].left, k, a, rest);
        nodes_[t].left = rest;
        pull(t);
        b = t;
    } else {
        std::int32_t rest;
        split(nodes_[t].right, k - left_size - 1, rest, b);
        nodes_[t].right = rest;
        pull(t);
        a = t;
    }
    if (a >= 0) nodes_[a].parent = -1;
    if (b >= 0) nodes_[b].parent = -1;
}

std::int32_t ImplicitTreap::merge(std::int32_t a, std::int32_t b)
{
    if (a < 0) return b;
    if (b < 0) return a;
    if (nodes_[a].priority > nodes_[b].priority) {
        push(a);
        nodes_[a].right = merge(nodes_[a].right, b);
        pull(a);
        nodes_[a].parent = -1;
        return a;
    }
    push(b);
    nodes_[b].left = merge(a, nodes_[b].left);
    pull(b);
    nodes_[b].parent = -1;
    return b;
}

// Linear-time Cartesian-tree construction over an already ordered sequence.
std::int32_t ImplicitTreap::build(std::span<const Payload> s)
{
    auto& stack = scratch_;
    stack.clear();
    for (Payload x : s) {
        const std::int32_t node = make_node(x);
        std::int32_t last = -1;
        while (!stack.empty() && nodes_[stack.back()].priority < nodes_[node].priority) {
            last = stack.back();
            stack.pop_back();
            pull(last);
        }
        nodes_[node].left = last;
        if (!stack.empty()) nodes_[stack.back()].right = node;
        stack.push_back(node);
    }
    std::int32_t top = -1;
    while (!stack.empty()) {
        top = stack.back();
        stack.pop_back();
        pull(top);
    }
    if (top >= 0) nodes_[top].parent = -1;
    return top;
}

void ImplicitTreap::push_path_to(std::int32_t t)
{
    auto& path = scratch_;
    path.clear();
    for (std::int32_t cur = t; cur >= 0; cur = nodes_[cur].parent) path.push_back(cur);
    for (auto it = path.rbegin(); it != path.rend(); ++it) push(*it);
}

std::size_t ImplicitTreap::index_of(std::int32_t t) const
{
    std::size_t idx = sz(nodes_[t].left) + 1;
    for (std::int32_t cur = t, p = nodes_[t].parent; p >= 0; cur = p, p = nodes_[p].parent)
        if (nodes_[p].right == cur) idx += sz(nodes_[p].left) + 1;
    return idx;
}

void ImplicitTreap::collect(std::int32_t t, std::vector<Payload>& out)
{
    if (t < 0) return;
    push(t);
    collect(nodes_[t].left, out);
    out.push_back(nodes_[t].value);
    const std::int32_t right = nodes_[t].right;
    free_node(t);
    collect(right, out);
}

void ImplicitTreap::check_range(std::size_t i, std::size_t j) const
{
    if (i < 1 || i > j || j > size())
        throw Error(ErrorCode::RangeInvalid,
                    "[" + std::to_string(i) + ", " + std::to_string(j) + "] with size " + std::to_string(size()));
}

void ImplicitTreap::insert(Payload x, std::size_t i)
{
    if (i < 1 || i > size() + 1)
        throw Error(ErrorCode::PositionOutOfRange, std::to_string(i) + " with size " + std::to_string(size()));
    if (contains(x)) throw Error(ErrorCode::DuplicatePayload, std::to_string(x));
    std::int32_t a, b;
    split(root_, i - 1, a, b);
    root_ = merge(merge(a, make_node(x)), b);
}

std::optional<std::size_t> ImplicitTreap::search(Payload x)
{
    auto it = handle_.find(x);
    if (it == handle_.end()) return std::nullopt;
    push_path_to(it->second);
    return index_of(it->second);
}

std::vector<ImplicitTreap::Payload> ImplicitTreap::delete_range(std::size_t i, std::size_t j)
{
    std::vector<Payload> removed;
    delete_range(i, j, removed);
    return removed;
}

void ImplicitTreap::delete_range(std::size_t i, std::size_t j, std::vector<Payload>& removed)
{
    check_range(i, j);
    std::int32_t ab, c, a, b;
    split(root_, j, ab, c);
    split(ab, i - 1, a, b);
    removed.reserve(removed.size() + (j - i + 1));
    collect(b, removed);
    root_ = merge(a, c);
}

void ImplicitTreap::reverse_range(std::size_t i, std::size_t j)
{
    check_range(i, j);
    if (i == j) return;
    std::int32_t ab, c, a, b;
    split(root_, j, ab, c);
    split(ab, i - 1, a, b);
    nodes_[b].reversed ^= true;
    root_ = merge(merge(a, b), c);
}

void ImplicitTreap::append(std::span<const Payload> s)
{
    if (s.empty()) return;
    absl::flat_hash_map<Payload, bool> seen;
    if (s.size() > 1) seen.reserve(s.size());
    for (Payload x : s) {
        if (contains(x) || (s.size() > 1 && !seen.emplace(x, true).second))
            throw Error(ErrorCode::DuplicatePayload, std::to_string(x));
    }
    root_ = merge(root_, build(s));
}

std::optional<ImplicitTreap::Payload> ImplicitTreap::PredIterator::next()
{
    if (cur_ < 0) return std::nullopt;
    auto& nodes = tree_->nodes_;
    std::int32_t c = nodes[cur_].left;
    if (c >= 0) {
        tree_->push(c);
        while (nodes[c].right >= 0) {
            c = nodes[c].right;
            tree_->push(c);
        }
        cur_ = c;
        return nodes[c].value;
    }
    c = cur_;
    while (nodes[c].parent >= 0 && nodes[nodes[c].parent].left == c) c = nodes[c].parent;
    cur_ = nodes[c].parent;
    if (cur_ < 0) return std::nullopt;
    return nodes[cur_].value;
}

ImplicitTreap::PredIterator ImplicitTreap::pred_iter(Payload x)
{
    auto it = handle_.find(x);
    if (it == handle_.end()) throw Error(ErrorCode::PayloadAbsent, std::to_string(x));
    push_path_to(it->second);
    return PredIterator(this, it->second);
}

ImplicitTreap::Payload ImplicitTreap::at(std::size_t i)
{
    if (i < 1 || i > size())
        throw Error(ErrorCode::PositionOutOfRange, std::to_string(i) + " with size " + std::to_string(size()));
    std::int32_t t = root_;
    std::size_t k = i;
    for (;;) {
        push(t);
        const std::size_t left_size = sz(nodes_[t].left);
        if (k == left_size + 1) return nodes_[t].value;
        if (k <= left_size) {
            t = nodes_[t].left;
        } else {
            k -= left_size + 1;
            t = nodes_[t].right;
        }
    }
}

std::vector<ImplicitTreap::Payload> ImplicitTreap::to_vector() const
{
    std::vector<Payload> out;
    out.reserve(size());
    // Iterative in-order walk that resolves pending reversals on the fly.
    struct Frame {
        std::int32_t node;
        bool flip;
        bool expanded;
    };
    std::vector<Frame> stack;
    if (root_ >= 0) stack.push_back({root_, false, false});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.expanded) {
            out.push_back(nodes_[f.node].value);
            continue;
        }
        const Node& n = nodes_[f.node];
        const bool flip = f.flip ^ n.reversed;
        const std::int32_t first = flip ? n.right : n.left;
        const std::int32_t second = flip ? n.left : n.right;
        if (second >= 0) stack.push_back({second, flip, false});
        stack.push_back({f.node, flip, true});
        if (first >= 0) stack.push_back({first, flip, false});
    }
    return out;
}

bool ImplicitTreap::check_invariants() const
{
    if (root_ >= 0 && nodes_[root_].parent != -1) return false;
    std::size_t visited = 0;
    std::vector<std::int32_t> stack;
    if (root_ >= 0) stack.push_back(root_);
    while (!stack.empty()) {
        const std::int32_t t = stack.back();
        stack.pop_back();
        ++visited;
        const Node& n = nodes_[t];
        if (n.size != 1 + sz(n.left) + sz(n.right)) return false;
        auto it = handle_.find(n.value);
        if (it == handle_.end() || it->second != t) return false;
        for (std::int32_t c : {n.left, n.right}) {
            if (c < 0) continue;
            if (nodes_[c].parent != t || nodes_[c].priority > n.priority) return false;
            stack.push_back(c);
        }
    }
    return visited == size() && handle_.size() == visited;
}

} // namespace fairedge
