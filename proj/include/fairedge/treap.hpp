#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "fairedge/rng.hpp"

namespace fairedge {

/// Implicit treap: a randomized balanced tree that represents an array by
/// in-order position rather than by key. Supports positional insert, range
/// delete, lazy range reversal, bulk append, by-value index lookup and a lazy
/// backward iterator. All positions are 1-based.
///
/// Payloads are unique (they are vertices of a simple path). A payload to node
/// table gives by-value lookup without storing explicit indices.
class ImplicitTreap {
public:
    using Payload = std::uint32_t;

    /// Priorities come from their own stream so tree shape never perturbs
    /// algorithmic randomness elsewhere.
    explicit ImplicitTreap(std::uint64_t priority_seed = 0);

    std::size_t size() const noexcept { return root_ < 0 ? 0 : nodes_[root_].size; }
    bool empty() const noexcept { return root_ < 0; }
    bool contains(Payload x) const { return handle_.contains(x); }
    void clear();

    /// Throws PositionOutOfRange (unless 1 <= i <= size+1) or DuplicatePayload.
    void insert(Payload x, std::size_t i);

    /// 1-based index of x under the current order.
    std::optional<std::size_t> search(Payload x);

    /// Removes T[i..j] and returns the removed payloads in order. Throws RangeInvalid.
    std::vector<Payload> delete_range(std::size_t i, std::size_t j);
    /// Same, appending the removed payloads to `removed`.
    void delete_range(std::size_t i, std::size_t j, std::vector<Payload>& removed);

    /// Reverses T[i..j]. Throws RangeInvalid.
    void reverse_range(std::size_t i, std::size_t j);

    /// Concatenates s at the tail in O(|s| + log size) expected time.
    /// Throws DuplicatePayload (nothing is modified in that case).
    void append(std::span<const Payload> s);

    /// Backward iterator over the elements strictly before a given payload.
    /// Any mutation of the treap invalidates it.
    class PredIterator {
    public:
        std::optional<Payload> next();

    private:
        friend class ImplicitTreap;
        PredIterator(ImplicitTreap* t, std::int32_t cur) : tree_(t), cur_(cur) {}
        ImplicitTreap* tree_;
        std::int32_t cur_;
    };

    /// Throws PayloadAbsent.
    PredIterator pred_iter(Payload x);

    /// T[i]; throws PositionOutOfRange.
    Payload at(std::size_t i);
    Payload back() { return at(size()); }

    std::vector<Payload> to_vector() const;

    /// Heap order, subtree sizes, parent links and the payload table.
    bool check_invariants() const;

private:
    struct Node {
        Payload value;
        std::uint64_t priority;
        std::uint32_t size;
        std::int32_t left;
        std::int32_t right;
        std::int32_t parent;
        bool reversed;
    };

    std::int32_t make_node(Payload x);
    void free_node(std::int32_t t);
    std::uint32_t sz(std::int32_t t) const noexcept { return t < 0 ? 0 : nodes_[t].size; }
    void push(std::int32_t t) noexcept;
    void pull(std::int32_t t) noexcept;
    void split(std::int32_t t, std::size_t k, std::int32_t& a, std::int32_t& b);
    std::int32_t merge(std::int32_t a, std::int32_t b);
    std::int32_t build(std::span<const Payload> s);
    void push_path_to(std::int32_t t);
    std::size_t index_of(std::int32_t t) const;
    void collect(std::int32_t t, std::vector<Payload>& out);
    void check_range(std::size_t i, std::size_t j) const;

    std::vector<Node> nodes_;
    std::vector<std::int32_t> free_;
    std::vector<std::int32_t> scratch_;
    absl::flat_hash_map<Payload, std::int32_t> handle_;
    std::int32_t root_ = -1;
    Rng prio_rng_;
};

} // namespace fairedge
