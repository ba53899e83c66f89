#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autocomplete/phrase.hpp"

namespace autocomplete {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

/// Inclusive range [lo, hi] of sorted entry positions.
struct PrefixRange {
    std::size_t lo = 0;
    std::size_t hi = 0;

    std::size_t size() const { return hi - lo + 1; }
    friend bool operator==(const PrefixRange&, const PrefixRange&) = default;
};

struct RangeMax {
    std::size_t argmax = kNoIndex;
    Weight weight = 0;

    friend bool operator==(const RangeMax&, const RangeMax&) = default;
};

/// Segment tree node. A node whose argmax is kNoIndex covers only padding
/// leaves and loses to every real entry.
struct TreeNode {
    Weight max_weight = 0;
    std::size_t argmax = kNoIndex;

    bool empty() const { return argmax == kNoIndex; }
};

/// Heap element of the top-k extraction: an inclusive range together with
/// its heaviest entry (lowest index on ties).
struct RangeCandidate {
    std::size_t lo = 0;
    std::size_t hi = 0;
    Weight max_weight = 0;
    std::size_t argmax = 0;

    friend bool operator==(const RangeCandidate&, const RangeCandidate&) = default;
};

/// Optional instrumentation for a single top-k query.
struct QueryProbe {
    std::size_t node_visits = 0;
    std::size_t range_max_calls = 0;
    std::size_t heap_pops = 0;
    // When set, the heap contents are copied after every split, in heap order.
    bool record_heap = false;
    std::vector<std::vector<RangeCandidate>> heap_after_split;
};

/// Immutable sorted phrase array plus a max-weight segment tree over it.
///
/// The tree is an implicit array of 2 * capacity nodes where capacity is n
/// rounded up to a power of two; node 1 is the root and leaf i lives at
/// capacity + i. Slot 0 is unused.
class Index {
public:
    Index() = default;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::span<const PhraseEntry> entries() const { return entries_; }
    const PhraseEntry& entry(std::size_t i) const { return entries_.at(i); }

    std::span<const TreeNode> tree() const { return tree_; }
    std::size_t tree_node_count() const { return tree_.size(); }
    std::size_t leaf_offset() const { return capacity_; }

    /// Positions of all entries having q as a byte prefix, or nullopt.
    std::optional<PrefixRange> prefix_bounds(std::string_view q) const;

    /// Heaviest entry in [lo, hi]; the lowest index wins ties. Throws
    /// std::out_of_range when the range is inverted or exceeds size().
    RangeMax range_max(std::size_t lo, std::size_t hi,
                       std::size_t* node_visits = nullptr) const;

private:
    friend Index build_index(std::vector<PhraseEntry> entries);
    friend Index build_index_serial(std::vector<PhraseEntry> entries);

    std::vector<PhraseEntry> entries_;
    std::vector<TreeNode> tree_;
    std::size_t capacity_ = 0;
};

/// Sorts the entries and builds the tree. Tree levels are filled in parallel
/// when OpenMP is available. Throws std::invalid_argument on empty or
/// duplicate texts.
Index build_index(std::vector<PhraseEntry> entries);

/// Single-threaded reference build; produces a tree identical to build_index.
Index build_index_serial(std::vector<PhraseEntry> entries);

/// Streams the entries of a prefix range in (weight desc, index asc) order
/// using a max-heap of ranges. A popped range is split lazily, on the next
/// call to next() or peek_weight(), so the final pop costs no descents.
class TopKCursor {
public:
    TopKCursor(const Index& index, std::optional<PrefixRange> bounds,
               QueryProbe* probe = nullptr);

    /// Index of the next heaviest entry, or nullopt when exhausted.
    std::optional<std::size_t> next();

    /// Weight of the entry next() would return.
    std::optional<Weight> peek_weight();

    std::span<const RangeCandidate> heap() const { return heap_; }

private:
    void push(std::size_t lo, std::size_t hi);
    void split_pending();

    const Index* index_;
    QueryProbe* probe_;
    std::vector<RangeCandidate> heap_;
    std::optional<RangeCandidate> pending_;
};

/// The k heaviest entries having q as a prefix, heaviest first; equal weights
/// come out in ascending text order.
std::vector<Suggestion> top_k(const Index& index, std::string_view q,
                              std::size_t k, QueryProbe* probe = nullptr);

/// Answers many independent queries against one index. Queries are spread
/// over `threads` OpenMP threads (0 = runtime default).
std::vector<std::vector<Suggestion>> top_k_batch(const Index& index,
                                                 std::span<const std::string> queries,
                                                 std::size_t k, int threads = 0);

std::vector<std::vector<Suggestion>> top_k_batch_serial(
    const Index& index, std::span<const std::string> queries, std::size_t k);

}  // namespace autocomplete
