#include "autocomplete/index.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace autocomplete {

namespace {

// Heavier wins; the lower index wins ties. Empty nodes never win.
TreeNode combine(const TreeNode& a, const TreeNode& b) {
    if (b.empty()) return a;
    if (a.empty()) return b;
    if (b.max_weight > a.max_weight) return b;
    if (b.max_weight == a.max_weight && b.argmax < a.argmax) return b;
    return a;
}

// Max-heap order on candidates: a sorts below b when b should pop first.
bool heap_less(const RangeCandidate& a, const RangeCandidate& b) {
    if (a.max_weight != b.max_weight) return a.max_weight < b.max_weight;
    return a.argmax > b.argmax;
}

bool has_prefix(std::string_view text, std::string_view q) {
    return text.size() >= q.size() && text.compare(0, q.size(), q) == 0;
}

void sort_and_check(std::vector<PhraseEntry>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const PhraseEntry& a, const PhraseEntry& b) { return a.text < b.text; });
    if (!entries.empty() && entries.front().text.empty()) {
        throw std::invalid_argument("build_index: empty phrase text");
    }
    auto dup = std::adjacent_find(entries.begin(), entries.end(),
                                  [](const PhraseEntry& a, const PhraseEntry& b) {
                                      return a.text == b.text;
                                  });
    if (dup != entries.end()) {
        throw std::invalid_argument("build_index: duplicate phrase '" + dup->text + "'");
    }
}

std::size_t capacity_for(std::size_t n) {
    return n == 0 ? 0 : std::bit_ceil(n);
}

}  // namespace

Index build_index_serial(std::vector<PhraseEntry> entries) {
    sort_and_check(entries);
    Index index;
    index.capacity_ = capacity_for(entries.size());
    index.tree_.assign(2 * index.capacity_, TreeNode{});
    for (std::size_t i = 0; i < entries.size(); ++i) {
        index.tree_[index.capacity_ + i] = TreeNode{entries[i].weight, i};
    }
    for (std::size_t pos = index.capacity_; pos-- > 1;) {
        index.tree_[pos] = combine(index.tree_[2 * pos], index.tree_[2 * pos + 1]);
    }
    index.entries_ = std::move(entries);
    return index;
}

Index build_index(std::vector<PhraseEntry> entries) {
    sort_and_check(entries);
    Index index;
    const std::size_t cap = capacity_for(entries.size());
    const auto n = static_cast<std::ptrdiff_t>(entries.size());
    index.capacity_ = cap;
    index.tree_.assign(2 * cap, TreeNode{});
    TreeNode* tree = index.tree_.data();
    const PhraseEntry* src = entries.data();

#pragma omp parallel for schedule(static) if (n > 16384)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        tree[cap + i] = TreeNode{src[i].weight, static_cast<std::size_t>(i)};
    }
    // One level at a time; nodes within a level are independent.
    for (std::size_t level = cap / 2; level >= 1; level /= 2) {
        const auto first = static_cast<std::ptrdiff_t>(level);
        const auto last = static_cast<std::ptrdiff_t>(2 * level);
#pragma omp parallel for schedule(static) if (level > 8192)
        for (std::ptrdiff_t pos = first; pos < last; ++pos) {
            tree[pos] = combine(tree[2 * pos], tree[2 * pos + 1]);
        }
    }
    index.entries_ = std::move(entries);
    return index;
}

std::optional<PrefixRange> Index::prefix_bounds(std::string_view q) const {
    auto first = std::lower_bound(
        entries_.begin(), entries_.end(), q,
        [](const PhraseEntry& e, std::string_view key) { return std::string_view(e.text) < key; });
    if (first == entries_.end() || !has_prefix(first->text, q)) return std::nullopt;
    auto last = std::partition_point(first, entries_.end(), [q](const PhraseEntry& e) {
        return has_prefix(e.text, q);
    });
    return PrefixRange{static_cast<std::size_t>(first - entries_.begin()),
                       static_cast<std::size_t>(last - entries_.begin()) - 1};
}

RangeMax Index::range_max(std::size_t lo, std::size_t hi, std::size_t* node_visits) const {
    if (lo > hi || hi >= entries_.size()) {
        throw std::out_of_range("range_max: invalid range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] for " +
                                std::to_string(entries_.size()) + " entries");
    }
    TreeNode best;
    std::size_t visits = 0;
    // Half-open [l, r) over leaf positions, climbing one level per step.
    std::size_t l = lo + capacity_;
    std::size_t r = hi + capacity_ + 1;
    while (l < r) {
        if (l & 1) {
            best = combine(best, tree_[l++]);
            ++visits;
        }
        if (r & 1) {
            best = combine(best, tree_[--r]);
            ++visits;
        }
        l >>= 1;
        r >>= 1;
    }
    if (node_visits) *node_visits += visits;
    return RangeMax{best.argmax, best.max_weight};
}

TopKCursor::TopKCursor(const Index& index, std::optional<PrefixRange> bounds,
                       QueryProbe* probe)
    : index_(&index), probe_(probe) {
    if (bounds) push(bounds->lo, bounds->hi);
}

void TopKCursor::push(std::size_t lo, std::size_t hi) {
    std::size_t* visits = probe_ ? &probe_->node_visits : nullptr;
    const RangeMax best = index_->range_max(lo, hi, visits);
    if (probe_) ++probe_->range_max_calls;
    heap_.push_back(RangeCandidate{lo, hi, best.weight, best.argmax});
    std::push_heap(heap_.begin(), heap_.end(), heap_less);
}

void TopKCursor::split_pending() {
    if (!pending_) return;
    const RangeCandidate top = *pending_;
    pending_.reset();
    if (top.argmax > top.lo) push(top.lo, top.argmax - 1);
    if (top.argmax < top.hi) push(top.argmax + 1, top.hi);
    if (probe_ && probe_->record_heap) probe_->heap_after_split.push_back(heap_);
}

std::optional<std::size_t> TopKCursor::next() {
    split_pending();
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), heap_less);
    pending_ = heap_.back();
    heap_.pop_back();
    if (probe_) ++probe_->heap_pops;
    return pending_->argmax;
}

std::optional<Weight> TopKCursor::peek_weight() {
    split_pending();
    if (heap_.empty()) return std::nullopt;
    return heap_.front().max_weight;
}

std::vector<Suggestion> top_k(const Index& index, std::string_view q, std::size_t k,
                              QueryProbe* probe) {
    std::vector<Suggestion> out;
    if (k == 0) return out;
    const auto bounds = index.prefix_bounds(q);
    if (!bounds) return out;
    out.reserve(std::min(k, bounds->size()));
    TopKCursor cursor(index, bounds, probe);
    while (out.size() < k) {
        const auto next = cursor.next();
        if (!next) break;
        const PhraseEntry& e = index.entry(*next);
        out.push_back(Suggestion{e.text, e.weight});
    }
    return out;
}

std::vector<std::vector<Suggestion>> top_k_batch(const Index& index,
                                                 std::span<const std::string> queries,
                                                 std::size_t k, int threads) {
    std::vector<std::vector<Suggestion>> results(queries.size());
    const auto count = static_cast<std::ptrdiff_t>(queries.size());
#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nthreads)
#else
    (void)threads;
#endif
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        results[i] = top_k(index, queries[i], k);
    }
    return results;
}

std::vector<std::vector<Suggestion>> top_k_batch_serial(const Index& index,
                                                        std::span<const std::string> queries,
                                                        std::size_t k) {
    std::vector<std::vector<Suggestion>> results;
    results.reserve(queries.size());
    for (const auto& q : queries) results.push_back(top_k(index, q, k));
    return results;
}

}  // namespace autocomplete
