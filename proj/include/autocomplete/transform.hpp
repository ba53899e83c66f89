#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autocomplete/index.hpp"
#include "autocomplete/phrase.hpp"

namespace autocomplete {

// Approximate matching by canonicalizing both corpus and query, then running
// the exact prefix index over the canonical keys. The stages always run in
// this order; a config can only switch them on or off.
enum class Stage : unsigned {
    remove_stopwords = 1u << 0,
    strip_to_consonants = 1u << 1,
    soundex_digits = 1u << 2,
    collapse_runs = 1u << 3,
};

std::set<std::string, std::less<>> default_stopwords();

/// Reads a stop-word file: one lowercase word per line, '#' lines ignored.
/// Throws std::runtime_error if the file cannot be opened.
std::set<std::string, std::less<>> load_stopwords(const std::filesystem::path& path);

struct TransformConfig {
    std::set<std::string, std::less<>> stopwords = default_stopwords();
    bool soundex_enabled = false;

    /// Whether a stage runs. The soundex stage also requires soundex_enabled.
    bool has(Stage s) const {
        if (s == Stage::soundex_digits && !soundex_enabled) return false;
        return (stages_ & static_cast<unsigned>(s)) != 0;
    }
    unsigned stage_mask() const { return stages_; }

    /// All stages; soundex only if enabled.
    static TransformConfig full(bool soundex = false);

    /// Cumulative prefixes of the stage list used for multi-stage matching:
    /// {1}, {1,2}, {1,2,4} and, with soundex, {1,2,3,4}.
    static std::vector<TransformConfig> cumulative(const TransformConfig& base);

private:
    unsigned stages_ = 0xFu;
};

std::string remove_stopwords(std::string_view text,
                             const std::set<std::string, std::less<>>& stopwords);
std::string strip_to_consonants(std::string_view text);
std::string soundex_digits(std::string_view text);
std::string collapse_runs(std::string_view text);

/// Applies the enabled stages in their fixed order. An empty key means the
/// text carries nothing to match on.
std::string fuzzy_key(std::string_view text, const TransformConfig& config);

/// Index over distinct fuzzy keys. Each key's weight is the largest weight of
/// the phrases that map to it; originals[i] lists those phrases for sorted key
/// i, heaviest first, ties in text order.
struct FuzzyIndex {
    TransformConfig config;
    Index keys;
    std::vector<std::vector<Suggestion>> originals;

    std::size_t original_count() const;
};

FuzzyIndex build_fuzzy_index(std::span<const PhraseEntry> entries, TransformConfig config);

std::vector<Suggestion> fuzzy_top_k(const FuzzyIndex& findex, std::string_view q,
                                    std::size_t k);

/// Unions the results of several stage indexes, each queried with its own
/// key of q. Duplicate texts keep their maximum weight.
std::vector<Suggestion> multi_stage_top_k(std::span<const FuzzyIndex> stage_indexes,
                                          std::string_view q, std::size_t k);

std::vector<FuzzyIndex> build_stage_indexes(std::span<const PhraseEntry> entries,
                                            const TransformConfig& base);

}  // namespace autocomplete
