#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "autocomplete/phrase.hpp"

namespace autocomplete::testing {

// Ten b-words whose sorted position 8 holds ("bacon", 18), the unique maximum.
inline std::vector<PhraseEntry> paper_corpus() {
    return {
        {"bad", 14},    {"bacon", 18},    {"backup", 9},  {"back", 10},  {"bacillus", 5},
        {"bachelor", 2}, {"baby", 15},    {"baboon", 12}, {"babble", 7}, {"baa", 3},
    };
}

inline std::string paper_corpus_tsv() {
    std::string out;
    for (const auto& e : paper_corpus()) out += std::to_string(e.weight) + "\t" + e.text + "\n";
    return out;
}

struct CorpusShape {
    std::size_t n = 0;
    std::string_view alphabet = "abc";
    std::size_t max_length = 10;
    // Weights drawn from [0, weight_max]; a small bound forces ties.
    Weight weight_max = UINT64_MAX;
};

/// Unique random texts of length 1..max_length. n must not exceed the number
/// of distinct strings the shape allows.
inline std::vector<PhraseEntry> random_corpus(std::mt19937_64& rng, const CorpusShape& shape) {
    std::uniform_int_distribution<std::size_t> len(1, shape.max_length);
    std::uniform_int_distribution<std::size_t> letter(0, shape.alphabet.size() - 1);
    std::uniform_int_distribution<Weight> weight(0, shape.weight_max);
    std::unordered_set<std::string> seen;
    std::vector<PhraseEntry> out;
    while (out.size() < shape.n) {
        std::string text(len(rng), ' ');
        for (char& c : text) c = shape.alphabet[letter(rng)];
        if (seen.insert(text).second) out.push_back({std::move(text), weight(rng)});
    }
    return out;
}

/// Every distinct prefix of length <= max_len present among the texts,
/// including the empty prefix.
inline std::vector<std::string> present_prefixes(const std::vector<PhraseEntry>& entries,
                                                 std::size_t max_len) {
    std::unordered_set<std::string> seen{""};
    for (const auto& e : entries) {
        for (std::size_t l = 1; l <= std::min(max_len, e.text.size()); ++l) {
            seen.insert(e.text.substr(0, l));
        }
    }
    std::vector<std::string> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace autocomplete::testing
