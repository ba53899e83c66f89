#include "autocomplete/corpus_gen.hpp"

#include <random>
#include <string>
#include <string_view>
#include <unordered_set>

namespace autocomplete {

namespace {

constexpr std::string_view kAlphabet = "abcdeilmnorst";
constexpr std::size_t kStemCount = 4096;
constexpr std::size_t kMinLength = 5;
constexpr std::size_t kMaxLength = 30;
constexpr Weight kMaxWeight = 1'000'000;

}  // namespace

std::vector<PhraseEntry> generate_corpus(std::size_t n, std::uint64_t seed) {
    std::vector<PhraseEntry> out;
    if (n == 0) return out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> letter(0, kAlphabet.size() - 1);
    std::uniform_int_distribution<std::size_t> stem_length(2, 4);
    std::uniform_int_distribution<std::size_t> length(kMinLength, kMaxLength);
    std::uniform_int_distribution<Weight> weight(0, kMaxWeight);

    std::vector<std::string> stems(kStemCount);
    for (auto& stem : stems) {
        const std::size_t len = stem_length(rng);
        for (std::size_t i = 0; i < len; ++i) stem.push_back(kAlphabet[letter(rng)]);
    }
    std::vector<double> zipf(kStemCount);
    for (std::size_t r = 0; r < kStemCount; ++r) zipf[r] = 1.0 / static_cast<double>(r + 1);
    std::discrete_distribution<std::size_t> pick_stem(zipf.begin(), zipf.end());

    std::unordered_set<std::string> seen;
    seen.reserve(n);
    out.reserve(n);
    while (out.size() < n) {
        std::string text = stems[pick_stem(rng)];
        const std::size_t len = length(rng);
        while (text.size() < len) text.push_back(kAlphabet[letter(rng)]);
        text.resize(len);
        if (!seen.insert(text).second) continue;
        out.push_back(PhraseEntry{std::move(text), weight(rng)});
    }
    return out;
}

void write_tsv(std::ostream& out, const std::vector<PhraseEntry>& entries) {
    for (const auto& e : entries) out << e.weight << '\t' << e.text << '\n';
}

}  // namespace autocomplete
