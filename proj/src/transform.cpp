#include "autocomplete/transform.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace autocomplete {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ascii_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_vowel(char c) {
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
        case 'A': case 'E': case 'I': case 'O': case 'U':
            return true;
        default:
            return false;
    }
}

// Russell soundex classes; '\0' marks letters that carry no code.
char soundex_class(char c) {
    switch (c) {
        case 'b': case 'f': case 'p': case 'v':
            return '1';
        case 'c': case 'g': case 'j': case 'k': case 'q': case 's': case 'x': case 'z':
            return '2';
        case 'd': case 't':
            return '3';
        case 'l':
            return '4';
        case 'm': case 'n':
            return '5';
        case 'r':
            return '6';
        default:
            return (c >= '0' && c <= '9') ? c : '\0';
    }
}

}  // namespace

std::set<std::string, std::less<>> default_stopwords() {
    return {"a", "the", "have", "has", "of"};
}

std::set<std::string, std::less<>> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stop-word file " + path.string());
    std::set<std::string, std::less<>> words;
    std::string line;
    while (std::getline(in, line)) {
        auto b = std::find_if_not(line.begin(), line.end(), is_space);
        auto e = std::find_if_not(line.rbegin(), line.rend(), is_space).base();
        if (b >= e || *b == '#') continue;
        words.emplace(b, e);
    }
    return words;
}

TransformConfig TransformConfig::full(bool soundex) {
    TransformConfig c;
    c.soundex_enabled = soundex;
    return c;
}

std::vector<TransformConfig> TransformConfig::cumulative(const TransformConfig& base) {
    constexpr auto bit = [](Stage s) { return static_cast<unsigned>(s); };
    std::vector<unsigned> masks = {
        bit(Stage::remove_stopwords),
        bit(Stage::remove_stopwords) | bit(Stage::strip_to_consonants),
        bit(Stage::remove_stopwords) | bit(Stage::strip_to_consonants) |
            bit(Stage::collapse_runs),
    };
    if (base.soundex_enabled) masks.push_back(0xFu);
    std::vector<TransformConfig> out;
    for (unsigned m : masks) {
        TransformConfig c = base;
        c.stages_ = m;
        out.push_back(std::move(c));
    }
    return out;
}

std::string remove_stopwords(std::string_view text,
                             const std::set<std::string, std::less<>>& stopwords) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_space(text[j])) ++j;
        if (j > i) {
            std::string_view word = text.substr(i, j - i);
            if (!stopwords.contains(word)) {
                if (!out.empty()) out.push_back(' ');
                out.append(word);
            }
        }
        i = j;
    }
    return out;
}

std::string strip_to_consonants(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (is_ascii_alnum(c) && !is_vowel(c)) out.push_back(c);
    }
    return out;
}

std::string soundex_digits(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (char d = soundex_class(c)) out.push_back(d);
    }
    return out;
}

std::string collapse_runs(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (out.empty() || out.back() != c) out.push_back(c);
    }
    return out;
}

std::string fuzzy_key(std::string_view text, const TransformConfig& config) {
    std::string key(text);
    if (config.has(Stage::remove_stopwords)) key = remove_stopwords(key, config.stopwords);
    if (config.has(Stage::strip_to_consonants)) key = strip_to_consonants(key);
    if (config.has(Stage::soundex_digits)) key = soundex_digits(key);
    if (config.has(Stage::collapse_runs)) key = collapse_runs(key);
    return key;
}

std::size_t FuzzyIndex::original_count() const {
    std::size_t total = 0;
    for (const auto& group : originals) total += group.size();
    return total;
}

FuzzyIndex build_fuzzy_index(std::span<const PhraseEntry> entries, TransformConfig config) {
    std::unordered_map<std::string, std::vector<Suggestion>> groups;
    for (const auto& e : entries) {
        std::string key = fuzzy_key(e.text, config);
        if (key.empty()) continue;
        groups[std::move(key)].push_back(Suggestion{e.text, e.weight});
    }

    std::vector<PhraseEntry> keys;
    keys.reserve(groups.size());
    for (auto& [key, group] : groups) {
        std::sort(group.begin(), group.end(), [](const Suggestion& a, const Suggestion& b) {
            return a.weight != b.weight ? a.weight > b.weight : a.text < b.text;
        });
        keys.push_back(PhraseEntry{key, group.front().weight});
    }

    FuzzyIndex out;
    out.config = std::move(config);
    out.keys = build_index(std::move(keys));
    out.originals.reserve(out.keys.size());
    for (const auto& key : out.keys.entries()) {
        out.originals.push_back(std::move(groups.at(key.text)));
    }
    return out;
}

std::vector<Suggestion> fuzzy_top_k(const FuzzyIndex& findex, std::string_view q,
                                    std::size_t k) {
    std::vector<Suggestion> out;
    if (k == 0) return out;
    const std::string key = fuzzy_key(q, findex.config);
    if (key.empty()) return out;
    const auto bounds = findex.keys.prefix_bounds(key);
    if (!bounds) return out;

    // Keys stream out by their max original weight, so an original may be
    // emitted once it is strictly heavier than every key not yet pulled.
    // Equal weights force another pull since a lighter key can still hide an
    // original that sorts earlier by text.
    const auto worse = [](const Suggestion* a, const Suggestion* b) {
        return a->weight != b->weight ? a->weight < b->weight : a->text > b->text;
    };
    std::priority_queue<const Suggestion*, std::vector<const Suggestion*>, decltype(worse)>
        pending(worse);
    TopKCursor cursor(findex.keys, bounds);
    while (out.size() < k) {
        const auto next_key_weight = cursor.peek_weight();
        if (!pending.empty() && (!next_key_weight || pending.top()->weight > *next_key_weight)) {
            out.push_back(*pending.top());
            pending.pop();
            continue;
        }
        const auto key_pos = cursor.next();
        if (!key_pos) break;
        for (const auto& original : findex.originals[*key_pos]) pending.push(&original);
    }
    return out;
}

std::vector<Suggestion> multi_stage_top_k(std::span<const FuzzyIndex> stage_indexes,
                                          std::string_view q, std::size_t k) {
    if (k == 0) return {};
    std::unordered_map<std::string, Weight> merged;
    for (const auto& stage : stage_indexes) {
        for (auto& s : fuzzy_top_k(stage, q, k)) {
            auto [it, inserted] = merged.try_emplace(std::move(s.text), s.weight);
            if (!inserted) it->second = std::max(it->second, s.weight);
        }
    }
    std::vector<Suggestion> out;
    out.reserve(merged.size());
    for (auto& [text, weight] : merged) out.push_back(Suggestion{text, weight});
    std::sort(out.begin(), out.end(), [](const Suggestion& a, const Suggestion& b) {
        return a.weight != b.weight ? a.weight > b.weight : a.text < b.text;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

std::vector<FuzzyIndex> build_stage_indexes(std::span<const PhraseEntry> entries,
                                            const TransformConfig& base) {
    std::vector<FuzzyIndex> stages;
    for (auto& config : TransformConfig::cumulative(base)) {
        stages.push_back(build_fuzzy_index(entries, std::move(config)));
    }
    return stages;
}

}  // namespace autocomplete
