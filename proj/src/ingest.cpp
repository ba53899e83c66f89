#include "autocomplete/ingest.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <string_view>
#include <unordered_map>

namespace autocomplete {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string normalize_text(std::string_view text) {
    std::string out(trim(text));
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

Corpus load_tsv(std::istream& in, DuplicatePolicy policy) {
    Corpus corpus;
    CorpusStats& stats = corpus.stats;
    std::unordered_map<std::string, std::size_t> position;
    std::string line;
    while (std::getline(in, line)) {
        stats.bytes_read += line.size() + (in.eof() ? 0 : 1);
        ++stats.lines_read;

        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            ++stats.malformed_skipped;
            continue;
        }
        Weight weight = 0;
        const char* first = line.data();
        const char* last = line.data() + tab;
        auto [ptr, ec] = std::from_chars(first, last, weight);
        std::string text = normalize_text(std::string_view(line).substr(tab + 1));
        if (ec != std::errc{} || ptr != last || tab == 0 || text.empty() ||
            text.find('\t') != std::string::npos) {
            ++stats.malformed_skipped;
            continue;
        }

        auto [it, inserted] = position.try_emplace(text, corpus.entries.size());
        if (inserted) {
            corpus.entries.push_back(PhraseEntry{std::move(text), weight});
            continue;
        }
        ++stats.duplicates_merged;
        Weight& kept = corpus.entries[it->second].weight;
        if (policy == DuplicatePolicy::keep_max) {
            kept = std::max(kept, weight);
        } else {
            constexpr Weight kMax = std::numeric_limits<Weight>::max();
            kept = weight > kMax - kept ? kMax : kept + weight;
        }
    }
    if (in.bad()) throw IngestError("read error in corpus stream", stats.bytes_read);
    stats.entries_kept = corpus.entries.size();
    return corpus;
}

Corpus load_tsv_file(const std::filesystem::path& path, DuplicatePolicy policy) {
    std::error_code ec;
    std::ifstream in;
    if (!std::filesystem::is_directory(path, ec)) in.open(path, std::ios::binary);
    if (!in.is_open()) throw IngestError("cannot open corpus file " + path.string(), 0);
    return load_tsv(in, policy);
}

}  // namespace autocomplete
