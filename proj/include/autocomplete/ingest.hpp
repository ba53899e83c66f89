#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "autocomplete/phrase.hpp"

namespace autocomplete {

struct CorpusStats {
    std::size_t lines_read = 0;
    std::size_t entries_kept = 0;
    std::size_t duplicates_merged = 0;
    std::size_t malformed_skipped = 0;
    std::size_t bytes_read = 0;

    friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

enum class DuplicatePolicy { keep_max, sum };

class IngestError : public std::runtime_error {
public:
    IngestError(const std::string& what, std::size_t bytes_read)
        : std::runtime_error(what + " (after " + std::to_string(bytes_read) + " bytes)"),
          bytes_read_(bytes_read) {}

    std::size_t bytes_read() const { return bytes_read_; }

private:
    std::size_t bytes_read_;
};

struct Corpus {
    std::vector<PhraseEntry> entries;
    CorpusStats stats;
};

/// Reads "<weight>\t<phrase>\n" records. Phrases are trimmed and lowercased
/// (ASCII only); records with an empty phrase, a phrase containing a tab, or
/// a weight that is not a base-10 uint64 are skipped as malformed. Duplicate
/// phrases are merged according to `policy`; sums saturate at UINT64_MAX.
Corpus load_tsv(std::istream& in, DuplicatePolicy policy = DuplicatePolicy::keep_max);

Corpus load_tsv_file(const std::filesystem::path& path,
                     DuplicatePolicy policy = DuplicatePolicy::keep_max);

/// Lowercases ASCII letters; other bytes are left alone.
std::string normalize_text(std::string_view text);

}  // namespace autocomplete
