#pragma once

#include <cstdint>
#include <string>

namespace autocomplete {

using Weight = std::uint64_t;

/// One completion candidate. Text is stored as its UTF-8 byte sequence.
struct PhraseEntry {
    std::string text;
    Weight weight = 0;

    friend bool operator==(const PhraseEntry&, const PhraseEntry&) = default;
};

struct Suggestion {
    std::string text;
    Weight weight = 0;

    friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

}  // namespace autocomplete
