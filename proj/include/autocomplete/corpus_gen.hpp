#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "autocomplete/phrase.hpp"

namespace autocomplete {

/// Deterministic synthetic corpus: unique phrases of 5-30 characters over a
/// 12-letter alphabet, built from Zipf-distributed shared stems, with weights
/// uniform in [0, 1'000'000].
std::vector<PhraseEntry> generate_corpus(std::size_t n, std::uint64_t seed);

/// Writes entries as load_tsv input.
void write_tsv(std::ostream& out, const std::vector<PhraseEntry>& entries);

}  // namespace autocomplete
