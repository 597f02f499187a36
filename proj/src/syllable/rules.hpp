#pragma once

// Per-language syllabification rules. Each function takes the lowercase letters of
// one word (no punctuation, no apostrophes) and returns the start index of every
// syllable unit; the first element is always 0. An empty word yields no units.

#include <string_view>
#include <vector>

#include "singable/syllable/syllabifier.hpp"

namespace singable::syllable::rules {

using Starts = std::vector<std::size_t>;

Starts english(std::u32string_view letters);
Starts spanish(std::u32string_view letters);
Starts french(std::u32string_view letters, FrenchFinalE final_e);

/// English contraction suffix handling, applied to the lowercase key with apostrophes.
struct Contraction {
    std::size_t stem_length = 0;  // key characters belonging to the stem
    bool syllabic = false;        // suffix forms its own syllable ("didn't" -> did|n't)
};
Contraction english_contraction(std::u32string_view key);

}  // namespace singable::syllable::rules
