#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace singable::phonetics {

/// A sequence of IPA symbols. Multi-code-point symbols such as "tʃ" or "k͈" are
/// one element each.
struct IpaString {
    std::vector<std::string> symbols;

    /// Splits on whitespace.
    static IpaString parse(std::string_view spaced);

    /// Symbols joined by single spaces.
    std::string str() const;

    std::size_t size() const noexcept { return symbols.size(); }
    bool empty() const noexcept { return symbols.empty(); }

    friend bool operator==(const IpaString&, const IpaString&) = default;
};

/// Unit-cost Levenshtein distance over symbols (insert, delete, substitute).
std::size_t edit_distance(const IpaString& a, const IpaString& b);

}  // namespace singable::phonetics
