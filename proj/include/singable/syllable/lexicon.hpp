#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace singable::syllable {

/// Syllable exceptions for words the rules get wrong. Entries are either
/// `word<TAB>count` or `word<TAB>syl1|syl2|...`; keys are lowercase, `#` starts a comment.
class Lexicon {
public:
    struct Entry {
        std::size_t count = 0;
        /// Present for `syl1|syl2` entries; concatenates back to the key.
        std::optional<std::vector<std::u32string>> units;
    };

    static Lexicon parse(std::string_view contents, std::string_view origin = "<memory>");
    static Lexicon load(const std::string& path);

    const Entry* find(std::u32string_view key) const;
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    /// Adds or replaces entries from `other`.
    void merge(const Lexicon& other);

private:
    std::unordered_map<std::u32string, Entry> entries_;
};

}  // namespace singable::syllable
