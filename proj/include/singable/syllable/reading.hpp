#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace singable::syllable {

/// Supplies kana readings for Japanese text containing kanji.
class ReadingProvider {
public:
    virtual ~ReadingProvider() = default;
    /// Rewrites `text` with every resolvable kanji run replaced by its kana reading.
    /// Unresolvable kanji are left in place (and are not counted as morae).
    virtual std::u32string to_kana(std::u32string_view text) const = 0;
};

/// Longest-match replacement from a `surface<TAB>reading` lexicon.
class LexiconReadingProvider final : public ReadingProvider {
public:
    static LexiconReadingProvider parse(std::string_view contents, std::string_view origin = "<memory>");
    static LexiconReadingProvider load(const std::string& path);
    /// The small built-in lexicon (data/readings/ja.tsv).
    static const LexiconReadingProvider& builtin();

    std::u32string to_kana(std::u32string_view text) const override;
    std::size_t size() const noexcept { return readings_.size(); }

private:
    std::unordered_map<std::u32string, std::u32string> readings_;
    std::size_t longest_ = 0;
};

}  // namespace singable::syllable
