#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "singable/language.hpp"
#include "singable/phonetics/ipa.hpp"

namespace singable::phonetics {

struct ContextElement {
    enum class Kind { literal, boundary, vowel, consonant, set, negated_set };
    Kind kind = Kind::literal;
    std::u32string chars;  // literal: one char; set kinds: members
};

struct G2PRule {
    std::u32string grapheme;
    std::vector<std::string> output;  // empty = silent
    std::vector<ContextElement> left;
    std::vector<ContextElement> right;
    std::size_t line = 0;
};

/// Ordered grapheme-to-IPA rules for one language.
///
/// File format, one rule per line:
///
///     grapheme<TAB>ipa[<TAB>left/right]
///
/// `ipa` is a space-separated symbol list, or "-" for silence. Contexts are
/// sequences of: a literal letter, `#` (word boundary), `V` (vowel), `C`
/// (consonant), `[abc]` or `[^abc]`. Lines starting with `#` are comments.
/// Directives `@vowels<TAB>chars` and `@alphabet<TAB>chars` declare the letter
/// classes; every alphabet letter needs a context-free single-letter rule.
///
/// At each position the longest matching grapheme wins, then the first rule in
/// file order whose contexts match.
class G2PRuleSet {
public:
    G2PRuleSet() = default;

    /// Throws ParseError (byte offset of the bad line) or ValidationError on
    /// missing alphabet coverage.
    static G2PRuleSet parse(Language lang, std::string_view text, std::string_view origin = "<rules>");
    static G2PRuleSet load(Language lang, const std::string& path);

    /// Shipped table for `lang`.
    static const G2PRuleSet& builtin(Language lang);

    Language language() const noexcept { return language_; }
    const std::vector<G2PRule>& rules() const noexcept { return rules_; }
    bool is_vowel(char32_t c) const { return vowels_.count(c) != 0; }
    bool in_alphabet(char32_t c) const { return alphabet_.count(c) != 0; }

    /// Index of the rule applied at `pos` of `word`, or -1.
    long match(std::u32string_view word, std::size_t pos) const;

private:
    bool left_matches(const std::vector<ContextElement>& ctx, std::u32string_view word, std::size_t pos) const;
    bool right_matches(const std::vector<ContextElement>& ctx, std::u32string_view word, std::size_t pos) const;
    bool element_matches(const ContextElement& e, char32_t c) const;

    Language language_ = Language::EN;
    std::vector<G2PRule> rules_;
    std::unordered_set<char32_t> vowels_;
    std::unordered_set<char32_t> alphabet_;
    std::unordered_map<char32_t, std::vector<std::size_t>> by_first_;
};

using RuleSets = std::map<Language, G2PRuleSet>;

/// All five shipped tables.
const RuleSets& builtin_rule_sets();

struct Transcription {
    IpaString ipa;
    std::size_t dropped = 0;  // letters or symbols no rule covered
};

/// Throws MissingRulesError when rules.language() != lang.
Transcription transcribe_detailed(Language lang, std::string_view text, const G2PRuleSet& rules);

IpaString transcribe(Language lang, std::string_view text, const G2PRuleSet& rules);

/// edit_distance(transcribe(gt), transcribe(pred)). Throws MissingRulesError when
/// either language has no rule set.
std::size_t phonetic_distance(Language lang_gt, std::string_view gt, Language lang_pred, std::string_view pred,
                              const RuleSets& rules_by_lang = builtin_rule_sets());

}  // namespace singable::phonetics
