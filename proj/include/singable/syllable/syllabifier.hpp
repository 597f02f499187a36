#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "singable/language.hpp"
#include "singable/syllable/lexicon.hpp"
#include "singable/syllable/reading.hpp"

namespace singable::syllable {

enum class FrenchFinalE { mute, sounded };

struct NormalizationPolicy {
    bool expand_numbers = true;
    bool strip_punctuation_for_counting = true;
    FrenchFinalE french_final_e = FrenchFinalE::mute;
};

struct SyllableSegmentation {
    std::vector<std::string> units;
    std::size_t count = 0;
    Language language = Language::EN;
};

/// Normalization, segmentation and counting for all five languages.
///
/// EN/ES/FR are syllabified word by word with rule tables (vowel nuclei plus
/// consonant-cluster splitting), after an exceptions lexicon lookup. KO counts
/// precomposed Hangul blocks. JA counts morae over kana: small ya/yu/yo and small
/// vowels merge into the preceding kana; sokuon, moraic n and the long-vowel mark
/// each count one. Kanji are first rewritten to kana by the ReadingProvider.
///
/// Immutable after construction and safe to share between threads.
class Syllabifier {
public:
    /// Built-in lexicons and the built-in JA reading lexicon.
    Syllabifier();

    /// Loads `<dir>/en.tsv`, `es.tsv`, `fr.tsv` when present and merges them over the
    /// built-in entries.
    static Syllabifier with_lexicon_dir(const std::string& dir);

    void set_lexicon(Language lang, Lexicon lexicon);
    void set_reading_provider(std::shared_ptr<const ReadingProvider> provider);

    /// Digits to words, punctuation stripped per policy, whitespace collapsed.
    /// Throws UnsupportedNumberError for numbers beyond ±999,999.
    std::string normalize(Language lang, std::string_view text, const NormalizationPolicy& policy = {}) const;

    SyllableSegmentation segment(Language lang, std::string_view text, const NormalizationPolicy& policy = {}) const;

    std::size_t count(Language lang, std::string_view text, const NormalizationPolicy& policy = {}) const {
        return segment(lang, text, policy).count;
    }

    /// The shared default instance.
    static const Syllabifier& builtin();

private:
    std::vector<std::string> segment_word(Language lang, std::u32string_view word,
                                          const NormalizationPolicy& policy) const;

    std::map<Language, Lexicon> lexicons_;
    std::shared_ptr<const ReadingProvider> readings_;
};

// Convenience wrappers over Syllabifier::builtin().
std::string normalize(Language lang, std::string_view text, const NormalizationPolicy& policy = {});
SyllableSegmentation segment(Language lang, std::string_view text, const NormalizationPolicy& policy = {});
std::size_t count_syllables(Language lang, std::string_view text, const NormalizationPolicy& policy = {});

}  // namespace singable::syllable
