#include "singable/syllable/syllabifier.hpp"

#include <algorithm>
#include <filesystem>

#include "rules.hpp"
#include "singable/error.hpp"
#include "singable/resources.hpp"
#include "singable/syllable/numbers.hpp"
#include "singable/text/utf8.hpp"

namespace singable::syllable {

namespace {

constexpr long long kDigitOverflow = 10'000'000;

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }

bool small_kana(char32_t hira) {
    switch (hira) {
        case U'ぁ': case U'ぃ': case U'ぅ': case U'ぇ': case U'ぉ':
        case U'ゃ': case U'ゅ': case U'ょ': case U'ゎ':
            return true;
        default:
            return false;
    }
}

bool counts_as_mora(char32_t cp) {
    const char32_t h = text::katakana_to_hiragana(cp);
    if (h >= 0x3041 && h <= 0x3096) return true;
    return cp == 0x30FC || cp == 0x309D || cp == 0x309E || cp == 0x30FD || cp == 0x30FE || cp == 0x30F7 ||
           cp == 0x30F8 || cp == 0x30F9 || cp == 0x30FA;
}

// Replaces digit runs (with optional leading minus and "1,000"-style grouping) by words.
std::u32string expand_digits(Language lang, std::u32string_view in) {
    std::u32string out;
    std::size_t i = 0;
    while (i < in.size()) {
        if (!text::is_digit(in[i])) {
            out.push_back(in[i++]);
            continue;
        }
        bool negative = false;
        if (!out.empty() && out.back() == U'-' && (out.size() == 1 || text::is_space(out[out.size() - 2]))) {
            negative = true;
            out.pop_back();
        }
        long long value = 0;
        std::size_t run = 0;
        const auto take_digits = [&] {
            while (i < in.size() && text::is_digit(in[i])) {
                value = std::min(kDigitOverflow, value * 10 + static_cast<long long>(in[i] - U'0'));
                ++i;
                ++run;
            }
        };
        take_digits();
        // thousands grouping: 1,000 or 12,345 (groups of exactly three digits)
        while (run <= 3 && i + 3 < in.size() && in[i] == U',' && text::is_digit(in[i + 1]) &&
               text::is_digit(in[i + 2]) && text::is_digit(in[i + 3]) &&
               (i + 4 >= in.size() || !text::is_digit(in[i + 4]))) {
            ++i;
            for (int k = 0; k < 3; ++k, ++i) value = std::min(kDigitOverflow, value * 10 + static_cast<long long>(in[i] - U'0'));
        }
        const long long n = negative ? -value : value;
        const auto words = text::decode(expand_number(lang, n));
        if (!out.empty() && !text::is_space(out.back())) out.push_back(U' ');
        out += words;
        if (i < in.size() && !text::is_space(in[i])) out.push_back(U' ');
    }
    return out;
}

std::u32string strip_punctuation(std::u32string_view in) {
    std::u32string out;
    for (std::size_t i = 0; i < in.size(); ++i) {
        const char32_t cp = in[i];
        if (text::is_letter(cp) || text::is_digit(cp) || text::is_space(cp)) {
            out.push_back(cp);
            continue;
        }
        const bool letter_before = i > 0 && text::is_letter(in[i - 1]);
        const bool letter_after = i + 1 < in.size() && text::is_letter(in[i + 1]);
        if (is_apostrophe(cp) && (letter_before || letter_after)) {
            out.push_back(U'\'');
        } else if (cp == U'-' && letter_before && letter_after) {
            out.push_back(cp);
        } else {
            out.push_back(U' ');
        }
    }
    return out;
}

std::vector<std::string> units_from_starts(std::u32string_view word, std::vector<std::size_t> starts) {
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    if (starts.empty()) return {};
    starts.front() = 0;
    std::vector<std::string> units;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const std::size_t end = k + 1 < starts.size() ? starts[k + 1] : word.size();
        units.push_back(text::encode(word.substr(starts[k], end - starts[k])));
    }
    return units;
}

}  // namespace

Syllabifier::Syllabifier() {
    lexicons_[Language::EN] = Lexicon::parse(resources::get("lexicon/en.tsv"), "lexicon/en.tsv");
    lexicons_[Language::ES] = Lexicon::parse(resources::get("lexicon/es.tsv"), "lexicon/es.tsv");
    lexicons_[Language::FR] = Lexicon::parse(resources::get("lexicon/fr.tsv"), "lexicon/fr.tsv");
    readings_ = std::make_shared<LexiconReadingProvider>(LexiconReadingProvider::builtin());
}

Syllabifier Syllabifier::with_lexicon_dir(const std::string& dir) {
    Syllabifier s;
    for (Language lang : {Language::EN, Language::ES, Language::FR}) {
        std::string name(to_string(lang));
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
        const auto path = std::filesystem::path(dir) / (name + ".tsv");
        if (std::filesystem::exists(path)) s.lexicons_[lang].merge(Lexicon::load(path.string()));
    }
    const auto ja = std::filesystem::path(dir) / "ja_readings.tsv";
    if (std::filesystem::exists(ja))
        s.readings_ = std::make_shared<LexiconReadingProvider>(LexiconReadingProvider::load(ja.string()));
    return s;
}

void Syllabifier::set_lexicon(Language lang, Lexicon lexicon) { lexicons_[lang] = std::move(lexicon); }

void Syllabifier::set_reading_provider(std::shared_ptr<const ReadingProvider> provider) {
    readings_ = std::move(provider);
}

const Syllabifier& Syllabifier::builtin() {
    static const Syllabifier instance;
    return instance;
}

std::string Syllabifier::normalize(Language lang, std::string_view text_in, const NormalizationPolicy& policy) const {
    std::u32string s = text::decode(text_in);
    if (lang == Language::JA && readings_) s = readings_->to_kana(s);
    if (policy.expand_numbers) s = expand_digits(lang, s);
    if (policy.strip_punctuation_for_counting) s = strip_punctuation(s);
    return text::collapse_whitespace(text::encode(s));
}

std::vector<std::string> Syllabifier::segment_word(Language lang, std::u32string_view word,
                                                   const NormalizationPolicy& policy) const {
    std::vector<std::size_t> key_pos;
    std::vector<std::size_t> letter_pos;
    std::u32string key;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (text::is_letter(word[i])) {
            letter_pos.push_back(i);
            key_pos.push_back(i);
            key.push_back(text::to_lower(word[i]));
        } else if (is_apostrophe(word[i])) {
            key_pos.push_back(i);
            key.push_back(U'\'');
        }
    }
    if (letter_pos.empty()) return {};

    const auto letters_in = [&](std::size_t key_begin, std::size_t key_end) {
        std::u32string letters;
        std::vector<std::size_t> positions;
        for (std::size_t k = key_begin; k < key_end; ++k) {
            if (key[k] == U'\'') continue;
            letters.push_back(key[k]);
            positions.push_back(key_pos[k]);
        }
        return std::make_pair(letters, positions);
    };

    const auto rule_starts = [&]() -> std::vector<std::size_t> {
        std::vector<std::size_t> starts;
        if (lang == Language::EN) {
            const auto contraction = rules::english_contraction(key);
            auto [letters, positions] = letters_in(0, contraction.stem_length);
            if (letters.empty()) return {0};
            for (std::size_t s : rules::english(letters)) starts.push_back(positions[s]);
            if (contraction.syllabic) starts.push_back(key_pos[contraction.stem_length]);
            return starts;
        }
        auto [letters, positions] = letters_in(0, key.size());
        const auto rs = lang == Language::ES ? rules::spanish(letters) : rules::french(letters, policy.french_final_e);
        for (std::size_t s : rs) starts.push_back(positions[s]);
        return starts;
    };

    const Lexicon::Entry* entry = nullptr;
    std::size_t key_offset = 0;
    if (auto it = lexicons_.find(lang); it != lexicons_.end()) {
        entry = it->second.find(key);
        if (!entry) {
            std::size_t b = 0, e = key.size();
            while (b < e && key[b] == U'\'') ++b;
            while (e > b && key[e - 1] == U'\'') --e;
            if (b != 0 || e != key.size()) {
                entry = it->second.find(std::u32string_view(key).substr(b, e - b));
                key_offset = b;
            }
        }
    }
    // Sung French realizes schwas, so mute-e lexicon entries only apply in mute mode.
    if (entry && lang == Language::FR && policy.french_final_e == FrenchFinalE::sounded) entry = nullptr;

    std::vector<std::size_t> starts;
    if (entry && entry->units) {
        std::size_t offset = key_offset;
        for (const auto& unit : *entry->units) {
            starts.push_back(key_pos[offset]);
            offset += unit.size();
        }
    } else if (entry) {
        starts = rule_starts();
        if (starts.size() != entry->count) {
            starts.clear();
            const std::size_t n = std::min(entry->count, letter_pos.size());
            for (std::size_t k = 0; k < n; ++k) starts.push_back(letter_pos[k * letter_pos.size() / n]);
        }
    } else {
        starts = rule_starts();
    }
    return units_from_starts(word, std::move(starts));
}

SyllableSegmentation Syllabifier::segment(Language lang, std::string_view text_in, const NormalizationPolicy& policy) const {
    SyllableSegmentation seg;
    seg.language = lang;
    const auto norm = text::decode(normalize(lang, text_in, policy));

    if (lang == Language::KO) {
        for (char32_t cp : norm) {
            if (text::is_hangul_syllable(cp)) seg.units.push_back(text::encode(cp));
        }
    } else if (lang == Language::JA) {
        std::u32string prev;
        for (char32_t cp : norm) {
            if (!counts_as_mora(cp)) continue;
            const char32_t h = text::katakana_to_hiragana(cp);
            const bool merges = small_kana(h) && !seg.units.empty() && !prev.empty() &&
                                prev.back() != U'っ' && prev.back() != U'ん' && prev.back() != 0x30FC;
            if (merges) {
                seg.units.back() += text::encode(cp);
            } else {
                seg.units.push_back(text::encode(cp));
            }
            prev.push_back(h);
        }
    } else {
        std::u32string word;
        const auto flush = [&] {
            for (auto& u : segment_word(lang, word, policy)) seg.units.push_back(std::move(u));
            word.clear();
        };
        for (char32_t cp : norm) {
            if (text::is_space(cp) || cp == U'-') {
                flush();
            } else {
                word.push_back(cp);
            }
        }
        flush();
    }
    seg.count = seg.units.size();
    return seg;
}

std::string normalize(Language lang, std::string_view text, const NormalizationPolicy& policy) {
    return Syllabifier::builtin().normalize(lang, text, policy);
}

SyllableSegmentation segment(Language lang, std::string_view text, const NormalizationPolicy& policy) {
    return Syllabifier::builtin().segment(lang, text, policy);
}

std::size_t count_syllables(Language lang, std::string_view text, const NormalizationPolicy& policy) {
    return Syllabifier::builtin().count(lang, text, policy);
}

}  // namespace singable::syllable
