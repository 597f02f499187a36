#include "rules.hpp"

namespace singable::syllable::rules {

namespace {

enum class Kind { consonant, strong, weak, accented_weak };

struct Unit {
    std::size_t begin;  // letter index
    std::size_t len;
    Kind kind;
    char32_t letter;  // first letter, used for cluster rules
};

bool is_vowel_letter(char32_t c) {
    switch (c) {
        case U'a': case U'e': case U'i': case U'o': case U'u':
        case U'á': case U'é': case U'í': case U'ó': case U'ú': case U'ü':
            return true;
        default:
            return false;
    }
}

Kind vowel_kind(char32_t c) {
    switch (c) {
        case U'i': case U'u': case U'ü': return Kind::weak;
        case U'í': case U'ú': return Kind::accented_weak;
        default: return Kind::strong;
    }
}

bool front_vowel(char32_t c) { return c == U'e' || c == U'i' || c == U'é' || c == U'í'; }

// Obstruent + liquid onsets that never split (pr, bl, tr...). "dl" and "tl" split.
bool inseparable(char32_t c1, char32_t c2) {
    const bool liquid = c2 == U'l' || c2 == U'r';
    if (!liquid) return false;
    switch (c1) {
        case U'p': case U'b': case U'f': case U'c': case U'g': case U'k':
            return true;
        case U't': case U'd':
            return c2 == U'r';
        default:
            return false;
    }
}

std::vector<Unit> units_of(std::u32string_view w) {
    std::vector<Unit> out;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n;) {
        const char32_t c = w[i];
        const char32_t next = i + 1 < n ? w[i + 1] : 0;
        if ((c == U'c' && next == U'h') || (c == U'l' && next == U'l') || (c == U'r' && next == U'r')) {
            out.push_back({i, 2, Kind::consonant, c});
            i += 2;
        } else if ((c == U'q' || c == U'g') && next == U'u' && i + 2 < n && front_vowel(w[i + 2])) {
            out.push_back({i, 2, Kind::consonant, c});  // silent u
            i += 2;
        } else if (c == U'y') {
            const bool before_vowel = i + 1 < n && is_vowel_letter(w[i + 1]);
            const bool vocalic = n == 1 || (!before_vowel && i > 0);
            out.push_back({i, 1, vocalic ? Kind::weak : Kind::consonant, c});
            ++i;
        } else if (is_vowel_letter(c)) {
            out.push_back({i, 1, vowel_kind(c), c});
            ++i;
        } else {
            out.push_back({i, 1, Kind::consonant, c});
            ++i;
        }
    }
    return out;
}

bool breaks_nucleus(Kind a, Kind b) {
    if (a == Kind::accented_weak || b == Kind::accented_weak) return true;
    return a == Kind::strong && b == Kind::strong;
}

}  // namespace

Starts spanish(std::u32string_view w) {
    if (w.empty()) return {};
    const auto units = units_of(w);

    // Nuclei as [first unit, last unit] ranges.
    std::vector<std::pair<std::size_t, std::size_t>> nuclei;
    for (std::size_t u = 0; u < units.size(); ++u) {
        if (units[u].kind == Kind::consonant) continue;
        const bool extends = !nuclei.empty() && nuclei.back().second + 1 == u &&
                             !breaks_nucleus(units[u - 1].kind, units[u].kind);
        if (extends) nuclei.back().second = u;
        else nuclei.push_back({u, u});
    }
    if (nuclei.empty()) return {0};

    Starts starts{0};
    for (std::size_t k = 0; k + 1 < nuclei.size(); ++k) {
        const std::size_t first_c = nuclei[k].second + 1;
        const std::size_t next_v = nuclei[k + 1].first;
        const std::size_t count = next_v - first_c;
        std::size_t start_unit = next_v;
        if (count == 1) {
            start_unit = first_c;
        } else if (count == 2) {
            const auto& c1 = units[first_c];
            const auto& c2 = units[first_c + 1];
            start_unit = (c1.len == 1 && c2.len == 1 && inseparable(c1.letter, c2.letter)) ? first_c : first_c + 1;
        } else if (count == 3) {
            const auto& c2 = units[first_c + 1];
            const auto& c3 = units[first_c + 2];
            start_unit = (c2.len == 1 && c3.len == 1 && inseparable(c2.letter, c3.letter)) ? first_c + 1 : first_c + 2;
        } else if (count >= 4) {
            start_unit = next_v - 2;
        }
        starts.push_back(units[start_unit].begin);
    }
    return starts;
}

}  // namespace singable::syllable::rules
