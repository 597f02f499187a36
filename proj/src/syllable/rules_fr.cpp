#include "rules.hpp"

namespace singable::syllable::rules {

namespace {

bool is_vowel_letter(char32_t c) {
    switch (c) {
        case U'a': case U'à': case U'â': case U'e': case U'é': case U'è': case U'ê': case U'ë':
        case U'i': case U'î': case U'ï': case U'o': case U'ô': case U'u': case U'ù': case U'û':
        case U'ü': case U'y': case U'ÿ': case U'œ': case U'æ':
            return true;
        default:
            return false;
    }
}

bool diaeresis(char32_t c) { return c == U'ë' || c == U'ï' || c == U'ü' || c == U'ÿ'; }

bool soft_front(char32_t c) {
    return c == U'e' || c == U'é' || c == U'è' || c == U'ê' || c == U'ë' || c == U'i' || c == U'î' ||
           c == U'ï' || c == U'y';
}

bool inseparable(char32_t c1, char32_t c2) {
    if (c2 != U'l' && c2 != U'r') return false;
    switch (c1) {
        case U'b': case U'c': case U'd': case U'f': case U'g': case U'k': case U'p': case U't': case U'v':
            return true;
        default:
            return false;
    }
}

bool ends_with(std::u32string_view s, std::u32string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

struct Unit {
    std::size_t begin;
    std::size_t len;
    bool vowel;
    char32_t letter;
};

std::vector<Unit> units_of(std::u32string_view w) {
    std::vector<Unit> out;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n;) {
        const char32_t c = w[i];
        const char32_t next = i + 1 < n ? w[i + 1] : 0;
        const bool digraph = (c == U'c' && next == U'h') || (c == U'p' && next == U'h') ||
                             (c == U't' && next == U'h') || (c == U'g' && next == U'n');
        const bool silent_u = next == U'u' && (c == U'q' || (c == U'g' && i + 2 < n && soft_front(w[i + 2])));
        if (digraph || silent_u) {
            out.push_back({i, 2, false, c});
            i += 2;
            continue;
        }
        bool vowel = is_vowel_letter(c);
        if (c == U'y' && i + 1 < n && is_vowel_letter(next) && (i == 0 || is_vowel_letter(w[i - 1]))) vowel = false;
        out.push_back({i, 1, vowel, c});
        ++i;
    }
    return out;
}

}  // namespace

Starts french(std::u32string_view w, FrenchFinalE final_e) {
    if (w.empty()) return {};
    const auto units = units_of(w);
    const std::size_t n = w.size();

    std::vector<std::pair<std::size_t, std::size_t>> nuclei;
    for (std::size_t u = 0; u < units.size(); ++u) {
        if (!units[u].vowel) continue;
        bool extends = !nuclei.empty() && nuclei.back().second + 1 == u;
        if (extends) {
            const char32_t prev = units[u - 1].letter;
            const char32_t cur = units[u].letter;
            // tréma opens a new vowel; é/è after a vowel and any vowel after é are in hiatus
            if (diaeresis(cur) || cur == U'é' || cur == U'è' || prev == U'é') extends = false;
        }
        if (extends) nuclei.back().second = u;
        else nuclei.push_back({u, u});
    }
    if (nuclei.empty()) return {0};

    if (final_e == FrenchFinalE::mute && nuclei.size() > 1) {
        const auto [first, last] = nuclei.back();
        const bool single_e = first == last && units[first].letter == U'e';
        const std::size_t e_pos = units[first].begin;
        const bool is_final = single_e && e_pos + 1 == n;
        const bool is_es = single_e && e_pos + 2 == n && w[n - 1] == U's';
        const bool is_ent = single_e && e_pos + 3 == n && ends_with(w, U"ent") && !ends_with(w, U"ment");
        if (is_final || is_es || is_ent) nuclei.pop_back();
    }

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
