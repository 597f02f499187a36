#include <algorithm>
#include <array>

#include "rules.hpp"

namespace singable::syllable::rules {

namespace {

struct Span {
    std::size_t begin;
    std::size_t end;
};

bool plain_vowel(char32_t c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_with(std::u32string_view s, std::u32string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Onsets that may open a medial syllable. s-clusters are left out on purpose so
// that "master" splits mas|ter.
constexpr std::array<std::u32string_view, 24> kOnsets = {
    U"th", U"sh", U"ch", U"ph", U"wh", U"bl", U"br", U"cl", U"cr", U"dr", U"fl", U"fr",
    U"gl", U"gr", U"pl", U"pr", U"tr", U"tw", U"dw", U"qu", U"wr", U"thr", U"shr", U"chr"};

bool legal_onset(std::u32string_view s) {
    return std::find(kOnsets.begin(), kOnsets.end(), s) != kOnsets.end();
}

}  // namespace

Contraction english_contraction(std::u32string_view key) {
    Contraction c{key.size(), false};
    if (ends_with(key, U"n't") && key.size() > 3) {
        c.stem_length = key.size() - 3;
        // "didn't" adds a syllable, "don't" / "can't" do not.
        std::size_t k = c.stem_length;
        while (k > 0 && key[k - 1] == U'\'') --k;
        c.syllabic = k > 0 && !plain_vowel(key[k - 1]) && key[k - 1] != 'y';
        return c;
    }
    for (std::u32string_view suffix : {U"'s", U"'re", U"'ve", U"'d", U"'ll", U"'m"}) {
        if (ends_with(key, suffix) && key.size() > suffix.size()) {
            c.stem_length = key.size() - suffix.size();
            return c;
        }
    }
    return c;
}

Starts english(std::u32string_view w) {
    const std::size_t n = w.size();
    if (n == 0) return {};

    std::vector<bool> vowel(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const char32_t c = w[i];
        if (plain_vowel(c)) {
            vowel[i] = !(c == 'u' && i > 0 && w[i - 1] == 'q');
        } else if (c == 'y') {
            // consonantal before a vowel at word start or after a vowel ("you", "beyond")
            const bool before_vowel = i + 1 < n && plain_vowel(w[i + 1]);
            const bool after_vowel = i > 0 && vowel[i - 1];
            vowel[i] = !(before_vowel && (i == 0 || after_vowel));
        }
    }

    std::vector<Span> groups;
    for (std::size_t i = 0; i < n;) {
        if (!vowel[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && vowel[j]) ++j;
        groups.push_back({i, j});
        i = j;
    }
    if (groups.empty()) return {0};

    // "-ing" after a vowel is its own syllable: go|ing, cry|ing, see|ing.
    for (std::u32string_view suffix : {U"ing", U"ings"}) {
        if (!ends_with(w, suffix) || n <= suffix.size()) continue;
        const std::size_t i_pos = n - suffix.size();
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (groups[g].begin < i_pos && groups[g].end == i_pos + 1) {
                groups.insert(groups.begin() + static_cast<std::ptrdiff_t>(g) + 1, Span{i_pos, i_pos + 1});
                groups[g].end = i_pos;
                break;
            }
        }
    }

    // Silent final e / -es / -ed.
    if (groups.size() > 1) {
        const Span last = groups.back();
        const bool single_e = last.end == last.begin + 1 && w[last.begin] == 'e';
        const auto consonant_at = [&](std::size_t k) { return k < n && !vowel[k]; };
        if (single_e && last.end == n) {
            const bool consonant_le = n >= 3 && w[n - 2] == 'l' && consonant_at(n - 3);
            if (!consonant_le) groups.pop_back();
        } else if (single_e && last.end == n - 1 && w[n - 1] == 's') {
            const std::size_t p = last.begin;  // 'e'
            const char32_t prev = p > 0 ? w[p - 1] : 0;
            const bool sibilant = prev == 's' || prev == 'x' || prev == 'z' || prev == 'c' || prev == 'g' ||
                                  (p >= 2 && w[p - 1] == 'h' && (w[p - 2] == 'c' || w[p - 2] == 's'));
            const bool consonant_les = p >= 2 && prev == 'l' && consonant_at(p - 2);
            if (!sibilant && !consonant_les) groups.pop_back();
        } else if (single_e && last.end == n - 1 && w[n - 1] == 'd') {
            const char32_t prev = last.begin > 0 ? w[last.begin - 1] : 0;
            if (prev != 't' && prev != 'd') groups.pop_back();
        }
    }

    Starts starts{0};
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        const std::size_t a = groups[g].end;
        const std::size_t b = groups[g + 1].begin;
        const std::size_t len = b - a;
        std::size_t boundary = b;
        if (len == 1) {
            boundary = w[a] == 'x' ? b : a;
        } else if (len >= 2) {
            const auto cluster = w.substr(a, len);
            if (cluster == U"ck" || cluster == U"ng") {
                boundary = b;
            } else {
                boundary = b - 1;
                for (std::size_t k = std::min<std::size_t>(3, len); k >= 2; --k) {
                    if (legal_onset(cluster.substr(len - k))) {
                        boundary = b - k;
                        break;
                    }
                }
            }
        }
        starts.push_back(boundary);
    }
    return starts;
}

}  // namespace singable::syllable::rules
