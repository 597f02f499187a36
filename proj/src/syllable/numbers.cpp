#include "singable/syllable/numbers.hpp"

#include <array>
#include <string_view>

#include "singable/error.hpp"

namespace singable::syllable {

namespace {

// ---- English ------------------------------------------------------------------------

constexpr std::array<std::string_view, 20> kEnSmall = {
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
constexpr std::array<std::string_view, 10> kEnTens = {"", "", "twenty", "thirty", "forty",
                                                      "fifty", "sixty", "seventy", "eighty", "ninety"};

std::string en_below_100(int n) {
    if (n < 20) return std::string(kEnSmall[n]);
    std::string s(kEnTens[n / 10]);
    if (n % 10) s += "-" + std::string(kEnSmall[n % 10]);
    return s;
}

std::string en_below_1000(int n) {
    if (n < 100) return en_below_100(n);
    std::string s = std::string(kEnSmall[n / 100]) + " hundred";
    if (n % 100) s += " and " + en_below_100(n % 100);
    return s;
}

std::string english(long long n) {
    if (n < 1000) return en_below_1000(static_cast<int>(n));
    const int thousands = static_cast<int>(n / 1000);
    const int rest = static_cast<int>(n % 1000);
    std::string s = en_below_1000(thousands) + " thousand";
    if (rest >= 100) s += " " + en_below_1000(rest);
    else if (rest > 0) s += " and " + en_below_100(rest);
    return s;
}

// ---- Spanish ------------------------------------------------------------------------

constexpr std::array<std::string_view, 30> kEsSmall = {
    "cero", "uno", "dos", "tres", "cuatro", "cinco", "seis", "siete", "ocho", "nueve",
    "diez", "once", "doce", "trece", "catorce", "quince", "dieciséis", "diecisiete", "dieciocho", "diecinueve",
    "veinte", "veintiuno", "veintidós", "veintitrés", "veinticuatro", "veinticinco", "veintiséis",
    "veintisiete", "veintiocho", "veintinueve"};
constexpr std::array<std::string_view, 10> kEsTens = {"", "", "", "treinta", "cuarenta",
                                                      "cincuenta", "sesenta", "setenta", "ochenta", "noventa"};
constexpr std::array<std::string_view, 10> kEsHundreds = {"", "ciento", "doscientos", "trescientos",
                                                          "cuatrocientos", "quinientos", "seiscientos",
                                                          "setecientos", "ochocientos", "novecientos"};

std::string es_below_100(int n) {
    if (n < 30) return std::string(kEsSmall[n]);
    std::string s(kEsTens[n / 10]);
    if (n % 10) s += " y " + std::string(kEsSmall[n % 10]);
    return s;
}

std::string es_below_1000(int n) {
    if (n < 100) return es_below_100(n);
    if (n == 100) return "cien";
    std::string s(kEsHundreds[n / 100]);
    if (n % 100) s += " " + es_below_100(n % 100);
    return s;
}

// "uno" shortens before a masculine noun such as "mil".
std::string es_apocope(std::string s) {
    if (s.size() >= 9 && s.ends_with("veintiuno")) return s.substr(0, s.size() - 9) + "veintiún";
    if (s.ends_with("uno")) return s.substr(0, s.size() - 1);
    return s;
}

std::string spanish(long long n) {
    if (n < 1000) return es_below_1000(static_cast<int>(n));
    const int thousands = static_cast<int>(n / 1000);
    const int rest = static_cast<int>(n % 1000);
    std::string s = thousands == 1 ? "mil" : es_apocope(es_below_1000(thousands)) + " mil";
    if (rest) s += " " + es_below_1000(rest);
    return s;
}

// ---- French (1990 spelling: every compound joined by hyphens) -----------------------

constexpr std::array<std::string_view, 17> kFrSmall = {"zéro", "un", "deux", "trois", "quatre", "cinq",
                                                       "six", "sept", "huit", "neuf", "dix", "onze",
                                                       "douze", "treize", "quatorze", "quinze", "seize"};
constexpr std::array<std::string_view, 7> kFrTens = {"", "", "vingt", "trente", "quarante", "cinquante", "soixante"};

// `final` is true when nothing follows in the whole number (plural -s rules).
std::string fr_below_100(int n, bool final) {
    if (n < 17) return std::string(kFrSmall[n]);
    if (n < 20) return "dix-" + std::string(kFrSmall[n - 10]);
    if (n < 70) {
        std::string s(kFrTens[n / 10]);
        const int u = n % 10;
        if (u == 1) s += "-et-un";
        else if (u) s += "-" + std::string(kFrSmall[u]);
        return s;
    }
    if (n < 80) {
        if (n == 71) return "soixante-et-onze";
        return "soixante-" + fr_below_100(n - 60, final);
    }
    if (n == 80) return final ? "quatre-vingts" : "quatre-vingt";
    return "quatre-vingt-" + fr_below_100(n - 80, final);
}

std::string fr_below_1000(int n, bool final) {
    if (n < 100) return fr_below_100(n, final);
    const int h = n / 100;
    const int rest = n % 100;
    std::string s = h == 1 ? "cent" : std::string(kFrSmall[h]) + "-cent";
    if (rest) return s + "-" + fr_below_100(rest, final);
    if (h > 1 && final) s += "s";
    return s;
}

std::string french(long long n) {
    if (n < 1000) return fr_below_1000(static_cast<int>(n), true);
    const int thousands = static_cast<int>(n / 1000);
    const int rest = static_cast<int>(n % 1000);
    std::string s = thousands == 1 ? "mille" : fr_below_1000(thousands, false) + "-mille";
    if (rest) s += "-" + fr_below_1000(rest, true);
    return s;
}

// ---- Korean (Sino-Korean numerals) --------------------------------------------------

constexpr std::array<std::string_view, 10> kKoDigits = {"영", "일", "이", "삼", "사", "오", "육", "칠", "팔", "구"};

std::string ko_below_10000(int n) {
    static constexpr std::array<std::string_view, 4> units = {"천", "백", "십", ""};
    static constexpr std::array<int, 4> scale = {1000, 100, 10, 1};
    std::string s;
    for (std::size_t k = 0; k < units.size(); ++k) {
        const int d = (n / scale[k]) % 10;
        if (d == 0) continue;
        if (d != 1 || k == 3) s += kKoDigits[d];
        s += units[k];
    }
    return s;
}

std::string korean(long long n) {
    if (n == 0) return std::string(kKoDigits[0]);
    const int man = static_cast<int>(n / 10000);
    const int rest = static_cast<int>(n % 10000);
    std::string s;
    if (man) s = (man == 1 ? std::string() : ko_below_10000(man)) + "만";
    if (rest) {
        if (!s.empty()) s += " ";
        s += ko_below_10000(rest);
    }
    return s;
}

// ---- Japanese (hiragana readings) ---------------------------------------------------

constexpr std::array<std::string_view, 10> kJaDigits = {"ぜろ", "いち", "に", "さん", "よん",
                                                        "ご", "ろく", "なな", "はち", "きゅう"};
constexpr std::array<std::string_view, 10> kJaHundreds = {"", "ひゃく", "にひゃく", "さんびゃく", "よんひゃく",
                                                          "ごひゃく", "ろっぴゃく", "ななひゃく", "はっぴゃく",
                                                          "きゅうひゃく"};
constexpr std::array<std::string_view, 10> kJaThousands = {"", "せん", "にせん", "さんぜん", "よんせん",
                                                           "ごせん", "ろくせん", "ななせん", "はっせん", "きゅうせん"};

std::string ja_below_10000(int n) {
    std::string s;
    s += kJaThousands[n / 1000];
    s += kJaHundreds[(n / 100) % 10];
    const int tens = (n / 10) % 10;
    if (tens) s += (tens == 1 ? std::string() : std::string(kJaDigits[tens])) + "じゅう";
    if (n % 10) s += kJaDigits[n % 10];
    return s;
}

std::string japanese(long long n) {
    if (n == 0) return std::string(kJaDigits[0]);
    const int man = static_cast<int>(n / 10000);
    const int rest = static_cast<int>(n % 10000);
    std::string s;
    if (man) s = ja_below_10000(man) + "まん";
    if (rest) s += ja_below_10000(rest);
    return s;
}

}  // namespace

std::string expand_number(Language lang, long long n) {
    if (n > kMaxExpandableNumber || n < -kMaxExpandableNumber) throw UnsupportedNumberError(n);
    const long long mag = n < 0 ? -n : n;
    std::string words;
    std::string minus;
    switch (lang) {
        case Language::EN: words = english(mag); minus = "minus "; break;
        case Language::ES: words = spanish(mag); minus = "menos "; break;
        case Language::FR: words = french(mag); minus = "moins "; break;
        case Language::KO: words = korean(mag); minus = "마이너스 "; break;
        case Language::JA: words = japanese(mag); minus = "まいなす"; break;
    }
    return n < 0 ? minus + words : words;
}

}  // namespace singable::syllable
