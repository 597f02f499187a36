#include "singable/text/utf8.hpp"

namespace singable::text {

std::u32string decode(std::string_view utf8) {
    std::u32string out;
    out.reserve(utf8.size());
    std::size_t i = 0;
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(utf8[k]); };
    while (i < utf8.size()) {
        const unsigned char b0 = byte(i);
        int extra = 0;
        char32_t cp = 0;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            extra = 1;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            extra = 2;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            extra = 3;
            cp = b0 & 0x07;
        } else {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        bool ok = true;
        for (int k = 1; k <= extra; ++k) {
            if (i + k >= utf8.size() || (byte(i + k) & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (byte(i + k) & 0x3F);
        }
        if (!ok) {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += static_cast<std::size_t>(extra) + 1;
    }
    return out;
}

std::string encode(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

std::string encode(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) out += encode(cp);
    return out;
}

char32_t to_lower(char32_t cp) noexcept {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    // Latin-1 uppercase block, except the multiplication sign.
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
    if (cp == 0x178) return 0xFF;   // Ÿ
    if (cp == 0x152) return 0x153;  // Œ
    if (cp == 0x0C6) return 0x0E6;  // Æ (covered above, kept explicit)
    return cp;
}

std::u32string to_lower(std::u32string_view s) {
    std::u32string out(s);
    for (auto& cp : out) cp = to_lower(cp);
    return out;
}

bool is_space(char32_t cp) noexcept {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' ||
           cp == 0x3000 || cp == 0xA0;
}

bool is_digit(char32_t cp) noexcept { return cp >= '0' && cp <= '9'; }

bool is_letter(char32_t cp) noexcept {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7) return true;
    if (is_hangul_syllable(cp) || (cp >= 0x1100 && cp <= 0x11FF) || (cp >= 0x3131 && cp <= 0x318E))
        return true;
    if (is_kana(cp) && cp != 0x30FB) return true;
    return is_cjk_ideograph(cp);
}

char32_t katakana_to_hiragana(char32_t cp) noexcept {
    if (cp >= 0x30A1 && cp <= 0x30F6) return cp - 0x60;
    return cp;
}

std::string_view trim(std::string_view s) noexcept {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> out;
    const auto cps = decode(s);
    std::u32string cur;
    for (char32_t cp : cps) {
        if (is_space(cp)) {
            if (!cur.empty()) out.push_back(encode(cur));
            cur.clear();
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) out.push_back(encode(cur));
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    for (const auto& tok : split_whitespace(s)) {
        if (!out.empty()) out.push_back(' ');
        out += tok;
    }
    return out;
}

}  // namespace singable::text
