#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace singable::text {

/// Decodes UTF-8. Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string decode(std::string_view utf8);

std::string encode(std::u32string_view cps);
std::string encode(char32_t cp);

/// Lowercases ASCII, Latin-1 and the Latin Extended letters used by ES/FR.
char32_t to_lower(char32_t cp) noexcept;
std::u32string to_lower(std::u32string_view s);

bool is_space(char32_t cp) noexcept;

/// Alphabetic in any of the supported scripts (Latin, Hangul, kana, CJK ideographs).
bool is_letter(char32_t cp) noexcept;
bool is_digit(char32_t cp) noexcept;

constexpr bool is_hangul_syllable(char32_t cp) noexcept { return cp >= 0xAC00 && cp <= 0xD7A3; }
constexpr bool is_hiragana(char32_t cp) noexcept { return cp >= 0x3041 && cp <= 0x309F; }
constexpr bool is_katakana(char32_t cp) noexcept {
    return (cp >= 0x30A0 && cp <= 0x30FF) || (cp >= 0x31F0 && cp <= 0x31FF);
}
constexpr bool is_kana(char32_t cp) noexcept { return is_hiragana(cp) || is_katakana(cp); }
constexpr bool is_cjk_ideograph(char32_t cp) noexcept {
    return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF) || cp == 0x3005;
}

/// Maps katakana U+30A1..U+30F6 onto hiragana; other code points pass through.
char32_t katakana_to_hiragana(char32_t cp) noexcept;

std::string_view trim(std::string_view s) noexcept;

/// Splits on Unicode whitespace (ASCII space class, U+3000, U+00A0).
std::vector<std::string> split_whitespace(std::string_view s);

/// Collapses runs of whitespace to one ASCII space and trims.
std::string collapse_whitespace(std::string_view s);

}  // namespace singable::text
