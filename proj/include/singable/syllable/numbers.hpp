#pragma once

#include <string>

#include "singable/language.hpp"

namespace singable::syllable {

inline constexpr long long kMaxExpandableNumber = 999'999;

/// Cardinal number words in the language's orthography. FR uses the 1990
/// hyphenation ("vingt-et-un"), JA is written in hiragana, KO in Sino-Korean Hangul.
/// Throws UnsupportedNumberError when |n| > 999,999.
std::string expand_number(Language lang, long long n);

}  // namespace singable::syllable
