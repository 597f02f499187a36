#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace singable {

/// The five supported languages. EN is the original-language role.
enum class Language { EN, ES, FR, KO, JA };

inline constexpr std::array<Language, 5> kAllLanguages = {Language::EN, Language::ES, Language::FR,
                                                          Language::KO, Language::JA};

std::string_view to_string(Language lang) noexcept;

/// Case-insensitive; accepts "en", "EN", "En".
std::optional<Language> try_parse_language(std::string_view code) noexcept;

/// Throws ValidationError on unknown codes.
Language parse_language(std::string_view code);

/// Languages whose lines are tokenized on whitespace.
constexpr bool is_space_delimited(Language lang) noexcept { return lang != Language::JA; }

}  // namespace singable
