#include "singable/language.hpp"

#include <cctype>

#include "singable/error.hpp"

namespace singable {

std::string_view to_string(Language lang) noexcept {
    switch (lang) {
        case Language::EN: return "EN";
        case Language::ES: return "ES";
        case Language::FR: return "FR";
        case Language::KO: return "KO";
        case Language::JA: return "JA";
    }
    return "??";
}

std::optional<Language> try_parse_language(std::string_view code) noexcept {
    if (code.size() != 2) return std::nullopt;
    const char a = static_cast<char>(std::toupper(static_cast<unsigned char>(code[0])));
    const char b = static_cast<char>(std::toupper(static_cast<unsigned char>(code[1])));
    for (Language lang : kAllLanguages) {
        const auto name = to_string(lang);
        if (name[0] == a && name[1] == b) return lang;
    }
    return std::nullopt;
}

Language parse_language(std::string_view code) {
    if (auto lang = try_parse_language(code)) return *lang;
    throw ValidationError("unknown language code '" + std::string(code) + "' (expected EN, ES, FR, KO or JA)");
}

}  // namespace singable
