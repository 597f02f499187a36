#include "singable/data/tokenizer.hpp"

#include "singable/text/utf8.hpp"

namespace singable::data {

std::vector<std::string> WhitespaceTokenizer::tokenize(std::string_view text) const {
    return text::split_whitespace(text);
}

std::vector<std::string> PreSegmentedTokenizer::tokenize(std::string_view text) const {
    std::vector<std::string> out;
    std::u32string cur;
    for (char32_t cp : text::decode(text)) {
        if (text::is_space(cp) || cp == U'|') {
            if (!cur.empty()) out.push_back(text::encode(cur));
            cur.clear();
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) out.push_back(text::encode(cur));
    return out;
}

namespace {

enum class Script { kanji, hiragana, katakana, other_letter, separator };

Script classify(char32_t cp) {
    if (text::is_cjk_ideograph(cp)) return Script::kanji;
    if (text::is_hiragana(cp)) return Script::hiragana;
    // U+30FC (prolonged sound mark) is used with both kana; it joins the current run.
    if (text::is_katakana(cp) && cp != 0x30FB) return Script::katakana;
    if (text::is_letter(cp) || text::is_digit(cp) || cp == '\'') return Script::other_letter;
    return Script::separator;
}

}  // namespace

std::vector<std::string> ScriptRunTokenizer::tokenize(std::string_view text) const {
    std::vector<std::string> out;
    std::u32string cur;
    Script cur_script = Script::separator;
    const auto flush = [&] {
        if (!cur.empty()) out.push_back(text::encode(cur));
        cur.clear();
        cur_script = Script::separator;
    };
    for (char32_t cp : text::decode(text)) {
        Script s = classify(cp);
        if (cp == 0x30FC && cur_script != Script::separator) s = cur_script;
        if (s == Script::separator) {
            flush();
            continue;
        }
        const bool joins = cur_script == s || (cur_script == Script::kanji && s == Script::hiragana);
        if (!joins) {
            flush();
        }
        cur.push_back(cp);
        // A kanji run followed by hiragana stays open for further hiragana only.
        cur_script = s;
    }
    flush();
    return out;
}

const Tokenizer& default_tokenizer() noexcept {
    static const ScriptRunTokenizer instance;
    return instance;
}

}  // namespace singable::data
