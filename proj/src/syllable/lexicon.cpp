#include "singable/syllable/lexicon.hpp"

#include <charconv>

#include "singable/error.hpp"
#include "singable/resources.hpp"
#include "singable/text/utf8.hpp"

namespace singable::syllable {

Lexicon Lexicon::parse(std::string_view contents, std::string_view origin) {
    Lexicon lex;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= contents.size()) {
        const auto nl = contents.find('\n', pos);
        std::string_view line = contents.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? contents.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
        const auto tab = line.find('\t');
        const auto where = std::string(origin) + ":" + std::to_string(line_no);
        if (tab == std::string_view::npos) throw ConfigError(where + ": expected word<TAB>value");
        const auto key = text::to_lower(text::decode(text::trim(line.substr(0, tab))));
        const auto value = text::trim(line.substr(tab + 1));
        if (key.empty() || value.empty()) throw ConfigError(where + ": empty word or value");
        Entry entry;
        std::size_t count = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), count);
        if (ec == std::errc() && ptr == value.data() + value.size()) {
            if (count == 0) throw ConfigError(where + ": syllable count must be positive");
            entry.count = count;
        } else {
            std::vector<std::u32string> units;
            std::u32string joined;
            std::u32string cur;
            for (char32_t cp : text::to_lower(text::decode(value))) {
                if (cp == U'|') {
                    units.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(cp == U'’' ? U'\'' : cp);
                }
            }
            units.push_back(cur);
            for (const auto& u : units) {
                if (u.empty()) throw ConfigError(where + ": empty syllable");
                joined += u;
            }
            std::u32string normalized_key = key;
            for (auto& cp : normalized_key) if (cp == U'’') cp = U'\'';
            if (joined != normalized_key) throw ConfigError(where + ": syllables do not spell the word");
            entry.count = units.size();
            entry.units = std::move(units);
        }
        std::u32string k = key;
        for (auto& cp : k) if (cp == U'’') cp = U'\'';
        lex.entries_[k] = std::move(entry);
    }
    return lex;
}

Lexicon Lexicon::load(const std::string& path) { return parse(resources::read_file(path), path); }

const Lexicon::Entry* Lexicon::find(std::u32string_view key) const {
    auto it = entries_.find(std::u32string(key));
    return it == entries_.end() ? nullptr : &it->second;
}

void Lexicon::merge(const Lexicon& other) {
    for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

}  // namespace singable::syllable
