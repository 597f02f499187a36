#include "singable/syllable/reading.hpp"

#include <algorithm>

#include "singable/error.hpp"
#include "singable/resources.hpp"
#include "singable/text/utf8.hpp"

namespace singable::syllable {

LexiconReadingProvider LexiconReadingProvider::parse(std::string_view contents, std::string_view origin) {
    LexiconReadingProvider p;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < contents.size()) {
        const auto nl = contents.find('\n', pos);
        auto line = contents.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? contents.size() : nl + 1;
        ++line_no;
        line = text::trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": expected surface<TAB>reading");
        auto surface = text::decode(text::trim(line.substr(0, tab)));
        auto reading = text::decode(text::trim(line.substr(tab + 1)));
        for (auto& cp : reading) cp = text::katakana_to_hiragana(cp);
        p.longest_ = std::max(p.longest_, surface.size());
        p.readings_[std::move(surface)] = std::move(reading);
    }
    return p;
}

LexiconReadingProvider LexiconReadingProvider::load(const std::string& path) {
    return parse(resources::read_file(path), path);
}

const LexiconReadingProvider& LexiconReadingProvider::builtin() {
    static const LexiconReadingProvider instance = parse(resources::get("readings/ja.tsv"), "readings/ja.tsv");
    return instance;
}

std::u32string LexiconReadingProvider::to_kana(std::u32string_view text) const {
    std::u32string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!text::is_cjk_ideograph(text[i])) {
            out.push_back(text[i++]);
            continue;
        }
        bool replaced = false;
        for (std::size_t len = std::min(longest_, text.size() - i); len > 0; --len) {
            auto it = readings_.find(std::u32string(text.substr(i, len)));
            if (it != readings_.end()) {
                out += it->second;
                i += len;
                replaced = true;
                break;
            }
        }
        if (!replaced) out.push_back(text[i++]);
    }
    return out;
}

}  // namespace singable::syllable
