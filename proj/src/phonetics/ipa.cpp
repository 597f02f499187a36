#include "singable/phonetics/ipa.hpp"

#include <cstdint>
#include <unordered_map>

#include "singable/kernels/kernels.hpp"
#include "singable/text/utf8.hpp"

namespace singable::phonetics {

IpaString IpaString::parse(std::string_view spaced) { return IpaString{text::split_whitespace(spaced)}; }

std::string IpaString::str() const {
    std::string out;
    for (const auto& s : symbols) {
        if (!out.empty()) out.push_back(' ');
        out += s;
    }
    return out;
}

std::size_t edit_distance(const IpaString& a, const IpaString& b) {
    std::unordered_map<std::string_view, std::int32_t> ids;
    const auto intern = [&](const IpaString& s) {
        std::vector<std::int32_t> out;
        out.reserve(s.size());
        for (const auto& sym : s.symbols) {
            const auto [it, _] = ids.try_emplace(sym, static_cast<std::int32_t>(ids.size()));
            out.push_back(it->second);
        }
        return out;
    };
    const auto ia = intern(a);
    const auto ib = intern(b);
    return kernels::levenshtein(ia.data(), ia.size(), ib.data(), ib.size());
}

}  // namespace singable::phonetics
