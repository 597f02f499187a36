#include "singable/data/dataset.hpp"
#include "singable/error.hpp"
#include "singable/text/utf8.hpp"

namespace singable::data {

namespace {

std::u32string first_char(std::string_view s) {
    const auto cps = text::decode(s);
    return cps.empty() ? std::u32string{} : std::u32string(1, cps.front());
}

std::vector<std::string> line_tokens(Language lang, std::string_view text, const Tokenizer& tokenizer) {
    if (is_space_delimited(lang)) return text::split_whitespace(text);
    if (!tokenizer.morphological()) {
        throw PreconditionError("JA lines require a morphological tokenizer, got '" +
                                std::string(tokenizer.name()) + "'");
    }
    const auto morphemes = tokenizer.tokenize(text);
    std::vector<std::string> pairs;
    pairs.reserve((morphemes.size() + 1) / 2);
    for (std::size_t i = 0; i < morphemes.size(); i += 2) {
        std::string joined = morphemes[i];
        if (i + 1 < morphemes.size()) joined += morphemes[i + 1];
        pairs.push_back(std::move(joined));
    }
    return pairs;
}

}  // namespace

void validate(const CompactLineRep& rep) {
    if (rep.token_count < 1) throw ValidationError("compact rep has no tokens");
    const auto sig = text::decode(rep.signature);
    if (sig.size() != rep.token_count) {
        throw ValidationError("signature length " + std::to_string(sig.size()) + " != token count " +
                              std::to_string(rep.token_count));
    }
    if (rep.first_token.empty() || rep.last_token.empty()) {
        throw ValidationError("compact rep has an empty first/last token");
    }
    if (first_char(rep.first_token) != std::u32string(1, sig.front())) {
        throw ValidationError("first token '" + rep.first_token + "' does not start with signature character");
    }
    if (first_char(rep.last_token) != std::u32string(1, sig.back())) {
        throw ValidationError("last token '" + rep.last_token + "' does not start with final signature character");
    }
    if (rep.token_count == 1 && rep.first_token != rep.last_token) {
        throw ValidationError("single-token rep must have first == last");
    }
}

CompactLineRep encode_line(Language lang, std::string_view text_in, const Tokenizer& tokenizer) {
    if (text::trim(text_in).empty() || text::split_whitespace(text_in).empty()) throw EmptyLineError();
    const auto tokens = line_tokens(lang, text_in, tokenizer);
    if (tokens.empty()) throw EmptyLineError();
    CompactLineRep rep;
    std::u32string sig;
    for (const auto& tok : tokens) sig += first_char(tok);
    rep.signature = text::encode(sig);
    rep.first_token = tokens.front();
    rep.last_token = tokens.back();
    rep.token_count = tokens.size();
    return rep;
}

bool match_line(const CompactLineRep& rep, std::string_view candidate, Language lang,
                const Tokenizer& tokenizer) noexcept {
    try {
        return encode_line(lang, candidate, tokenizer) == rep;
    } catch (...) {
        return false;
    }
}

Reconstruction reconstruct_song(const SongEntry& entry, const std::vector<std::string>& candidate_lines,
                                const Tokenizer& tokenizer) {
    Reconstruction out{entry, {}};
    std::size_t cursor = 0;
    for (auto& section : out.resolved.sections) {
        for (auto& line : section.lines) {
            bool matched = false;
            for (std::size_t j = cursor; j < candidate_lines.size(); ++j) {
                if (match_line(line.rep, candidate_lines[j], entry.language, tokenizer)) {
                    line.resolved_text = std::string(text::trim(candidate_lines[j]));
                    cursor = j + 1;
                    matched = true;
                    break;
                }
            }
            if (!matched && !line.resolved_text) out.unmatched.push_back({section.index, line.index});
        }
    }
    return out;
}

std::size_t SongEntry::line_count() const noexcept {
    std::size_t n = 0;
    for (const auto& s : sections) n += s.lines.size();
    return n;
}

StatsReport dataset_stats(const Dataset& d) {
    StatsReport report;
    for (Language lang : kAllLanguages) report.per_language[lang] = {};
    for (const auto& [id, langs] : d.songs) {
        for (const auto& [lang, entry] : langs) {
            auto& s = report.per_language[lang];
            ++s.songs;
            s.sections += entry.sections.size();
            s.lines += entry.line_count();
        }
    }
    return report;
}

}  // namespace singable::data
