#include "singable/phonetics/g2p.hpp"

#include <algorithm>

#include "singable/error.hpp"
#include "singable/resources.hpp"
#include "singable/text/utf8.hpp"

namespace singable::phonetics {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return out;
}

std::vector<ContextElement> parse_context(std::u32string_view s, const std::string& where, std::size_t offset) {
    std::vector<ContextElement> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ContextElement e;
        switch (s[i]) {
            case U'#': e.kind = ContextElement::Kind::boundary; break;
            case U'V': e.kind = ContextElement::Kind::vowel; break;
            case U'C': e.kind = ContextElement::Kind::consonant; break;
            case U'[': {
                const auto close = s.find(U']', i);
                if (close == std::u32string_view::npos) throw ParseError(where + ": unterminated '['", offset);
                auto body = s.substr(i + 1, close - i - 1);
                e.kind = ContextElement::Kind::set;
                if (!body.empty() && body.front() == U'^') {
                    e.kind = ContextElement::Kind::negated_set;
                    body.remove_prefix(1);
                }
                e.chars = text::to_lower(body);
                i = close;
                break;
            }
            default:
                e.kind = ContextElement::Kind::literal;
                e.chars = std::u32string(1, text::to_lower(s[i]));
        }
        out.push_back(std::move(e));
    }
    return out;
}

bool is_punctuation(char32_t cp) {
    if (cp < 0x80) return cp > 0x20 && !((cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z'));
    if (cp == 0x3005) return false;
    return (cp >= 0xA1 && cp <= 0xBF) || (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x3000 && cp <= 0x303F) ||
           (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) || cp == 0x30FB || cp == 0xD7 ||
           cp == 0xF7;
}

void append_jamo(char32_t block, std::u32string& out) {
    const char32_t s = block - 0xAC00;
    out.push_back(0x1100 + s / 588);
    out.push_back(0x1161 + (s % 588) / 28);
    if (s % 28 != 0) out.push_back(0x11A7 + s % 28);
}

// Word-level spelling the rule tables operate on.
std::u32string prepare(Language lang, std::u32string_view word) {
    std::u32string out;
    for (char32_t cp : word) {
        if (cp == U'\'' || cp == U'’') continue;
        if (lang == Language::KO && text::is_hangul_syllable(cp)) {
            append_jamo(cp, out);
        } else if (lang == Language::JA) {
            out.push_back(text::katakana_to_hiragana(cp));
        } else {
            out.push_back(text::to_lower(cp));
        }
    }
    return out;
}

}  // namespace

G2PRuleSet G2PRuleSet::parse(Language lang, std::string_view text_in, std::string_view origin) {
    G2PRuleSet set;
    set.language_ = lang;
    bool explicit_alphabet = false;
    std::size_t offset = 0;
    std::size_t line_no = 0;
    while (offset <= text_in.size()) {
        const auto nl = text_in.find('\n', offset);
        std::string_view line = text_in.substr(offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset);
        const std::size_t line_offset = offset;
        offset = nl == std::string_view::npos ? text_in.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (text::trim(line).empty() || line.front() == '#') continue;
        const std::string where = std::string(origin) + ":" + std::to_string(line_no);
        const auto fields = split_tabs(line);

        if (line.front() == '@') {
            if (fields.size() != 2) throw ParseError(where + ": directive needs one tab-separated value", line_offset);
            const auto chars = text::to_lower(text::decode(fields[1]));
            if (fields[0] == "@vowels") {
                set.vowels_.insert(chars.begin(), chars.end());
            } else if (fields[0] == "@alphabet") {
                set.alphabet_.insert(chars.begin(), chars.end());
                explicit_alphabet = true;
            } else {
                throw ParseError(where + ": unknown directive " + std::string(fields[0]), line_offset);
            }
            continue;
        }
        if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || text::trim(fields[1]).empty())
            throw ParseError(where + ": expected grapheme<TAB>ipa[<TAB>left/right]", line_offset);

        G2PRule rule;
        rule.line = line_no;
        rule.grapheme = text::to_lower(text::decode(fields[0]));
        if (text::trim(fields[1]) != "-") rule.output = text::split_whitespace(fields[1]);
        if (fields.size() == 3) {
            const auto ctx = text::decode(fields[2]);
            const auto slash = ctx.find(U'/');
            if (slash == std::u32string::npos) throw ParseError(where + ": context needs 'left/right'", line_offset);
            rule.left = parse_context(std::u32string_view(ctx).substr(0, slash), where, line_offset);
            rule.right = parse_context(std::u32string_view(ctx).substr(slash + 1), where, line_offset);
        }
        set.rules_.push_back(std::move(rule));
    }

    for (std::size_t i = 0; i < set.rules_.size(); ++i) set.by_first_[set.rules_[i].grapheme.front()].push_back(i);
    for (auto& [first, idx] : set.by_first_) {
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
            return set.rules_[x].grapheme.size() > set.rules_[y].grapheme.size();
        });
    }

    if (!explicit_alphabet) {
        for (const auto& r : set.rules_) set.alphabet_.insert(r.grapheme.begin(), r.grapheme.end());
    }
    for (char32_t letter : set.alphabet_) {
        const auto it = set.by_first_.find(letter);
        const bool covered = it != set.by_first_.end() &&
                             std::any_of(it->second.begin(), it->second.end(), [&](std::size_t i) {
                                 const auto& r = set.rules_[i];
                                 return r.grapheme.size() == 1 && r.left.empty() && r.right.empty();
                             });
        if (!covered)
            throw ValidationError(std::string(origin) + ": no default rule for letter '" + text::encode(letter) + "'");
    }
    return set;
}

G2PRuleSet G2PRuleSet::load(Language lang, const std::string& path) {
    return parse(lang, resources::read_file(path), path);
}

const G2PRuleSet& G2PRuleSet::builtin(Language lang) { return builtin_rule_sets().at(lang); }

const RuleSets& builtin_rule_sets() {
    static const RuleSets sets = [] {
        RuleSets out;
        for (Language lang : kAllLanguages) {
            std::string name(to_string(lang));
            std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
            const std::string res = "g2p/" + name + ".tsv";
            out.emplace(lang, G2PRuleSet::parse(lang, resources::get(res), res));
        }
        return out;
    }();
    return sets;
}

bool G2PRuleSet::element_matches(const ContextElement& e, char32_t c) const {
    switch (e.kind) {
        case ContextElement::Kind::literal: return e.chars.front() == c;
        case ContextElement::Kind::vowel: return is_vowel(c);
        case ContextElement::Kind::consonant: return in_alphabet(c) && !is_vowel(c);
        case ContextElement::Kind::set: return e.chars.find(c) != std::u32string::npos;
        case ContextElement::Kind::negated_set: return e.chars.find(c) == std::u32string::npos;
        case ContextElement::Kind::boundary: return false;
    }
    return false;
}

bool G2PRuleSet::left_matches(const std::vector<ContextElement>& ctx, std::u32string_view word, std::size_t pos) const {
    std::ptrdiff_t p = static_cast<std::ptrdiff_t>(pos) - 1;
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
        if (it->kind == ContextElement::Kind::boundary) {
            if (p != -1) return false;
            continue;
        }
        if (p < 0 || !element_matches(*it, word[static_cast<std::size_t>(p)])) return false;
        --p;
    }
    return true;
}

bool G2PRuleSet::right_matches(const std::vector<ContextElement>& ctx, std::u32string_view word, std::size_t pos) const {
    std::size_t p = pos;
    for (const auto& e : ctx) {
        if (e.kind == ContextElement::Kind::boundary) {
            if (p != word.size()) return false;
            continue;
        }
        if (p >= word.size() || !element_matches(e, word[p])) return false;
        ++p;
    }
    return true;
}

long G2PRuleSet::match(std::u32string_view word, std::size_t pos) const {
    const auto it = by_first_.find(word[pos]);
    if (it == by_first_.end()) return -1;
    for (std::size_t idx : it->second) {
        const auto& r = rules_[idx];
        if (word.substr(pos, r.grapheme.size()) != r.grapheme) continue;
        if (left_matches(r.left, word, pos) && right_matches(r.right, word, pos + r.grapheme.size()))
            return static_cast<long>(idx);
    }
    return -1;
}

Transcription transcribe_detailed(Language lang, std::string_view text_in, const G2PRuleSet& rules) {
    if (rules.language() != lang)
        throw MissingRulesError("rule set is for " + std::string(to_string(rules.language())) + ", not " +
                                std::string(to_string(lang)));
    Transcription t;
    const auto cps = text::decode(text_in);
    std::u32string word;
    const auto flush = [&] {
        const auto w = prepare(lang, word);
        word.clear();
        for (std::size_t i = 0; i < w.size();) {
            const long r = rules.match(w, i);
            if (r < 0) {
                ++t.dropped;
                ++i;
                continue;
            }
            const auto& rule = rules.rules()[static_cast<std::size_t>(r)];
            t.ipa.symbols.insert(t.ipa.symbols.end(), rule.output.begin(), rule.output.end());
            i += rule.grapheme.size();
        }
    };
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t cp = cps[i];
        const bool apostrophe = (cp == U'\'' || cp == U'’') && !word.empty() && i + 1 < cps.size() &&
                                text::is_letter(cps[i + 1]);
        if (text::is_space(cp) || (is_punctuation(cp) && !apostrophe)) {
            flush();
        } else {
            word.push_back(cp);
        }
    }
    flush();
    return t;
}

IpaString transcribe(Language lang, std::string_view text_in, const G2PRuleSet& rules) {
    return transcribe_detailed(lang, text_in, rules).ipa;
}

std::size_t phonetic_distance(Language lang_gt, std::string_view gt, Language lang_pred, std::string_view pred,
                              const RuleSets& rules_by_lang) {
    const auto gt_rules = rules_by_lang.find(lang_gt);
    if (gt_rules == rules_by_lang.end())
        throw MissingRulesError("no G2P rules for " + std::string(to_string(lang_gt)));
    const auto pred_rules = rules_by_lang.find(lang_pred);
    if (pred_rules == rules_by_lang.end())
        throw MissingRulesError("no G2P rules for " + std::string(to_string(lang_pred)));
    return edit_distance(transcribe(lang_gt, gt, gt_rules->second), transcribe(lang_pred, pred, pred_rules->second));
}

}  // namespace singable::phonetics
