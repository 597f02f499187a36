#include "singable/pipeline/trace.hpp"

#include <algorithm>

#include <json.hpp>

namespace singable::pipeline {

namespace {

constexpr std::string_view kStepTarget = "Generate the Target Language";
constexpr std::string_view kStepRefine = "Iterate and Refine";
constexpr std::string_view kStepFinal = "Generate the Final Translation";

constexpr std::string_view kLeftCurly = "“";
constexpr std::string_view kRightCurly = "”";

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size() && is_ws(s[i])) ++i;
}

// One quoted item at s[i]; advances i past the closing quote.
std::optional<std::string> quoted(std::string_view s, std::size_t& i) {
    if (i < s.size() && (s[i] == '"' || s[i] == '\'')) {
        const char q = s[i];
        std::string out;
        for (std::size_t k = i + 1; k < s.size(); ++k) {
            if (s[k] == '\\' && k + 1 < s.size()) {
                out.push_back(s[++k]);
            } else if (s[k] == q) {
                i = k + 1;
                return out;
            } else if (s[k] == '\n') {
                return std::nullopt;
            } else {
                out.push_back(s[k]);
            }
        }
        return std::nullopt;
    }
    if (s.substr(i, kLeftCurly.size()) == kLeftCurly) {
        const std::size_t start = i + kLeftCurly.size();
        const std::size_t end = s.find(kRightCurly, start);
        if (end == std::string_view::npos) return std::nullopt;
        const auto item = s.substr(start, end - start);
        if (item.find('\n') != std::string_view::npos) return std::nullopt;
        i = end + kRightCurly.size();
        return std::string(item);
    }
    return std::nullopt;
}

std::optional<std::vector<std::string>> list_at(std::string_view s, std::size_t i) {
    std::vector<std::string> items;
    ++i;  // '['
    skip_ws(s, i);
    while (true) {
        auto item = quoted(s, i);
        if (!item) return std::nullopt;
        items.push_back(std::move(*item));
        skip_ws(s, i);
        if (i >= s.size()) return std::nullopt;
        if (s[i] == ']') return items;
        if (s[i] != ',') return std::nullopt;
        ++i;
        skip_ws(s, i);
    }
}

// End of the balanced {...} starting at `open`, skipping JSON strings.
std::optional<std::size_t> object_end(std::string_view s, std::size_t open) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t k = open; k < s.size(); ++k) {
        const char c = s[k];
        if (in_string) {
            if (c == '\\') ++k;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == '{') ++depth;
        else if (c == '}' && --depth == 0) return k + 1;
    }
    return std::nullopt;
}

bool contiguous_part_of(const std::vector<std::string>& part, const std::vector<std::string>& whole) {
    return part.size() < whole.size() && std::search(whole.begin(), whole.end(), part.begin(), part.end()) != whole.end();
}

// Repeats of the previous round are restatements, and a proper slice of an earlier
// list is commentary on that list rather than a new candidate.
std::vector<RefinementRound> rounds_from(const std::vector<const SyllableList*>& lists,
                                         const std::optional<std::vector<std::string>>& target) {
    std::vector<RefinementRound> rounds;
    for (const auto* l : lists) {
        if (!rounds.empty() && rounds.back().syllables == l->items) continue;
        bool slice = target && contiguous_part_of(l->items, *target);
        for (const auto& r : rounds) slice = slice || contiguous_part_of(l->items, r.syllables);
        if (slice) continue;
        rounds.push_back({l->items, l->items.size()});
    }
    return rounds;
}

}  // namespace

std::vector<SyllableList> extract_syllable_lists(std::string_view raw) {
    std::vector<SyllableList> out;
    for (std::size_t pos = raw.find('['); pos != std::string_view::npos; pos = raw.find('[', pos + 1)) {
        if (auto items = list_at(raw, pos)) out.push_back({pos, std::move(*items)});
    }
    return out;
}

std::optional<std::string> extract_final_answer(std::string_view raw) {
    std::optional<std::string> last;
    for (std::size_t pos = raw.find('{'); pos != std::string_view::npos; pos = raw.find('{', pos + 1)) {
        const auto end = object_end(raw, pos);
        if (!end) continue;
        const auto parsed = nlohmann::json::parse(raw.substr(pos, *end - pos), nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object()) continue;
        const auto it = parsed.find("translation");
        if (it != parsed.end() && it->is_string()) last = it->get<std::string>();
    }
    return last;
}

StageTrace parse_trace_partial(std::string_view raw) {
    StageTrace trace;
    trace.raw_text = std::string(raw);
    trace.final_translation = extract_final_answer(raw);

    const auto lists = extract_syllable_lists(raw);
    const auto npos = std::string_view::npos;
    const std::size_t s2 = raw.find(kStepTarget);
    const std::size_t s3 = raw.find(kStepRefine, s2 == npos ? 0 : s2);
    const std::size_t s4 = raw.find(kStepFinal, s3 != npos ? s3 : s2 == npos ? 0 : s2);

    if (s2 == npos && s3 == npos && s4 == npos) {
        if (lists.size() > 0) trace.source_segmentation = lists[0].items;
        if (lists.size() > 1) trace.target_syllable_list = lists[1].items;
        std::vector<const SyllableList*> rest;
        for (std::size_t k = 2; k < lists.size(); ++k) rest.push_back(&lists[k]);
        trace.refinement_rounds = rounds_from(rest, trace.target_syllable_list);
        return trace;
    }

    const std::size_t end1 = std::min({s2, s3, s4, raw.size()});
    const std::size_t end2 = std::min({s3, s4, raw.size()});
    const std::size_t end3 = std::min(s4, raw.size());
    std::vector<const SyllableList*> refine;
    for (const auto& l : lists) {
        if (l.offset < end1) {
            if (!trace.source_segmentation) trace.source_segmentation = l.items;
        } else if (s2 != npos && l.offset >= s2 && l.offset < end2) {
            trace.target_syllable_list = l.items;
        } else if (s3 != npos && l.offset >= s3 && l.offset < end3) {
            refine.push_back(&l);
        }
    }
    trace.refinement_rounds = rounds_from(refine, trace.target_syllable_list);
    return trace;
}

StageTrace parse_trace(std::string_view raw) {
    auto trace = parse_trace_partial(raw);
    if (!trace.final_translation) throw MissingFinalAnswerError(std::move(trace));
    return trace;
}

}  // namespace singable::pipeline
