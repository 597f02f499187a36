#include "singable/pipeline/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>

#include "singable/error.hpp"
#include "singable/resources.hpp"
#include "singable/text/utf8.hpp"

namespace singable::pipeline {

namespace {

constexpr const char* kTemplateNames[] = {"cot.txt", "constrained.txt", "plain.txt", "corrective_count.txt",
                                          "corrective_format.txt"};

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Tag {
    std::size_t begin = 0;  // position of "{{"
    std::size_t end = 0;    // one past "}}"
    char sigil = 0;         // '#', '^' or '/'
    std::string name;
};

std::optional<Tag> next_tag(std::string_view tpl, std::size_t from) {
    for (std::size_t pos = tpl.find("{{", from); pos != std::string_view::npos; pos = tpl.find("{{", pos + 1)) {
        if (pos + 2 >= tpl.size()) return std::nullopt;
        const char sigil = tpl[pos + 2];
        if (sigil != '#' && sigil != '^' && sigil != '/') continue;
        std::size_t k = pos + 3;
        while (k < tpl.size() && is_name_char(tpl[k])) ++k;
        if (k == pos + 3 || tpl.substr(k, 2) != "}}") continue;
        return Tag{pos, k + 2, sigil, std::string(tpl.substr(pos + 3, k - pos - 3))};
    }
    return std::nullopt;
}

// Widens a tag to its whole line when nothing else is on that line.
std::pair<std::size_t, std::size_t> standalone_extent(std::string_view tpl, const Tag& tag) {
    std::size_t line_begin = tag.begin;
    while (line_begin > 0 && tpl[line_begin - 1] != '\n') --line_begin;
    std::size_t line_end = tag.end;
    while (line_end < tpl.size() && tpl[line_end] != '\n') ++line_end;
    const auto blank = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i)
            if (tpl[i] != ' ' && tpl[i] != '\t' && tpl[i] != '\r') return false;
        return true;
    };
    if (!blank(line_begin, tag.begin) || !blank(tag.end, line_end)) return {tag.begin, tag.end};
    return {line_begin, line_end < tpl.size() ? line_end + 1 : line_end};
}

std::string render_sections(std::string_view tpl, const std::map<std::string, bool>& flags) {
    std::string out;
    std::size_t pos = 0;
    while (auto tag = next_tag(tpl, pos)) {
        const auto [open_begin, open_end] = standalone_extent(tpl, *tag);
        out.append(tpl.substr(pos, open_begin - pos));
        if (tag->sigil == '/') throw ConfigError("template: unexpected {{/" + tag->name + "}}");

        // find the matching close tag, honouring nesting of the same name
        int depth = 1;
        std::size_t scan = tag->end;
        std::optional<Tag> close;
        while (auto t = next_tag(tpl, scan)) {
            scan = t->end;
            if (t->name != tag->name) continue;
            if (t->sigil == '/') {
                if (--depth == 0) {
                    close = t;
                    break;
                }
            } else {
                ++depth;
            }
        }
        if (!close) throw ConfigError("template: unclosed section " + tag->name);
        const auto [close_begin, close_end] = standalone_extent(tpl, *close);

        const auto it = flags.find(tag->name);
        const bool value = it != flags.end() && it->second;
        if (value == (tag->sigil == '#')) out += render_sections(tpl.substr(open_end, close_begin - open_end), flags);
        pos = close_end;
    }
    out.append(tpl.substr(pos));
    return out;
}

std::string template_key(const std::string& name) {
    auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

}  // namespace

std::string Modalities::label() const {
    std::string s = "T";
    if (audio) s += "+A";
    if (video) s += "+V";
    return s;
}

Modalities Modalities::parse(std::string_view label) {
    Modalities m;
    bool text = false;
    std::size_t start = 0;
    while (start <= label.size()) {
        std::size_t plus = label.find('+', start);
        if (plus == std::string_view::npos) plus = label.size();
        std::string part(label.substr(start, plus - start));
        std::transform(part.begin(), part.end(), part.begin(), [](unsigned char c) { return std::toupper(c); });
        if (part == "T") text = true;
        else if (part == "A") m.audio = true;
        else if (part == "V") m.video = true;
        else throw ConfigError("unknown modality '" + part + "' in '" + std::string(label) + "'");
        start = plus + 1;
    }
    if (!text) throw ConfigError("modalities must include T: '" + std::string(label) + "'");
    return m;
}

std::string_view to_string(PromptStyle style) noexcept {
    switch (style) {
        case PromptStyle::chain_of_thought: return "cot";
        case PromptStyle::syllable_constrained: return "constrained";
        case PromptStyle::plain: return "plain";
    }
    return "?";
}

PromptStyle parse_prompt_style(std::string_view s) {
    if (s == "cot") return PromptStyle::chain_of_thought;
    if (s == "constrained") return PromptStyle::syllable_constrained;
    if (s == "plain") return PromptStyle::plain;
    throw ConfigError("unknown prompt style '" + std::string(s) + "' (cot, constrained, plain)");
}

std::string PipelineVariant::grid_label() const {
    std::string s = use_syllable_list ? "✓" : "✗";
    s += use_refine ? "✓" : "✗";
    return s;
}

std::string PipelineVariant::slug() const {
    std::string s(to_string(style));
    if (style == PromptStyle::chain_of_thought) {
        s += use_syllable_list ? "-list" : "-nolist";
        s += use_refine ? "-refine" : "-norefine";
    }
    return s + "-" + modalities.label();
}

std::string_view language_name(Language lang) noexcept {
    switch (lang) {
        case Language::EN: return "English";
        case Language::ES: return "Spanish";
        case Language::FR: return "French";
        case Language::KO: return "Korean";
        case Language::JA: return "Japanese";
    }
    return "?";
}

void TranslationTask::validate() const {
    if (text::trim(source_text).empty()) throw PreconditionError("translation task has an empty source line");
    if (source_lang == target_lang)
        throw PreconditionError("source and target language are both " + std::string(to_string(source_lang)));
    if (required_count == 0) throw PreconditionError("required syllable count must be positive");
}

TranslationTask TranslationTask::make(std::string task_id, std::string source_text, Language source, Language target,
                                      std::optional<std::size_t> override_count,
                                      const syllable::Syllabifier& syllabifier) {
    TranslationTask t;
    t.task_id = std::move(task_id);
    t.required_count = override_count ? *override_count : syllabifier.count(source, source_text);
    t.source_text = std::move(source_text);
    t.source_lang = source;
    t.target_lang = target;
    t.validate();
    return t;
}

std::string render_template(std::string_view tpl, const std::map<std::string, std::string>& vars,
                            const std::map<std::string, bool>& flags) {
    const std::string body = render_sections(tpl, flags);
    std::string out;
    out.reserve(body.size());
    for (std::size_t i = 0; i < body.size();) {
        if (body[i] == '{') {
            std::size_t k = i + 1;
            while (k < body.size() && is_name_char(body[k])) ++k;
            if (k > i + 1 && k < body.size() && body[k] == '}') {
                const auto it = vars.find(body.substr(i + 1, k - i - 1));
                if (it != vars.end()) {
                    out += it->second;
                    i = k + 1;
                    continue;
                }
            }
        }
        out.push_back(body[i++]);
    }
    return out;
}

const PromptTemplates& PromptTemplates::builtin() {
    static const PromptTemplates instance = [] {
        PromptTemplates t;
        for (const char* name : kTemplateNames) {
            const auto text = resources::get(std::string("templates/") + name);
            if (text.empty()) throw ConfigError(std::string("built-in template missing: ") + name);
            t.texts_[template_key(name)] = std::string(text);
        }
        return t;
    }();
    return instance;
}

PromptTemplates PromptTemplates::from_dir(const std::string& dir) {
    PromptTemplates t = builtin();
    for (const char* name : kTemplateNames) {
        const auto path = std::filesystem::path(dir) / name;
        if (std::filesystem::exists(path)) t.texts_[template_key(name)] = resources::read_file(path.string());
    }
    return t;
}

const std::string& PromptTemplates::get(const std::string& name) const {
    const auto it = texts_.find(name);
    if (it == texts_.end()) throw ConfigError("no prompt template named " + name);
    return it->second;
}

std::string build_prompt(const TranslationTask& task, const PipelineVariant& variant, const PromptTemplates& templates) {
    task.validate();
    std::map<std::string, std::string> vars = {
        {"source_lang", std::string(language_name(task.source_lang))},
        {"target_lang", std::string(language_name(task.target_lang))},
        {"syllable_count", std::to_string(task.required_count)},
        {"source_text", task.source_text},
    };
    const auto& m = variant.modalities;
    switch (variant.style) {
        case PromptStyle::syllable_constrained:
            return render_template(templates.get("constrained"), vars, {});
        case PromptStyle::plain:
            return render_template(templates.get("plain"), vars, {});
        case PromptStyle::chain_of_thought:
            break;
    }
    int step = 1;
    vars["step_identify"] = std::to_string(step++);
    vars["step_target"] = std::to_string(step++);
    if (variant.use_refine) vars["step_refine"] = std::to_string(step++);
    vars["step_final"] = std::to_string(step);
    vars["media_context"] = m.audio && m.video ? " with the video and audio"
                            : m.video          ? " with the video"
                            : m.audio          ? " with the audio"
                                               : "";
    const std::map<std::string, bool> flags = {
        {"audio", m.audio},
        {"video", m.video},
        {"syllable_list", variant.use_syllable_list},
        {"refine", variant.use_refine},
    };
    return render_template(templates.get("cot"), vars, flags);
}

std::string build_count_correction(const TranslationTask& task, std::string_view previous_translation,
                                   std::size_t achieved, const PromptTemplates& templates) {
    return render_template(templates.get("corrective_count"),
                           {{"previous_translation", std::string(previous_translation)},
                            {"achieved_count", std::to_string(achieved)},
                            {"syllable_count", std::to_string(task.required_count)},
                            {"target_lang", std::string(language_name(task.target_lang))}},
                           {});
}

std::string build_format_correction(const TranslationTask& task, const PromptTemplates& templates) {
    return render_template(templates.get("corrective_format"),
                           {{"syllable_count", std::to_string(task.required_count)},
                            {"target_lang", std::string(language_name(task.target_lang))}},
                           {});
}

}  // namespace singable::pipeline
