#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "singable/language.hpp"
#include "singable/providers/provider.hpp"
#include "singable/syllable/syllabifier.hpp"

namespace singable::pipeline {

inline constexpr std::string_view kRefineHeader = "Iterate and Refine the Translation";
inline constexpr std::string_view kSourceSegmentationInstruction =
    "Break down the determined lyric line into its constituent syllables";
inline constexpr std::string_view kTargetListInstruction = "Write down the target language translation syllable list";
inline constexpr std::string_view kSyllableCountLabel = "Real Syllable Count";

/// Text is always present; audio and video are optional.
struct Modalities {
    bool audio = false;
    bool video = false;

    /// "T", "T+A", "T+V" or "T+A+V".
    std::string label() const;
    /// Accepts the labels above, case-insensitive, in any order ("t+v+a").
    static Modalities parse(std::string_view label);

    bool operator==(const Modalities&) const = default;
};

enum class PromptStyle {
    chain_of_thought,      // staged reasoning with syllable lists
    syllable_constrained,  // single-shot with the syllable count
    plain,                 // single-shot, no syllable constraint
};

std::string_view to_string(PromptStyle style) noexcept;
PromptStyle parse_prompt_style(std::string_view s);

struct PipelineVariant {
    bool use_syllable_list = true;
    bool use_refine = true;
    Modalities modalities;
    PromptStyle style = PromptStyle::chain_of_thought;

    /// Ablation grid label, e.g. "✓✗" for (syllable list on, refine off).
    std::string grid_label() const;
    /// e.g. "cot-list-refine-T+A+V"; safe for file names.
    std::string slug() const;

    bool operator==(const PipelineVariant&) const = default;
};

/// Human-readable language name used inside prompts ("English", "Korean", ...).
std::string_view language_name(Language lang) noexcept;

struct TranslationTask {
    std::string task_id;
    std::string source_text;
    Language source_lang = Language::EN;
    Language target_lang = Language::KO;
    std::size_t required_count = 0;
    std::vector<providers::MediaAttachment> media;

    /// Throws PreconditionError.
    void validate() const;

    /// required_count = `override_count` when given, else counted from the source text.
    static TranslationTask make(std::string task_id, std::string source_text, Language source, Language target,
                                std::optional<std::size_t> override_count = std::nullopt,
                                const syllable::Syllabifier& syllabifier = syllable::Syllabifier::builtin());
};

/// Mini template language: `{name}` placeholders (unknown names are left as is)
/// and `{{#flag}}...{{/flag}}` / `{{^flag}}...{{/flag}}` sections. A section tag
/// alone on its line removes the whole line.
std::string render_template(std::string_view tpl, const std::map<std::string, std::string>& vars,
                            const std::map<std::string, bool>& flags);

/// Prompt texts: cot.txt, constrained.txt, plain.txt, corrective_count.txt,
/// corrective_format.txt.
class PromptTemplates {
public:
    /// Templates compiled into the binary.
    static const PromptTemplates& builtin();
    /// Files present in `dir` replace the built-in ones.
    static PromptTemplates from_dir(const std::string& dir);

    const std::string& get(const std::string& name) const;

private:
    std::map<std::string, std::string> texts_;
};

std::string build_prompt(const TranslationTask& task, const PipelineVariant& variant,
                         const PromptTemplates& templates = PromptTemplates::builtin());

/// Follow-up user turn after an answer with the wrong syllable count.
std::string build_count_correction(const TranslationTask& task, std::string_view previous_translation,
                                   std::size_t achieved, const PromptTemplates& templates = PromptTemplates::builtin());

/// Follow-up user turn after an answer without a final JSON payload.
std::string build_format_correction(const TranslationTask& task,
                                    const PromptTemplates& templates = PromptTemplates::builtin());

}  // namespace singable::pipeline
