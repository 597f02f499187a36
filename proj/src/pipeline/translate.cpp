#include "singable/pipeline/translate.hpp"

#include "singable/text/utf8.hpp"

namespace singable::pipeline {

namespace {

std::size_t gap(const Validation& v, std::size_t required) {
    return v.achieved_count > required ? v.achieved_count - required : required - v.achieved_count;
}

}  // namespace

Validation validate(std::string_view result_text, const TranslationTask& task,
                    const syllable::Syllabifier& syllabifier) {
    Validation v;
    const auto trimmed = text::trim(result_text);
    v.non_empty = !trimmed.empty();
    v.single_line = trimmed.find('\n') == std::string_view::npos;
    if (!v.non_empty) return v;
    try {
        v.achieved_count = syllabifier.count(task.target_lang, trimmed);
    } catch (const Error&) {
        v.achieved_count = 0;
    }
    v.constraint_met = v.achieved_count == task.required_count;
    return v;
}

std::vector<providers::MediaAttachment> select_media(const std::vector<providers::MediaAttachment>& media,
                                                     const Modalities& modalities) {
    std::vector<providers::MediaAttachment> out;
    for (const auto& m : media) {
        const bool wanted = m.kind == providers::MediaKind::audio ? modalities.audio : modalities.video;
        if (wanted) out.push_back(m);
    }
    return out;
}

TranslationResult translate_line(const TranslationTask& task, const PipelineVariant& variant,
                                 providers::GenerationProvider& provider, const TranslateOptions& options) {
    task.validate();
    if (options.max_reprompts < 0) throw PreconditionError("max_reprompts must be >= 0");
    const auto& templates = options.templates ? *options.templates : PromptTemplates::builtin();
    const auto& syl = options.syllabifier ? *options.syllabifier : syllable::Syllabifier::builtin();

    providers::GenerationRequest request;
    request.task_id = task.task_id;
    request.prompt_text = build_prompt(task, variant, templates);
    request.media = select_media(task.media, variant.modalities);
    request.config = options.config;

    TranslationResult result;
    result.task = task;
    const AttemptRecord* best = nullptr;
    const int max_attempts = 1 + options.max_reprompts;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        if (attempt > 1 && !options.resend_media) request.media.clear();
        const std::string raw = providers::generate(request, provider, options.retry, options.trace_store);
        result.attempts = attempt;

        AttemptRecord rec;
        rec.attempt = attempt;
        rec.trace = parse_trace_partial(raw);
        std::string correction;
        if (rec.trace.final_translation) {
            rec.validation = validate(*rec.trace.final_translation, task, syl);
            if (!rec.validation->non_empty) {
                correction = build_format_correction(task, templates);
            } else if (!rec.validation->constraint_met) {
                correction = build_count_correction(task, *rec.trace.final_translation,
                                                    rec.validation->achieved_count, templates);
            }
        } else {
            correction = build_format_correction(task, templates);
        }
        result.history.push_back(std::move(rec));
        if (correction.empty()) break;
        request.followups.push_back({providers::Turn::Role::model, raw});
        request.followups.push_back({providers::Turn::Role::user, std::move(correction)});
    }

    for (const auto& rec : result.history) {
        if (!rec.validation || !rec.validation->non_empty) continue;
        if (!best) {
            best = &rec;
            continue;
        }
        const auto& v = *rec.validation;
        const auto& b = *best->validation;
        if (v.constraint_met != b.constraint_met) {
            if (v.constraint_met) best = &rec;
        } else if (gap(v, task.required_count) < gap(b, task.required_count)) {
            best = &rec;
        }
    }
    if (!best) {
        std::vector<StageTrace> traces;
        for (const auto& rec : result.history) traces.push_back(rec.trace);
        throw PipelineError("no usable final answer for task '" + task.task_id + "' after " +
                                std::to_string(result.attempts) + " attempt(s)",
                            std::move(traces));
    }
    result.translation = text::collapse_whitespace(*best->trace.final_translation);
    result.achieved_count = best->validation->achieved_count;
    result.constraint_met = best->validation->constraint_met;
    result.best_attempt = best->attempt;
    result.trace = best->trace;
    return result;
}

}  // namespace singable::pipeline
