#pragma once

#include <string>
#include <vector>

#include "singable/pipeline/prompt.hpp"
#include "singable/pipeline/trace.hpp"
#include "singable/providers/retry.hpp"
#include "singable/providers/trace_store.hpp"

namespace singable::pipeline {

struct Validation {
    std::size_t achieved_count = 0;
    bool constraint_met = false;
    bool non_empty = false;
    bool single_line = true;

    bool operator==(const Validation&) const = default;
};

/// Counts syllables locally; never throws.
Validation validate(std::string_view result_text, const TranslationTask& task,
                    const syllable::Syllabifier& syllabifier = syllable::Syllabifier::builtin());

struct AttemptRecord {
    int attempt = 0;
    StageTrace trace;
    std::optional<Validation> validation;  // empty when the answer had no payload
};

struct TranslationResult {
    TranslationTask task;
    std::string translation;
    std::size_t achieved_count = 0;
    bool constraint_met = false;
    int attempts = 0;      // attempts issued
    int best_attempt = 0;  // 1-based attempt the translation came from
    StageTrace trace;      // trace of the best attempt
    std::vector<AttemptRecord> history;
};

struct TranslateOptions {
    int max_reprompts = 2;
    bool resend_media = true;
    providers::GenerationConfig config = providers::GenerationConfig::gemini_defaults();
    providers::RetryPolicy retry;
    providers::TraceStore* trace_store = nullptr;
    const PromptTemplates* templates = &PromptTemplates::builtin();
    const syllable::Syllabifier* syllabifier = &syllable::Syllabifier::builtin();
};

/// Attachments the variant's modalities allow.
std::vector<providers::MediaAttachment> select_media(const std::vector<providers::MediaAttachment>& media,
                                                     const Modalities& modalities);

/// Prompts, parses and validates; on a missing payload or a count mismatch appends
/// a corrective turn and asks again, up to max_reprompts times. Returns the best
/// attempt: constraint met, else smallest count gap, ties to the earliest.
/// ProviderError propagates; PipelineError when no attempt produced a payload.
TranslationResult translate_line(const TranslationTask& task, const PipelineVariant& variant,
                                 providers::GenerationProvider& provider, const TranslateOptions& options = {});

}  // namespace singable::pipeline
