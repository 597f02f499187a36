#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "singable/language.hpp"
#include "singable/metrics/metrics.hpp"
#include "singable/pipeline/prompt.hpp"

namespace singable::harness {

/// Everything a run depends on. Credentials are never stored here; providers read
/// them from the environment.
struct RunConfig {
    std::string dataset_path;
    Language source_lang = Language::EN;
    std::vector<Language> target_langs;  // empty: every non-source language
    pipeline::PipelineVariant variant;

    std::string provider = "mock";  // mock | gemini | openai
    std::string mock_script;
    std::string model;
    std::string base_url;
    int max_reprompts = 2;
    bool resend_media = true;
    int retry_attempts = 3;
    std::int64_t media_margin_ms = 2000;

    metrics::Components components;
    std::string embedder = "none";  // none | hashing | openai
    std::string embedding_model;
    double beta = 2.0;
    metrics::AverageMode average = metrics::AverageMode::lines;

    std::string lyrics_dir;
    std::string lexicon_dir;
    std::string templates_dir;
    std::string hyp_path;

    std::string out_dir = "runs";
    std::string format = "csv";  // csv | json | table
    std::size_t parallelism = 4;
    std::uint64_t seed = 0;  // 0 keeps dataset order when issuing requests
    double failure_threshold = 0.5;

    /// Throws ConfigError naming the offending field. Provider settings are only
    /// checked when the command generates text.
    void validate(bool needs_generator = true) const;
    /// Target languages after defaulting.
    std::vector<Language> targets() const;
    /// Sorted key=value lines of every field that can change results.
    std::string canonical() const;
    /// First 12 hex digits of SHA-256 over canonical().
    std::string hash() const;
};

/// "list+refine" / "✓✓", "list" / "✓✗", "refine" / "✗✓", "none" / "✗✗",
/// "constrained", "plain". Throws ConfigError.
pipeline::PipelineVariant parse_variant(std::string_view name, const pipeline::Modalities& modalities = {});

/// "syllabic,semantic,phonetic" or "all". Syllabic scoring is always on.
metrics::Components parse_components(std::string_view list);
std::string to_string(const metrics::Components& c);

/// Comma separated language codes.
std::vector<Language> parse_language_list(std::string_view list);

}  // namespace singable::harness
