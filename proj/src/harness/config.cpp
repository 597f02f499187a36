#include "singable/harness/config.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "singable/error.hpp"
#include "singable/providers/provider.hpp"

namespace singable::harness {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string> split_commas(std::string_view list) {
    std::vector<std::string> out;
    std::stringstream ss{std::string(list)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void require_path(const std::string& path, const char* what) {
    if (!path.empty() && !std::filesystem::exists(path))
        throw ConfigError(std::string(what) + " not found: " + path);
}

}  // namespace

pipeline::PipelineVariant parse_variant(std::string_view name, const pipeline::Modalities& modalities) {
    pipeline::PipelineVariant v;
    v.modalities = modalities;
    const std::string n = lower(name);
    if (n == "list+refine" || n == "full" || name == "✓✓") {
        v.use_syllable_list = v.use_refine = true;
    } else if (n == "list" || name == "✓✗") {
        v.use_refine = false;
    } else if (n == "refine" || name == "✗✓") {
        v.use_syllable_list = false;
    } else if (n == "none" || name == "✗✗") {
        v.use_syllable_list = v.use_refine = false;
    } else {
        try {
            v.style = pipeline::parse_prompt_style(n);
        } catch (const ConfigError&) {
            throw ConfigError("unknown variant '" + std::string(name) +
                              "' (list+refine, list, refine, none, constrained, plain)");
        }
        if (v.style == pipeline::PromptStyle::chain_of_thought) return v;
        v.use_syllable_list = v.use_refine = false;
    }
    return v;
}

metrics::Components parse_components(std::string_view list) {
    metrics::Components c;
    for (const auto& item : split_commas(list)) {
        const auto name = lower(item);
        if (name == "all") c = metrics::Components::all();
        else if (name == "syllabic") c.syllabic = true;
        else if (name == "semantic") c.semantic = true;
        else if (name == "phonetic") c.phonetic = true;
        else throw ConfigError("unknown metric component '" + item + "' (syllabic, semantic, phonetic, all)");
    }
    return c;
}

std::string to_string(const metrics::Components& c) {
    std::string s = "syllabic";
    if (c.semantic) s += ",semantic";
    if (c.phonetic) s += ",phonetic";
    return s;
}

std::vector<Language> parse_language_list(std::string_view list) {
    std::vector<Language> out;
    for (const auto& item : split_commas(list)) {
        const auto lang = try_parse_language(item);
        if (!lang) throw ConfigError("unknown language '" + item + "' (EN, ES, FR, KO, JA)");
        if (std::find(out.begin(), out.end(), *lang) == out.end()) out.push_back(*lang);
    }
    return out;
}

void RunConfig::validate(bool needs_generator) const {
    if (dataset_path.empty()) throw ConfigError("--dataset is required");
    require_path(dataset_path, "dataset");
    require_path(mock_script, "mock script");
    require_path(lyrics_dir, "lyrics directory");
    require_path(lexicon_dir, "lexicon directory");
    require_path(templates_dir, "templates directory");
    if (hyp_path != "human") require_path(hyp_path, "hypothesis file");
    if (provider != "mock" && provider != "gemini" && provider != "openai")
        throw ConfigError("unknown provider '" + provider + "' (mock, gemini, openai)");
    if (needs_generator && provider == "mock" && mock_script.empty()) throw ConfigError("--provider mock needs --mock-script");
    if (embedder != "none" && embedder != "hashing" && embedder != "openai")
        throw ConfigError("unknown embedder '" + embedder + "' (none, hashing, openai)");
    if (components.semantic && embedder == "none")
        throw ConfigError("the semantic component needs --embedder hashing or openai");
    if (!(beta >= 1.0)) throw ConfigError("beta must be >= 1, got " + std::to_string(beta));
    if (max_reprompts < 0) throw ConfigError("max_reprompts must be >= 0");
    if (retry_attempts < 1) throw ConfigError("retry_attempts must be >= 1");
    if (media_margin_ms < 0) throw ConfigError("media_margin_ms must be >= 0");
    if (parallelism == 0) throw ConfigError("parallelism must be >= 1");
    if (format != "csv" && format != "json" && format != "table")
        throw ConfigError("unknown format '" + format + "' (csv, json, table)");
    if (failure_threshold < 0.0 || failure_threshold > 1.0) throw ConfigError("failure_threshold must be in [0, 1]");
    for (Language t : target_langs)
        if (t == source_lang) throw ConfigError("target language equals the source language");
}

std::vector<Language> RunConfig::targets() const {
    if (!target_langs.empty()) return target_langs;
    std::vector<Language> out;
    for (Language l : kAllLanguages)
        if (l != source_lang) out.push_back(l);
    return out;
}

std::string RunConfig::canonical() const {
    std::map<std::string, std::string> kv;
    kv["average"] = average == metrics::AverageMode::lines ? "lines" : "songs";
    kv["base_url"] = base_url;
    kv["beta"] = std::to_string(beta);
    kv["components"] = to_string(components);
    kv["dataset"] = dataset_path.empty() ? "" : std::filesystem::weakly_canonical(dataset_path).string();
    kv["embedder"] = embedder;
    kv["embedding_model"] = embedding_model;
    kv["hyp"] = hyp_path;
    kv["lexicon_dir"] = lexicon_dir;
    kv["lyrics_dir"] = lyrics_dir;
    kv["max_reprompts"] = std::to_string(max_reprompts);
    kv["media_margin_ms"] = std::to_string(media_margin_ms);
    kv["mock_script"] = mock_script;
    kv["modalities"] = variant.modalities.label();
    kv["model"] = model;
    kv["provider"] = provider;
    kv["resend_media"] = resend_media ? "true" : "false";
    kv["retry_attempts"] = std::to_string(retry_attempts);
    kv["seed"] = std::to_string(seed);
    kv["source_lang"] = std::string(singable::to_string(source_lang));
    std::string targets_s;
    for (Language t : targets()) targets_s += (targets_s.empty() ? "" : ",") + std::string(singable::to_string(t));
    kv["target_langs"] = targets_s;
    kv["templates_dir"] = templates_dir;
    kv["variant"] = variant.slug();
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::string RunConfig::hash() const { return providers::sha256_hex(canonical()).substr(0, 12); }

}  // namespace singable::harness
