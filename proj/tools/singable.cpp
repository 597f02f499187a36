// Command-line front end: translate | evaluate | ablate | stats.

#include <CLI11.hpp>

#include <iostream>

#include "singable/harness/commands.hpp"

using namespace singable;
using namespace singable::harness;

int main(int argc, char** argv) {
    CLI::App app{"Singable lyrics translation and evaluation"};
    app.set_version_flag("--version", "singable 0.1.0");
    app.set_config("--config", "", "key = value file; command-line flags win");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string source = "EN";
    std::string targets;
    std::string variant = "list+refine";
    std::string modalities = "T";
    std::string components = "syllabic";
    std::string average = "lines";
    std::string grid = "stages";
    bool no_resend = false;

    app.add_option("--dataset", cfg.dataset_path, "dataset JSON");
    app.add_option("--source-lang", source, "source language")->capture_default_str();
    app.add_option("--target-lang", targets, "comma-separated targets (default: all others)");
    app.add_option("--variant", variant, "list+refine | list | refine | none | constrained | plain")
        ->capture_default_str();
    app.add_option("--modalities", modalities, "T, T+A, T+V or T+A+V")->capture_default_str();
    app.add_option("--beta", cfg.beta, "over-count penalty (>= 1)")->capture_default_str();
    app.add_option("--provider", cfg.provider, "mock | gemini | openai")->capture_default_str();
    app.add_option("--mock-script", cfg.mock_script, "scripted replies for --provider mock");
    app.add_option("--model", cfg.model, "model id");
    app.add_option("--base-url", cfg.base_url, "provider endpoint (else SINGABLE_BASE_URL)");
    app.add_option("--embedder", cfg.embedder, "none | hashing | openai")->capture_default_str();
    app.add_option("--embedding-model", cfg.embedding_model, "embedding model id");
    app.add_option("--components", components, "syllabic,semantic,phonetic or all")->capture_default_str();
    app.add_option("--average", average, "lines | songs")->capture_default_str();
    app.add_option("--out", cfg.out_dir, "directory for run outputs")->capture_default_str();
    app.add_option("--format", cfg.format, "csv | json | table")->capture_default_str();
    app.add_option("--parallelism", cfg.parallelism, "concurrent requests")->capture_default_str();
    app.add_option("--seed", cfg.seed, "shuffle request order (0 = dataset order)")->capture_default_str();
    app.add_option("--lyrics", cfg.lyrics_dir, "directory of <song_id>/<LANG>.txt lyric files");
    app.add_option("--lexicon-dir", cfg.lexicon_dir, "extra syllable lexicons");
    app.add_option("--templates-dir", cfg.templates_dir, "prompt template overrides");
    app.add_option("--hyp", cfg.hyp_path, "hypothesis JSON, or \"human\" for the dubbed references");
    app.add_option("--failure-threshold", cfg.failure_threshold, "max share of failed lines")->capture_default_str();
    app.add_option("--max-reprompts", cfg.max_reprompts, "corrective re-prompts per line")->capture_default_str();
    app.add_option("--retry-attempts", cfg.retry_attempts, "provider attempts per request")->capture_default_str();
    app.add_option("--media-margin-ms", cfg.media_margin_ms, "context around each line's time span")
        ->capture_default_str();
    app.add_flag("--no-resend-media", no_resend, "attach media to the first attempt only");

    auto* translate = app.add_subcommand("translate", "translate dataset lines with a provider");
    auto* evaluate = app.add_subcommand("evaluate", "score hypotheses against original and dubbed lyrics");
    auto* ablate = app.add_subcommand("ablate", "run the stage and/or modality grid");
    ablate->add_option("--grid", grid, "stages | modalities | both")->capture_default_str();
    auto* stats = app.add_subcommand("stats", "per-language song/section/line counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (stats->parsed()) {
            if (cfg.dataset_path.empty()) throw ConfigError("--dataset is required");
            cmd_stats(cfg.dataset_path, cfg.format == "csv" && !app.count("--format") ? "table" : cfg.format,
                      std::cout);
            return kExitOk;
        }

        cfg.source_lang = parse_language(source);
        cfg.target_langs = parse_language_list(targets);
        if (app.count("--target-lang") && cfg.target_langs.empty()) {
            std::cerr << "warning: no target languages selected; nothing to do\n";
            return kExitOk;
        }
        cfg.variant = parse_variant(variant, pipeline::Modalities::parse(modalities));
        cfg.components = parse_components(components);
        if (average == "lines") cfg.average = metrics::AverageMode::lines;
        else if (average == "songs") cfg.average = metrics::AverageMode::songs;
        else throw ConfigError("--average must be lines or songs");
        cfg.resend_media = !no_resend;

        if (translate->parsed()) cmd_translate(cfg, std::cout, std::cerr);
        else if (evaluate->parsed()) cmd_evaluate(cfg, std::cout, std::cerr);
        else if (ablate->parsed()) cmd_ablate(cfg, parse_grid(grid), std::cout, std::cerr);
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
