#include "singable/harness/commands.hpp"

#include <cstdlib>
#include <filesystem>

#include "singable/providers/http.hpp"
#include "singable/providers/mock.hpp"
#include "singable/resources.hpp"

namespace singable::harness {

namespace fs = std::filesystem;

namespace {

std::string env(const char* name) {
    const char* v = std::getenv(name);
    return v ? v : "";
}

struct Loaded {
    syllable::Syllabifier syllabifier;
    pipeline::PromptTemplates templates;
};

Loaded load_resources(const RunConfig& cfg) {
    Loaded l{cfg.lexicon_dir.empty() ? syllable::Syllabifier() : syllable::Syllabifier::with_lexicon_dir(cfg.lexicon_dir),
             cfg.templates_dir.empty() ? pipeline::PromptTemplates::builtin()
                                       : pipeline::PromptTemplates::from_dir(cfg.templates_dir)};
    return l;
}

HypothesisSet load_hypotheses(const RunConfig& cfg, const data::Dataset& d) {
    if (cfg.hyp_path.empty()) throw ConfigError("evaluate needs --hyp (a hypothesis file or \"human\")");
    if (cfg.hyp_path != "human") return HypothesisSet::load(cfg.hyp_path);
    HypothesisSet all;
    all.provenance = "human";
    for (Language t : cfg.targets())
        for (auto& [k, v] : human_references(d, t).entries) all.entries.emplace(k, v);
    return all;
}

void write_reports(const std::string& dir, const EvaluateOutcome& ev) {
    write_atomic((fs::path(dir) / "report.csv").string(), render(ev, "csv"));
    write_atomic((fs::path(dir) / "report.json").string(), render(ev, "json"));
    write_atomic((fs::path(dir) / "report.txt").string(), render(ev, "table"));
}

}  // namespace

int exit_code_for(const std::exception& e) noexcept {
    if (const auto* t = dynamic_cast<const ThresholdError*>(&e)) return t->provider_only() ? kExitProvider : kExitThreshold;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const PreconditionError*>(&e)) return kExitConfig;
    if (dynamic_cast<const providers::ProviderError*>(&e)) return kExitProvider;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
        dynamic_cast<const MissingRulesError*>(&e) || dynamic_cast<const UnsupportedNumberError*>(&e))
        return kExitData;
    return kExitData;
}

std::unique_ptr<providers::GenerationProvider> make_generator(const RunConfig& cfg) {
    if (cfg.provider == "mock") {
        if (cfg.mock_script.empty()) throw ConfigError("--provider mock needs --mock-script");
        return std::make_unique<providers::ScriptedProvider>(providers::ScriptedProvider::load(cfg.mock_script));
    }
    providers::HttpSettings s;
    s.base_url = cfg.base_url.empty() ? env("SINGABLE_BASE_URL") : cfg.base_url;
    s.model = cfg.model;
    if (cfg.provider == "gemini") {
        s.api_key = env("GEMINI_API_KEY");
        if (s.model.empty()) s.model = "gemini-2.0-flash";
        if (s.api_key.empty()) throw ConfigError("GEMINI_API_KEY is not set");
        return std::make_unique<providers::GeminiProvider>(s);
    }
    if (cfg.provider == "openai") {
        s.api_key = env("OPENAI_API_KEY");
        if (s.base_url.empty()) throw ConfigError("--provider openai needs --base-url or SINGABLE_BASE_URL");
        if (s.model.empty()) throw ConfigError("--provider openai needs --model");
        return std::make_unique<providers::OpenAICompatibleProvider>(s);
    }
    throw ConfigError("unknown provider '" + cfg.provider + "'");
}

std::unique_ptr<providers::EmbeddingProvider> make_embedder(const RunConfig& cfg) {
    if (cfg.embedder == "none") return nullptr;
    if (cfg.embedder == "hashing") return std::make_unique<providers::HashingEmbedder>();
    if (cfg.embedder == "openai") {
        providers::HttpSettings s;
        s.base_url = cfg.base_url.empty() ? env("SINGABLE_BASE_URL") : cfg.base_url;
        s.model = cfg.embedding_model;
        s.api_key = env("OPENAI_API_KEY");
        if (s.base_url.empty() || s.model.empty())
            throw ConfigError("--embedder openai needs a base URL and --embedding-model");
        return std::make_unique<providers::OpenAICompatibleEmbedder>(s);
    }
    throw ConfigError("unknown embedder '" + cfg.embedder + "'");
}

data::Dataset load_dataset(const RunConfig& cfg, std::ostream& log) {
    auto d = data::parse_dataset(resources::read_file(cfg.dataset_path));
    if (!cfg.lyrics_dir.empty()) {
        const auto unmatched = resolve_lyrics(d, cfg.lyrics_dir);
        if (unmatched) log << "warning: " << unmatched << " dataset line(s) not matched by files in " << cfg.lyrics_dir << "\n";
    }
    return d;
}

std::string cmd_translate(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    cfg.validate();
    const auto d = load_dataset(cfg, log);
    const auto res = load_resources(cfg);
    auto generator = make_generator(cfg);

    const auto dir = make_run_dir(cfg.out_dir, "translate", cfg.hash());
    write_atomic((fs::path(dir) / "config.txt").string(), cfg.canonical());
    providers::TraceStore trace((fs::path(dir) / "trace.jsonl").string());
    RunContext ctx;
    ctx.generator = generator.get();
    ctx.trace = &trace;
    ctx.syllabifier = &res.syllabifier;
    ctx.templates = &res.templates;

    const auto outcome = run_translate(d, cfg, ctx);
    const auto csv = results_csv(outcome);
    write_atomic((fs::path(dir) / "hypotheses.json").string(), outcome.hyp.to_json());
    write_atomic((fs::path(dir) / "results.csv").string(), csv);

    std::size_t met = 0;
    for (const auto& l : outcome.lines)
        if (l.result && l.result->constraint_met) ++met;
    if (outcome.attempted == 0) log << "warning: no lines in scope; nothing translated\n";
    log << "translated " << outcome.hyp.entries.size() << "/" << outcome.attempted << " lines (" << met
        << " meet the syllable count, " << outcome.failed << " failed) -> " << dir << "\n";
    out << (cfg.format == "json" ? outcome.hyp.to_json() : csv);
    check_threshold(outcome, cfg);
    return dir;
}

std::string cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    cfg.validate(false);
    const auto d = load_dataset(cfg, log);
    const auto res = load_resources(cfg);
    const auto hyp = load_hypotheses(cfg, d);
    check_keys(hyp, d, cfg.source_lang);
    auto embedder = make_embedder(cfg);

    RunContext ctx;
    ctx.embedder = embedder.get();
    ctx.syllabifier = &res.syllabifier;
    const auto ev = run_evaluate(d, hyp, cfg, ctx);

    const auto dir = make_run_dir(cfg.out_dir, "evaluate", cfg.hash());
    write_atomic((fs::path(dir) / "config.txt").string(), cfg.canonical());
    write_reports(dir, ev);
    std::size_t skipped = 0;
    for (const auto& r : ev.rows)
        if (!r.score) ++skipped;
    log << "scored " << ev.rows.size() - skipped << " rows, skipped " << skipped << " -> " << dir << "\n";
    out << render(ev, cfg.format);
    return dir;
}

std::string cmd_ablate(const RunConfig& cfg, AblationGrid grid, std::ostream& out, std::ostream& log) {
    cfg.validate();
    const auto d = load_dataset(cfg, log);
    const auto res = load_resources(cfg);
    auto generator = make_generator(cfg);
    auto embedder = make_embedder(cfg);

    const auto dir = make_run_dir(cfg.out_dir, "ablate", cfg.hash());
    write_atomic((fs::path(dir) / "config.txt").string(), cfg.canonical());
    providers::TraceStore trace((fs::path(dir) / "trace.jsonl").string());
    RunContext ctx;
    ctx.generator = generator.get();
    ctx.embedder = embedder.get();
    ctx.trace = &trace;
    ctx.syllabifier = &res.syllabifier;
    ctx.templates = &res.templates;

    const auto rows = run_ablation(d, cfg, ctx, grid);
    for (const auto& r : rows) {
        if (r.skipped) {
            log << r.label << ": skipped (" << r.reason << ")\n";
            continue;
        }
        const auto sub = fs::path(dir) / r.variant.slug();
        write_atomic((sub / "hypotheses.json").string(), r.translation->hyp.to_json());
        write_atomic((sub / "results.csv").string(), results_csv(*r.translation));
        write_reports(sub.string(), *r.evaluation);
    }
    const auto table = ablation_table(rows, cfg.targets());
    const auto csv = ablation_csv(rows);
    write_atomic((fs::path(dir) / "comparison.txt").string(), table);
    write_atomic((fs::path(dir) / "comparison.csv").string(), csv);
    log << rows.size() << " variant(s) -> " << dir << "\n";
    out << (cfg.format == "table" ? table : csv);
    return dir;
}

void cmd_stats(const std::string& dataset_path, std::string_view format, std::ostream& out) {
    const auto stats = data::dataset_stats(data::parse_dataset(resources::read_file(dataset_path)));
    if (format == "csv") out << stats_csv(stats);
    else if (format == "json") out << stats_json(stats);
    else if (format == "table") out << stats_table(stats);
    else throw ConfigError("unknown format '" + std::string(format) + "'");
}

}  // namespace singable::harness
