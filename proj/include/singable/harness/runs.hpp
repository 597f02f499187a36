#pragma once

#include <string>
#include <vector>

#include "singable/harness/config.hpp"
#include "singable/harness/hypothesis.hpp"
#include "singable/metrics/report.hpp"
#include "singable/pipeline/translate.hpp"
#include "singable/providers/provider.hpp"

namespace singable::harness {

/// Raised when the share of failed lines exceeds the configured threshold.
class ThresholdError : public Error {
public:
    ThresholdError(const std::string& what, bool provider_only) : Error(what), provider_only_(provider_only) {}
    /// Every failure came from the provider (unreachable, auth, exhausted retries).
    bool provider_only() const noexcept { return provider_only_; }

private:
    bool provider_only_;
};

/// Everything a run needs besides the config. Pointers are borrowed.
struct RunContext {
    providers::GenerationProvider* generator = nullptr;
    providers::EmbeddingProvider* embedder = nullptr;
    providers::TraceStore* trace = nullptr;
    const syllable::Syllabifier* syllabifier = &syllable::Syllabifier::builtin();
    const pipeline::PromptTemplates* templates = &pipeline::PromptTemplates::builtin();
    /// Replaces the retry sleeper (tests).
    std::function<void(std::chrono::milliseconds)> sleeper;
};

/// Fills resolved_text from `<dir>/<song_id>/<LANG>.txt` (one candidate line per
/// line). Returns the number of dataset lines left unmatched.
std::size_t resolve_lyrics(data::Dataset& d, const std::string& dir);

// ---- translate ----------------------------------------------------------------------

struct LineOutcome {
    LineKey key;
    std::string status;  // ok | failed | skipped
    std::optional<pipeline::TranslationResult> result;
    std::string message;
    bool provider_failure = false;
};

struct TranslateOutcome {
    HypothesisSet hyp;
    std::vector<LineOutcome> lines;  // sorted by key
    std::size_t failed = 0;
    std::size_t attempted = 0;
};

/// Translates every resolved source line into each target language. Per-line
/// failures are recorded and the run continues.
TranslateOutcome run_translate(const data::Dataset& d, const RunConfig& cfg, const RunContext& ctx);

/// Throws ThresholdError when failed / attempted exceeds cfg.failure_threshold.
void check_threshold(const TranslateOutcome& outcome, const RunConfig& cfg);

/// song_id,target_lang,section,line,status,required,achieved,constraint_met,attempts,translation,message
std::string results_csv(const TranslateOutcome& outcome);

// ---- evaluate -----------------------------------------------------------------------

struct EvaluateOutcome {
    metrics::CorpusReport report;
    std::vector<metrics::ReportRow> rows;  // sorted
};

/// Scores each hypothesis line against the English original and the aligned
/// dubbed line. Every source line x target x reference kind yields one row, scored
/// or skipped with a reason; dubbed lines without a source counterpart are listed
/// as skipped too.
EvaluateOutcome run_evaluate(const data::Dataset& d, const HypothesisSet& hyp, const RunConfig& cfg,
                             const RunContext& ctx);

std::string render(const EvaluateOutcome& outcome, std::string_view format);

// ---- ablate -------------------------------------------------------------------------

enum class AblationGrid { stages, modalities, both };
AblationGrid parse_grid(std::string_view s);

struct AblationRow {
    std::string label;  // "✓✗" or "T+A"
    pipeline::PipelineVariant variant;
    bool skipped = false;
    std::string reason;
    std::optional<TranslateOutcome> translation;
    std::optional<EvaluateOutcome> evaluation;
};

/// The 2x2 stage grid and/or the modality subsets. Modality rows needing media are
/// skipped when no in-scope song has a media_url.
std::vector<AblationRow> run_ablation(const data::Dataset& d, const RunConfig& cfg, const RunContext& ctx,
                                      AblationGrid grid);

/// One block per reference kind and metric; rows are variants, columns languages.
std::string ablation_table(const std::vector<AblationRow>& rows, const std::vector<Language>& langs);
std::string ablation_csv(const std::vector<AblationRow>& rows);

// ---- stats --------------------------------------------------------------------------

/// Language | #Song | #Section | #Line. Languages without songs print "-" unless
/// the whole dataset is empty, which prints zeros.
std::string stats_table(const data::StatsReport& stats);
std::string stats_csv(const data::StatsReport& stats);
std::string stats_json(const data::StatsReport& stats);

// ---- output -------------------------------------------------------------------------

/// `<out>/<command>-<hash>`, suffixed ".2", ".3", ... when it already exists.
std::string make_run_dir(const std::string& out_dir, const std::string& command, const std::string& hash);

/// Writes via a temporary file and rename.
void write_atomic(const std::string& path, std::string_view content);

}  // namespace singable::harness
