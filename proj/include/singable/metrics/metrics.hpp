#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "singable/language.hpp"
#include "singable/phonetics/g2p.hpp"
#include "singable/providers/provider.hpp"
#include "singable/providers/retry.hpp"
#include "singable/syllable/syllabifier.hpp"

namespace singable::metrics {

struct SyllableErrorParams {
    double beta = 2.0;

    /// Throws PreconditionError unless beta >= 1.
    void validate() const;
};

/// c_ref - c_pred when under or equal, beta * (c_pred - c_ref) when over.
/// Throws UndefinedReferenceError when c_ref == 0.
double syllable_error(std::size_t c_ref, std::size_t c_pred, const SyllableErrorParams& params = {});

/// 0.5 * (|d| / c_ref + |d| / c_pred). Throws UndefinedReferenceError on a zero count.
double syllable_count_distance(std::size_t c_ref, std::size_t c_pred);

/// Element-wise batch forms of the two functions above (SIMD-dispatched).
std::vector<double> syllable_errors(std::span<const std::size_t> c_ref, std::span<const std::size_t> c_pred,
                                    const SyllableErrorParams& params = {});
std::vector<double> syllable_count_distances(std::span<const std::size_t> c_ref, std::span<const std::size_t> c_pred);

/// Clamped to [-1, 1]. Throws DimensionMismatchError or DegenerateEmbeddingError.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

enum class ReferenceKind { original_en, dubbed };

std::string_view to_string(ReferenceKind kind) noexcept;

struct Components {
    bool syllabic = true;
    bool semantic = false;
    bool phonetic = false;

    static Components all() { return {true, true, true}; }
};

struct LineScore {
    ReferenceKind reference_kind = ReferenceKind::original_en;
    Language lang_ref = Language::EN;
    Language lang_pred = Language::EN;
    std::string song_id;  // used by per-song averaging; may be empty

    bool syllabic = false;  // c_ref .. mismatch are meaningful
    std::size_t c_ref = 0;
    std::size_t c_pred = 0;
    double se = 0.0;
    std::optional<double> scd;  // absent when c_pred == 0
    bool mismatch = false;

    std::optional<double> semantic;
    std::optional<std::size_t> phonetic;

    /// component name -> failure message, for requested components that failed.
    std::map<std::string, std::string> errors;
};

struct ScoringContext {
    const syllable::Syllabifier* syllabifier = &syllable::Syllabifier::builtin();
    syllable::NormalizationPolicy policy;
    SyllableErrorParams se_params;
    providers::EmbeddingProvider* embedder = nullptr;
    providers::RetryPolicy embed_retry;
    const phonetics::RuleSets* g2p = &phonetics::builtin_rule_sets();
};

/// Scores `pred` against `gt`. Only requested components are filled; a failing
/// component lands in `errors` and the others are still scored. `c_ref_override`
/// replaces the reference count (e.g. a dataset-supplied syllable_count).
LineScore score_line(std::string_view gt, std::string_view pred, Language lang_gt, Language lang_pred,
                     ReferenceKind kind, const Components& components, const ScoringContext& ctx = {},
                     std::optional<std::size_t> c_ref_override = std::nullopt);

enum class AverageMode { lines, songs };

struct MetricSummary {
    std::size_t line_count = 0;      // scores in the group
    std::size_t syllabic_lines = 0;  // scores with syllabic fields
    std::size_t mismatches = 0;
    std::optional<double> error_rate;
    std::optional<double> mean_se;
    std::optional<double> mean_scd;
    std::optional<double> mean_semantic;
    std::optional<double> mean_phonetic;
    std::size_t semantic_lines = 0;
    std::size_t phonetic_lines = 0;
};

struct GroupKey {
    Language lang = Language::EN;  // language of the predictions
    ReferenceKind reference = ReferenceKind::original_en;
    auto operator<=>(const GroupKey&) const = default;
};

struct CorpusReport {
    std::map<GroupKey, MetricSummary> groups;
    AverageMode mode = AverageMode::lines;
    std::string embedding_provider;
    std::string provenance;
};

/// Unweighted means per (prediction language, reference kind). In `songs` mode
/// each song is averaged first. Throws PreconditionError on an empty list.
CorpusReport aggregate(std::span<const LineScore> scores, AverageMode mode = AverageMode::lines);

}  // namespace singable::metrics
