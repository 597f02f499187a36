#include "singable/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "singable/error.hpp"
#include "singable/kernels/kernels.hpp"

namespace singable::metrics {

void SyllableErrorParams::validate() const {
    if (!(beta >= 1.0)) throw PreconditionError("beta must be >= 1");
}

double syllable_error(std::size_t c_ref, std::size_t c_pred, const SyllableErrorParams& params) {
    params.validate();
    if (c_ref == 0) throw UndefinedReferenceError("reference syllable count is zero");
    const double r = static_cast<double>(c_ref);
    const double p = static_cast<double>(c_pred);
    return r >= p ? r - p : params.beta * (p - r);
}

double syllable_count_distance(std::size_t c_ref, std::size_t c_pred) {
    if (c_ref == 0 || c_pred == 0) throw UndefinedReferenceError("syllable count distance needs non-zero counts");
    const double r = static_cast<double>(c_ref);
    const double p = static_cast<double>(c_pred);
    const double d = r >= p ? r - p : p - r;
    return 0.5 * (d / r + d / p);
}

namespace {

std::vector<std::int32_t> narrow(std::span<const std::size_t> counts) {
    std::vector<std::int32_t> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > static_cast<std::size_t>(INT32_MAX)) throw PreconditionError("syllable count too large");
        out[i] = static_cast<std::int32_t>(counts[i]);
    }
    return out;
}

void check_batch(std::span<const std::size_t> c_ref, std::span<const std::size_t> c_pred) {
    if (c_ref.size() != c_pred.size()) throw DimensionMismatchError("reference and prediction counts differ in length");
}

}  // namespace

std::vector<double> syllable_errors(std::span<const std::size_t> c_ref, std::span<const std::size_t> c_pred,
                                    const SyllableErrorParams& params) {
    params.validate();
    check_batch(c_ref, c_pred);
    if (std::find(c_ref.begin(), c_ref.end(), 0u) != c_ref.end())
        throw UndefinedReferenceError("reference syllable count is zero");
    const auto r = narrow(c_ref);
    const auto p = narrow(c_pred);
    std::vector<double> out(r.size());
    kernels::syllable_error(r.data(), p.data(), r.size(), params.beta, out.data());
    return out;
}

std::vector<double> syllable_count_distances(std::span<const std::size_t> c_ref, std::span<const std::size_t> c_pred) {
    check_batch(c_ref, c_pred);
    if (std::find(c_ref.begin(), c_ref.end(), 0u) != c_ref.end() ||
        std::find(c_pred.begin(), c_pred.end(), 0u) != c_pred.end())
        throw UndefinedReferenceError("syllable count distance needs non-zero counts");
    const auto r = narrow(c_ref);
    const auto p = narrow(c_pred);
    std::vector<double> out(r.size());
    kernels::syllable_count_distance(r.data(), p.data(), r.size(), out.data());
    return out;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatchError("embedding dimensions differ: " + std::to_string(a.size()) + " vs " +
                                     std::to_string(b.size()));
    if (a.empty()) throw DegenerateEmbeddingError("empty embedding");
    const auto r = kernels::dot_norms(a.data(), b.data(), a.size());
    if (r.norm_a_sq == 0.0 || r.norm_b_sq == 0.0) throw DegenerateEmbeddingError("zero embedding vector");
    const double cos = r.dot / std::sqrt(r.norm_a_sq * r.norm_b_sq);
    return std::clamp(cos, -1.0, 1.0);
}

std::string_view to_string(ReferenceKind kind) noexcept {
    return kind == ReferenceKind::original_en ? "original_en" : "dubbed";
}

LineScore score_line(std::string_view gt, std::string_view pred, Language lang_gt, Language lang_pred,
                     ReferenceKind kind, const Components& components, const ScoringContext& ctx,
                     std::optional<std::size_t> c_ref_override) {
    LineScore s;
    s.reference_kind = kind;
    s.lang_ref = lang_gt;
    s.lang_pred = lang_pred;
    const auto& syl = ctx.syllabifier ? *ctx.syllabifier : syllable::Syllabifier::builtin();

    if (components.syllabic) {
        try {
            s.c_ref = c_ref_override ? *c_ref_override : syl.count(lang_gt, gt, ctx.policy);
            s.c_pred = syl.count(lang_pred, pred, ctx.policy);
            s.se = syllable_error(s.c_ref, s.c_pred, ctx.se_params);
            if (s.c_pred > 0) s.scd = syllable_count_distance(s.c_ref, s.c_pred);
            s.mismatch = s.c_ref != s.c_pred;
            s.syllabic = true;
        } catch (const std::exception& e) {
            s.errors["syllabic"] = e.what();
        }
    }
    if (components.semantic) {
        try {
            if (!ctx.embedder) throw PreconditionError("no embedding provider configured");
            providers::EmbeddingRequest req{{std::string(gt), std::string(pred)}, {}};
            const auto v = providers::embed(req, *ctx.embedder, ctx.embed_retry);
            s.semantic = cosine_similarity(v[0], v[1]);
        } catch (const std::exception& e) {
            s.errors["semantic"] = e.what();
        }
    }
    if (components.phonetic) {
        try {
            if (!ctx.g2p) throw MissingRulesError("no G2P rule sets configured");
            const auto gt_norm = syl.normalize(lang_gt, gt, ctx.policy);
            const auto pred_norm = syl.normalize(lang_pred, pred, ctx.policy);
            s.phonetic = phonetics::phonetic_distance(lang_gt, gt_norm, lang_pred, pred_norm, *ctx.g2p);
        } catch (const std::exception& e) {
            s.errors["phonetic"] = e.what();
        }
    }
    return s;
}

namespace {

struct Acc {
    std::size_t lines = 0, syl = 0, mismatches = 0, sem_n = 0, pho_n = 0, scd_n = 0;
    double se = 0, scd = 0, sem = 0, pho = 0;

    void add(const LineScore& s) {
        ++lines;
        if (s.syllabic) {
            ++syl;
            mismatches += s.mismatch ? 1 : 0;
            se += s.se;
            if (s.scd) {
                scd += *s.scd;
                ++scd_n;
            }
        }
        if (s.semantic) {
            sem += *s.semantic;
            ++sem_n;
        }
        if (s.phonetic) {
            pho += static_cast<double>(*s.phonetic);
            ++pho_n;
        }
    }

    MetricSummary summary() const {
        MetricSummary m;
        m.line_count = lines;
        m.syllabic_lines = syl;
        m.mismatches = mismatches;
        m.semantic_lines = sem_n;
        m.phonetic_lines = pho_n;
        if (syl) {
            m.error_rate = static_cast<double>(mismatches) / static_cast<double>(syl);
            m.mean_se = se / static_cast<double>(syl);
        }
        if (scd_n) m.mean_scd = scd / static_cast<double>(scd_n);
        if (sem_n) m.mean_semantic = sem / static_cast<double>(sem_n);
        if (pho_n) m.mean_phonetic = pho / static_cast<double>(pho_n);
        return m;
    }
};

// Mean of per-song values; counts are summed.
MetricSummary merge_songs(const std::vector<MetricSummary>& songs) {
    MetricSummary m;
    const auto mean_of = [&](std::optional<double> MetricSummary::*field) -> std::optional<double> {
        double sum = 0;
        std::size_t n = 0;
        for (const auto& s : songs) {
            if (s.*field) {
                sum += *(s.*field);
                ++n;
            }
        }
        if (n == 0) return std::nullopt;
        return sum / static_cast<double>(n);
    };
    for (const auto& s : songs) {
        m.line_count += s.line_count;
        m.syllabic_lines += s.syllabic_lines;
        m.mismatches += s.mismatches;
        m.semantic_lines += s.semantic_lines;
        m.phonetic_lines += s.phonetic_lines;
    }
    m.error_rate = mean_of(&MetricSummary::error_rate);
    m.mean_se = mean_of(&MetricSummary::mean_se);
    m.mean_scd = mean_of(&MetricSummary::mean_scd);
    m.mean_semantic = mean_of(&MetricSummary::mean_semantic);
    m.mean_phonetic = mean_of(&MetricSummary::mean_phonetic);
    return m;
}

}  // namespace

CorpusReport aggregate(std::span<const LineScore> scores, AverageMode mode) {
    if (scores.empty()) throw PreconditionError("cannot aggregate an empty score list");
    CorpusReport report;
    report.mode = mode;
    if (mode == AverageMode::lines) {
        std::map<GroupKey, Acc> acc;
        for (const auto& s : scores) acc[{s.lang_pred, s.reference_kind}].add(s);
        for (const auto& [k, a] : acc) report.groups[k] = a.summary();
    } else {
        std::map<GroupKey, std::map<std::string, Acc>> acc;
        for (const auto& s : scores) acc[{s.lang_pred, s.reference_kind}][s.song_id].add(s);
        for (const auto& [k, songs] : acc) {
            std::vector<MetricSummary> per_song;
            for (const auto& [song, a] : songs) per_song.push_back(a.summary());
            report.groups[k] = merge_songs(per_song);
        }
    }
    return report;
}

}  // namespace singable::metrics
