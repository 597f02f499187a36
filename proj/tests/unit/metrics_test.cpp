#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "singable/error.hpp"
#include "singable/metrics/report.hpp"
#include "singable/providers/mock.hpp"

using namespace singable;
using namespace singable::metrics;

namespace {

LineScore counts(std::size_t c_ref, std::size_t c_pred, std::string song = "s") {
    LineScore s;
    s.lang_pred = Language::KO;
    s.song_id = std::move(song);
    s.syllabic = true;
    s.c_ref = c_ref;
    s.c_pred = c_pred;
    s.se = syllable_error(c_ref, c_pred);
    if (c_pred > 0) s.scd = syllable_count_distance(c_ref, c_pred);
    s.mismatch = c_ref != c_pred;
    return s;
}

class FailingEmbedder final : public providers::EmbeddingProvider {
public:
    std::vector<std::vector<double>> embed_once(const providers::EmbeddingRequest&) override {
        throw providers::ProviderError(providers::ProviderErrorKind::auth, "no key");
    }
    std::string identity() const override { return "failing"; }
};

}  // namespace

TEST(SyllableError, Examples) {
    EXPECT_EQ(syllable_error(5, 5), 0.0);
    EXPECT_EQ(syllable_error(7, 5), 2.0);
    EXPECT_EQ(syllable_error(5, 7), 4.0);
    EXPECT_EQ(syllable_error(5, 7, {1.5}), 3.0);
    EXPECT_EQ(syllable_error(5, 0), 5.0);
    EXPECT_THROW(syllable_error(0, 3), UndefinedReferenceError);
    EXPECT_THROW(syllable_error(3, 3, {0.5}), PreconditionError);
}

TEST(SyllableCountDistance, Examples) {
    EXPECT_EQ(syllable_count_distance(6, 6), 0.0);
    EXPECT_DOUBLE_EQ(syllable_count_distance(4, 2), 0.75);
    EXPECT_DOUBLE_EQ(syllable_count_distance(2, 4), 0.75);
    EXPECT_THROW(syllable_count_distance(0, 4), UndefinedReferenceError);
    EXPECT_THROW(syllable_count_distance(4, 0), UndefinedReferenceError);
}

TEST(SyllableError, BatchMatchesScalar) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> d(1, 60);
    std::vector<std::size_t> r(257), p(257);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = d(rng), p[i] = d(rng);
    const auto se = syllable_errors(r, p, {1.5});
    const auto scd = syllable_count_distances(r, p);
    for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_EQ(se[i], syllable_error(r[i], p[i], {1.5}));
        EXPECT_EQ(scd[i], syllable_count_distance(r[i], p[i]));
    }
}

TEST(Cosine, Examples) {
    const std::vector<double> a{1, 2, 3}, o1{1, 0}, o2{0, 1}, h{1, 1};
    EXPECT_NEAR(cosine_similarity(a, a), 1.0, 1e-15);
    EXPECT_EQ(cosine_similarity(o1, o2), 0.0);
    EXPECT_NEAR(cosine_similarity(h, o1), 0.7071067811865476, 1e-9);
    const std::vector<double> zero{0, 0};
    EXPECT_THROW(cosine_similarity(zero, o1), DegenerateEmbeddingError);
    EXPECT_THROW(cosine_similarity(a, o1), DimensionMismatchError);
}

TEST(ScoreLine, SelfComparisonAllComponents) {
    providers::HashingEmbedder emb;
    ScoringContext ctx;
    ctx.embedder = &emb;
    const auto s = score_line("나비가 날아와", "나비가 날아와", Language::KO, Language::KO, ReferenceKind::dubbed,
                              Components::all(), ctx);
    EXPECT_EQ(s.se, 0.0);
    EXPECT_EQ(s.scd, 0.0);
    EXPECT_FALSE(s.mismatch);
    ASSERT_TRUE(s.semantic);
    EXPECT_NEAR(*s.semantic, 1.0, 1e-12);
    EXPECT_EQ(s.phonetic, 0u);
    EXPECT_TRUE(s.errors.empty());
}

TEST(ScoreLine, CrossLingualSyllabicOnly) {
    const auto s = score_line("And there's a butterfly", "나비가 날아와", Language::EN, Language::KO,
                              ReferenceKind::original_en, Components{});
    EXPECT_EQ(s.c_ref, 6u);
    EXPECT_EQ(s.c_pred, 6u);
    EXPECT_EQ(s.se, 0.0);
    EXPECT_FALSE(s.mismatch);
    EXPECT_FALSE(s.semantic);
    EXPECT_FALSE(s.phonetic);
}

TEST(ScoreLine, OverrideAndDistance) {
    const auto s = score_line("x", "날 기억해 줘 울지는 마", Language::EN, Language::KO, ReferenceKind::original_en,
                              Components{}, {}, 10);
    EXPECT_EQ(s.c_ref, 10u);
    EXPECT_EQ(s.c_pred, 9u);
    EXPECT_EQ(s.se, 1.0);
    ASSERT_TRUE(s.scd);
    EXPECT_NEAR(*s.scd, 0.5 * (1.0 / 10 + 1.0 / 9), 1e-12);
    EXPECT_TRUE(s.mismatch);
}

TEST(ScoreLine, FailingComponentIsRecordedOthersScored) {
    FailingEmbedder emb;
    ScoringContext ctx;
    ctx.embedder = &emb;
    ctx.embed_retry.max_attempts = 1;
    const auto s = score_line("casa", "cosa", Language::ES, Language::ES, ReferenceKind::dubbed, Components::all(), ctx);
    EXPECT_TRUE(s.errors.count("semantic"));
    EXPECT_FALSE(s.semantic);
    EXPECT_EQ(s.phonetic, 1u);
    EXPECT_TRUE(s.syllabic);
}

TEST(ScoreLine, EmptyPredictionHasNoScd) {
    const auto s = score_line("And there's a butterfly", "", Language::EN, Language::KO, ReferenceKind::original_en,
                              Components{});
    EXPECT_EQ(s.c_pred, 0u);
    EXPECT_EQ(s.se, 6.0);
    EXPECT_FALSE(s.scd);
    EXPECT_TRUE(s.mismatch);
}

TEST(Aggregate, Examples) {
    std::vector<LineScore> half{counts(5, 5), counts(5, 6)};
    const auto r = aggregate(half);
    const auto& g = r.groups.at({Language::KO, ReferenceKind::original_en});
    EXPECT_EQ(g.error_rate, 0.5);
    EXPECT_EQ(g.line_count, 2u);

    std::vector<LineScore> equal{counts(4, 4), counts(7, 7)};
    const auto& e = aggregate(equal).groups.begin()->second;
    EXPECT_EQ(e.error_rate, 0.0);
    EXPECT_EQ(e.mean_se, 0.0);

    std::vector<LineScore> se24{counts(5, 6), counts(5, 7)};  // se 2 and 4
    EXPECT_EQ(aggregate(se24).groups.begin()->second.mean_se, 3.0);

    EXPECT_THROW(aggregate(std::span<const LineScore>{}), PreconditionError);
}

TEST(Aggregate, SongModeAveragesSongsFirst) {
    std::vector<LineScore> s{counts(5, 6, "a"), counts(5, 6, "a"), counts(5, 6, "a"), counts(5, 5, "b")};
    EXPECT_DOUBLE_EQ(*aggregate(s, AverageMode::lines).groups.begin()->second.mean_se, 1.5);
    EXPECT_DOUBLE_EQ(*aggregate(s, AverageMode::songs).groups.begin()->second.mean_se, 1.0);
}

TEST(Aggregate, GroupsByLanguageAndReference) {
    auto a = counts(5, 5);
    auto b = counts(5, 5);
    b.reference_kind = ReferenceKind::dubbed;
    auto c = counts(5, 5);
    c.lang_pred = Language::JA;
    std::vector<LineScore> all{a, b, c};
    EXPECT_EQ(aggregate(all).groups.size(), 3u);
}

TEST(Report, CsvLayoutAndOrder) {
    std::vector<ReportRow> rows;
    ReportRow skipped{"b", Language::KO, 0, 1, ReferenceKind::dubbed, std::nullopt, "no dubbed text"};
    ReportRow scored{"a", Language::KO, 0, 0, ReferenceKind::original_en, counts(6, 7), ""};
    rows.push_back(skipped);
    rows.push_back(scored);
    sort_rows(rows);
    const auto csv = to_csv(rows);
    const auto header = csv.substr(0, csv.find('\n'));
    EXPECT_EQ(header,
              "song_id,target_lang,section,line,reference_kind,status,c_ref,c_pred,se,scd,mismatch,semantic,phonetic,reason");
    EXPECT_NE(csv.find("a,KO,0,0,original_en,scored,6,7,2.000000,"), std::string::npos);
    EXPECT_LT(csv.find("\na,"), csv.find("\nb,"));
    EXPECT_NE(csv.find("skipped"), std::string::npos);
}

TEST(Report, TableShowsDashForMissing) {
    std::vector<LineScore> s{counts(6, 6)};
    const auto table = to_table(aggregate(s));
    EXPECT_NE(table.find("English lyrics <-> translated"), std::string::npos);
    EXPECT_NE(table.find("KO"), std::string::npos);
    EXPECT_NE(table.find("-"), std::string::npos);
}

TEST(Report, JsonHasGroupsAndSkips) {
    std::vector<LineScore> s{counts(6, 6)};
    std::vector<ReportRow> rows{{"b", Language::KO, 0, 1, ReferenceKind::dubbed, std::nullopt, "no dubbed text"}};
    const auto j = to_json(aggregate(s), rows);
    EXPECT_NE(j.find("\"groups\""), std::string::npos);
    EXPECT_NE(j.find("no dubbed text"), std::string::npos);
}
