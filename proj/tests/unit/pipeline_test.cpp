#include <gtest/gtest.h>

#include "singable/error.hpp"
#include "singable/pipeline/translate.hpp"
#include "singable/providers/mock.hpp"
#include "singable/resources.hpp"

using namespace singable;
using namespace singable::pipeline;
using providers::ScriptedProvider;

namespace {

std::string fixture(const std::string& rel) { return resources::read_file(std::string(SINGABLE_FIXTURES) + "/" + rel); }

using List = std::vector<std::string>;

const List kButterflySeg = {"And", "there's", "a", "but", "ter", "fly"};
const List kNine = {"날", "기", "억", "해", "줘", "울", "지", "는", "마"};
const List kTen = {"날", "잊", "지", "마", "슬", "퍼", "하", "지", "는", "마"};

TranslationTask butterfly_task() {
    return TranslationTask::make("t13", "And there's a butterfly", Language::EN, Language::KO);
}

TranslationTask remember_task() {
    return TranslationTask::make("t14", "Remember me, don't let it make you cry", Language::EN, Language::KO);
}

TranslateOptions fast_options() {
    TranslateOptions o;
    o.retry.sleeper = [](std::chrono::milliseconds) {};
    return o;
}

bool contains(const std::string& s, std::string_view needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Template, SectionsAndPlaceholders) {
    const std::string tpl = "a {x}\n{{#on}}\nyes {x}\n{{/on}}\n{{^on}}\nno\n{{/on}}\nend {unknown} {\"k\": 1}\n";
    EXPECT_EQ(render_template(tpl, {{"x", "1"}}, {{"on", true}}), "a 1\nyes 1\nend {unknown} {\"k\": 1}\n");
    EXPECT_EQ(render_template(tpl, {{"x", "1"}}, {{"on", false}}), "a 1\nno\nend {unknown} {\"k\": 1}\n");
}

TEST(Template, SubstitutedValuesAreNotRescanned) {
    EXPECT_EQ(render_template("{a}", {{"a", "{b}"}, {"b", "x"}}, {}), "{b}");
}

TEST(Template, UnclosedSectionIsConfigError) {
    EXPECT_THROW(render_template("{{#a}}\nx\n", {}, {}), ConfigError);
}

TEST(Prompt, FullVariantHasAllSteps) {
    PipelineVariant v;
    v.modalities = Modalities::parse("T+A+V");
    const auto p = build_prompt(butterfly_task(), v);
    EXPECT_TRUE(contains(p, "Real Syllable Count: 6"));
    EXPECT_TRUE(contains(p, "1. Identify the Core Lyric"));
    EXPECT_TRUE(contains(p, "2. Generate the Target Language Translation Syllable List Utilizing the Video"));
    EXPECT_TRUE(contains(p, "3. Iterate and Refine the Translation"));
    EXPECT_TRUE(contains(p, "4. Generate the Final Translation"));
    EXPECT_TRUE(contains(p, "And there's a butterfly"));
    EXPECT_TRUE(contains(p, "from English to Korean"));
    EXPECT_TRUE(contains(p, "audio clip"));
    EXPECT_TRUE(contains(p, "meaning in context with the video and audio."));
    EXPECT_FALSE(contains(p, "{{"));
}

TEST(Prompt, AblationGridFlags) {
    for (bool list : {false, true}) {
        for (bool refine : {false, true}) {
            PipelineVariant v;
            v.use_syllable_list = list;
            v.use_refine = refine;
            const auto p = build_prompt(butterfly_task(), v);
            EXPECT_EQ(contains(p, kRefineHeader), refine) << v.grid_label();
            EXPECT_EQ(contains(p, kSourceSegmentationInstruction), list) << v.grid_label();
            EXPECT_EQ(contains(p, kTargetListInstruction), list) << v.grid_label();
            EXPECT_EQ(contains(p, refine ? "4. Generate the Final" : "3. Generate the Final"), true) << v.grid_label();
        }
    }
}

TEST(Prompt, TextOnlyDropsMediaSentences) {
    const auto p = build_prompt(butterfly_task(), PipelineVariant{});
    EXPECT_FALSE(contains(p, "audio"));
    EXPECT_FALSE(contains(p, "video"));
    EXPECT_TRUE(contains(p, "meaning in context."));
}

TEST(Prompt, GridLabels) {
    PipelineVariant v;
    v.use_syllable_list = false;
    EXPECT_EQ(v.grid_label(), "✗✓");
    v.use_refine = false;
    EXPECT_EQ(v.grid_label(), "✗✗");
    EXPECT_EQ(v.slug(), "cot-nolist-norefine-T");
}

TEST(Prompt, BaselineStyles) {
    PipelineVariant v;
    v.style = PromptStyle::syllable_constrained;
    const auto c = build_prompt(butterfly_task(), v);
    EXPECT_TRUE(contains(c, "Real Syllable Count: 6"));
    EXPECT_FALSE(contains(c, "Identify the Core Lyric"));
    v.style = PromptStyle::plain;
    EXPECT_FALSE(contains(build_prompt(butterfly_task(), v), "Syllable Count"));
}

TEST(Modalities, ParseAndLabel) {
    EXPECT_EQ(Modalities::parse("t+v+a").label(), "T+A+V");
    EXPECT_EQ(Modalities::parse("T").label(), "T");
    EXPECT_THROW(Modalities::parse("A+V"), ConfigError);
    EXPECT_THROW(Modalities::parse("T+X"), ConfigError);
}

TEST(Task, Invariants) {
    EXPECT_EQ(butterfly_task().required_count, 6u);
    EXPECT_EQ(remember_task().required_count, 10u);
    EXPECT_EQ(TranslationTask::make("x", "hello", Language::EN, Language::KO, 9).required_count, 9u);
    EXPECT_THROW(TranslationTask::make("x", "hello", Language::EN, Language::EN), PreconditionError);
    EXPECT_THROW(TranslationTask::make("x", "  ", Language::EN, Language::KO), PreconditionError);
}

TEST(ParseTrace, ButterflyTrace) {
    const auto t = parse_trace(fixture("traces/butterfly.txt"));
    EXPECT_EQ(t.source_segmentation, kButterflySeg);
    EXPECT_EQ(t.target_syllable_list, (List{"나", "비", "가", "있", "어", "요"}));
    ASSERT_EQ(t.refinement_rounds.size(), 1u);
    EXPECT_EQ(t.refinement_rounds[0].syllables, (List{"나", "비", "가", "날", "아", "와"}));
    EXPECT_EQ(t.final_translation, "나비가 날아와");
}

TEST(ParseTrace, RememberMeTrace) {
    const auto raw = fixture("traces/remember_me.txt");
    const auto t = parse_trace(raw);
    EXPECT_EQ(t.raw_text, raw);
    ASSERT_TRUE(t.source_segmentation);
    EXPECT_EQ(t.source_segmentation->size(), 10u);
    EXPECT_EQ(t.target_syllable_list, kNine);
    ASSERT_EQ(t.refinement_rounds.size(), 2u);
    EXPECT_EQ(t.refinement_rounds[0].syllables, kNine);
    EXPECT_EQ(t.refinement_rounds[0].count, 9u);
    EXPECT_EQ(t.refinement_rounds[1].syllables, kTen);
    EXPECT_EQ(t.refinement_rounds[1].count, 10u);
    EXPECT_EQ(t.final_translation, "날 잊지 마 슬퍼하지는 마");
}

TEST(ParseTrace, LastPayloadWins) {
    const auto t = parse_trace(R"(Example: {"translation": "세 달의 겨울 추위"} then {"translation": "x"} and {"translation": 3})");
    EXPECT_EQ(t.final_translation, "x");
}

TEST(ParseTrace, MissingPayloadThrowsWithPartialTrace) {
    try {
        parse_trace(R"(["a", "b"] no answer {"other": "y"} {"translation": )");
        FAIL();
    } catch (const MissingFinalAnswerError& e) {
        ASSERT_EQ(e.traces().size(), 1u);
        EXPECT_EQ(e.traces()[0].source_segmentation, (List{"a", "b"}));
    }
}

TEST(ParseTrace, OnlyQuotedListsCount) {
    const auto lists = extract_syllable_lists(R"([1, 2] [a, b] ["x", 'y', “z”] [] ["unterminated, "q"] ["ok"])");
    ASSERT_EQ(lists.size(), 2u);
    EXPECT_EQ(lists[0].items, (List{"x", "y", "z"}));
    EXPECT_EQ(lists[1].items, (List{"ok"}));
}

TEST(ParseTrace, PositionalFallbackWithoutHeaders) {
    const auto t = parse_trace(R"(["a"] ["b"] ["c"] ["c"] ["d"] {"translation": "z"})");
    EXPECT_EQ(t.source_segmentation, List{"a"});
    EXPECT_EQ(t.target_syllable_list, List{"b"});
    ASSERT_EQ(t.refinement_rounds.size(), 2u);
    EXPECT_EQ(t.refinement_rounds[1].syllables, List{"d"});
}

TEST(Validate, Examples) {
    auto task = butterfly_task();
    EXPECT_EQ(validate("나비가 날아와", task), (Validation{6, true, true, true}));
    EXPECT_EQ(validate("", task), (Validation{0, false, false, true}));
    task.required_count = 10;
    EXPECT_EQ(validate("날 잊지 마", task), (Validation{4, false, true, true}));
    EXPECT_FALSE(validate("나비가\n날아와", task).single_line);
}

TEST(TranslateLine, ButterflyOneAttempt) {
    auto mock = ScriptedProvider::load(std::string(SINGABLE_FIXTURES) + "/scripts/butterfly.json");
    const auto r = translate_line(butterfly_task(), PipelineVariant{}, mock, fast_options());
    EXPECT_TRUE(r.constraint_met);
    EXPECT_EQ(r.attempts, 1);
    EXPECT_EQ(r.translation, "나비가 날아와");
    EXPECT_EQ(r.achieved_count, 6u);
    EXPECT_EQ(r.trace.source_segmentation, kButterflySeg);
}

TEST(TranslateLine, RememberMeRepromptsOnce) {
    auto mock = ScriptedProvider::load(std::string(SINGABLE_FIXTURES) + "/scripts/remember_me.json");
    const auto r = translate_line(remember_task(), PipelineVariant{}, mock, fast_options());
    EXPECT_TRUE(r.constraint_met);
    EXPECT_EQ(r.attempts, 2);
    EXPECT_EQ(r.best_attempt, 2);
    EXPECT_EQ(r.achieved_count, 10u);
    ASSERT_EQ(r.trace.refinement_rounds.size(), 2u);
    ASSERT_EQ(r.history.size(), 2u);
    EXPECT_EQ(r.history[0].validation->achieved_count, 9u);

    const auto reqs = mock.requests();
    ASSERT_EQ(reqs.size(), 2u);
    EXPECT_TRUE(reqs[0].followups.empty());
    ASSERT_EQ(reqs[1].followups.size(), 2u);
    EXPECT_EQ(reqs[1].followups[0].role, providers::Turn::Role::model);
    EXPECT_TRUE(contains(reqs[1].followups[1].text, "has 9 syllables"));
    EXPECT_TRUE(contains(reqs[1].followups[1].text, "is 10"));
    EXPECT_EQ(reqs[0].prompt_text, reqs[1].prompt_text);
}

TEST(TranslateLine, MalformedOutputExhausts) {
    auto mock = ScriptedProvider::sequence({std::string("I refuse to answer in JSON.")});
    try {
        translate_line(butterfly_task(), PipelineVariant{}, mock, fast_options());
        FAIL();
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.traces().size(), 3u);
    }
    EXPECT_EQ(mock.calls(), 3u);
}

TEST(TranslateLine, BestAttemptIsClosestCount) {
    auto mock = ScriptedProvider::sequence({std::string(R"({"translation": "나비"})"),
                                            std::string(R"({"translation": "나비가 날아"})"),
                                            std::string(R"({"translation": "가"})")});
    const auto r = translate_line(butterfly_task(), PipelineVariant{}, mock, fast_options());
    EXPECT_FALSE(r.constraint_met);
    EXPECT_EQ(r.attempts, 3);
    EXPECT_EQ(r.best_attempt, 2);
    EXPECT_EQ(r.translation, "나비가 날아");
    for (const auto& h : r.history) EXPECT_LE(r.achieved_count > 6 ? r.achieved_count - 6 : 6 - r.achieved_count,
                                              h.validation->achieved_count > 6 ? h.validation->achieved_count - 6
                                                                               : 6 - h.validation->achieved_count);
}

TEST(TranslateLine, TiesGoToEarliestAttempt) {
    auto mock = ScriptedProvider::sequence({std::string(R"({"translation": "나비가 날"})"),
                                            std::string(R"({"translation": "나비가 날아와요요"})")});
    auto opts = fast_options();
    opts.max_reprompts = 1;
    const auto r = translate_line(butterfly_task(), PipelineVariant{}, mock, opts);
    EXPECT_EQ(r.best_attempt, 1);
}

TEST(TranslateLine, MediaFilteredAndOptionallyDropped) {
    auto task = butterfly_task();
    task.media = {{providers::MediaKind::audio, "a.wav", std::nullopt}, {providers::MediaKind::video, "v.mp4", std::nullopt}};
    PipelineVariant v;
    v.modalities = Modalities::parse("T+V");
    auto mock = ScriptedProvider::sequence({std::string(R"({"translation": "나비"})"),
                                            std::string(R"({"translation": "나비가 날아와"})")});
    auto opts = fast_options();
    opts.resend_media = false;
    translate_line(task, v, mock, opts);
    const auto reqs = mock.requests();
    ASSERT_EQ(reqs.size(), 2u);
    ASSERT_EQ(reqs[0].media.size(), 1u);
    EXPECT_EQ(reqs[0].media[0].uri, "v.mp4");
    EXPECT_TRUE(reqs[1].media.empty());
}

TEST(TranslateLine, ProviderErrorsPropagate) {
    auto mock = ScriptedProvider::sequence({ScriptedProvider::Failure{providers::ProviderErrorKind::auth, "bad key"}});
    EXPECT_THROW(translate_line(butterfly_task(), PipelineVariant{}, mock, fast_options()), providers::ProviderError);
}

TEST(TranslateLine, DeterministicWithMocks) {
    auto a = ScriptedProvider::load(std::string(SINGABLE_FIXTURES) + "/scripts/remember_me.json");
    auto b = ScriptedProvider::load(std::string(SINGABLE_FIXTURES) + "/scripts/remember_me.json");
    const auto ra = translate_line(remember_task(), PipelineVariant{}, a, fast_options());
    const auto rb = translate_line(remember_task(), PipelineVariant{}, b, fast_options());
    EXPECT_EQ(ra.translation, rb.translation);
    EXPECT_EQ(ra.trace, rb.trace);
}
