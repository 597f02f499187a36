#include <gtest/gtest.h>

#include <random>

#include "singable/error.hpp"
#include "singable/phonetics/g2p.hpp"

using namespace singable;
using namespace singable::phonetics;

namespace {

IpaString ipa(std::string_view s) { return IpaString::parse(s); }

}  // namespace

TEST(Transcribe, ShippedExamples) {
    EXPECT_EQ(transcribe(Language::ES, "casa", G2PRuleSet::builtin(Language::ES)), ipa("k a s a"));
    EXPECT_EQ(transcribe(Language::KO, "나", G2PRuleSet::builtin(Language::KO)), ipa("n a"));
    EXPECT_TRUE(transcribe(Language::EN, "", G2PRuleSet::builtin(Language::EN)).empty());
    EXPECT_EQ(transcribe(Language::EN, "go", G2PRuleSet::builtin(Language::EN)), ipa("ɡ oʊ"));
    EXPECT_EQ(transcribe(Language::EN, "no", G2PRuleSet::builtin(Language::EN)), ipa("n oʊ"));
    EXPECT_EQ(transcribe(Language::JA, "ちょっと", G2PRuleSet::builtin(Language::JA)), ipa("tɕ o ʔ t o"));
    EXPECT_EQ(transcribe(Language::JA, "チョット", G2PRuleSet::builtin(Language::JA)), ipa("tɕ o ʔ t o"));
    EXPECT_EQ(transcribe(Language::KO, "날", G2PRuleSet::builtin(Language::KO)), ipa("n a l"));
    EXPECT_EQ(transcribe(Language::FR, "chanson", G2PRuleSet::builtin(Language::FR)), ipa("ʃ ɑ̃ s ɔ̃"));
}

TEST(Transcribe, DropsUnknownCharacters) {
    const auto t = transcribe_detailed(Language::JA, "雪だ", G2PRuleSet::builtin(Language::JA));
    EXPECT_EQ(t.ipa, ipa("d a"));
    EXPECT_EQ(t.dropped, 1u);
    const auto en = transcribe_detailed(Language::EN, "go, go!", G2PRuleSet::builtin(Language::EN));
    EXPECT_EQ(en.dropped, 0u);
    EXPECT_EQ(en.ipa.size(), 4u);
}

TEST(Transcribe, WrongRuleSetIsMissingRules) {
    EXPECT_THROW(transcribe(Language::FR, "chat", G2PRuleSet::builtin(Language::ES)), MissingRulesError);
    RuleSets only_en{{Language::EN, G2PRuleSet::builtin(Language::EN)}};
    EXPECT_THROW(phonetic_distance(Language::EN, "go", Language::KO, "나", only_en), MissingRulesError);
}

TEST(Transcribe, DeterministicAndTotalOverAlphabet) {
    std::mt19937 rng(5);
    const std::u32string letters = U"abcdefghijklmnopqrstuvwxyz";
    for (int trial = 0; trial < 200; ++trial) {
        std::string word;
        for (int k = 1 + rng() % 8; k > 0; --k) word.push_back(static_cast<char>(letters[rng() % 26]));
        const auto a = transcribe_detailed(Language::EN, word, G2PRuleSet::builtin(Language::EN));
        const auto b = transcribe_detailed(Language::EN, word, G2PRuleSet::builtin(Language::EN));
        EXPECT_EQ(a.ipa, b.ipa);
        EXPECT_EQ(a.dropped, 0u) << word;
    }
}

TEST(RuleTable, ParseContextsAndPriority) {
    const auto rules = G2PRuleSet::parse(Language::EN,
                                         "@vowels\tae\n"
                                         "@alphabet\tabcdex\n"
                                         "# comment\n"
                                         "c\ts\t/[ei]\n"
                                         "c\tk\n"
                                         "ch\ttʃ\n"
                                         "a\teɪ\t/Ce#\n"
                                         "a\tæ\n"
                                         "e\t-\tC/#\n"
                                         "e\tɛ\n"
                                         "b\tb\n"
                                         "d\td\n"
                                         "x\tk s\n");
    const auto t = [&](std::string_view s) { return transcribe(Language::EN, s, rules); };
    EXPECT_EQ(t("ce"), ipa("s"));
    EXPECT_EQ(t("ca"), ipa("k æ"));
    EXPECT_EQ(t("cha"), ipa("tʃ æ"));
    EXPECT_EQ(t("bade"), ipa("b eɪ d"));
    EXPECT_EQ(t("bad"), ipa("b æ d"));
    EXPECT_EQ(t("ax"), ipa("æ k s"));
}

TEST(RuleTable, RequiresAlphabetCoverage) {
    EXPECT_THROW(G2PRuleSet::parse(Language::EN, "@alphabet\tab\na\tæ\n"), ValidationError);
    EXPECT_THROW(G2PRuleSet::parse(Language::EN, "@alphabet\tab\na\tæ\nb\tb\t#/\n"), ValidationError);
    EXPECT_THROW(G2PRuleSet::parse(Language::EN, "a\n"), ParseError);
    EXPECT_THROW(G2PRuleSet::parse(Language::EN, "a\tb\tnoslash\n"), ParseError);
    EXPECT_NO_THROW(G2PRuleSet::parse(Language::EN, "@alphabet\tab\na\tæ\nb\tb\n"));
}

TEST(RuleTable, ShippedTablesLoad) {
    for (Language lang : kAllLanguages) EXPECT_FALSE(G2PRuleSet::builtin(lang).rules().empty());
}

TEST(EditDistance, Examples) {
    EXPECT_EQ(edit_distance(ipa("a b c"), ipa("a b c")), 0u);
    EXPECT_EQ(edit_distance(ipa(""), ipa("a b c d")), 4u);
    EXPECT_EQ(edit_distance(ipa("k ɪ t ə n"), ipa("s ɪ t ɪ ŋ")), 3u);
    // multi-code-point symbols are one edit unit
    EXPECT_EQ(edit_distance(ipa("tʃ a"), ipa("t a")), 1u);
}

TEST(PhoneticDistance, Examples) {
    EXPECT_EQ(phonetic_distance(Language::EN, "go", Language::EN, "no"), 1u);
    EXPECT_EQ(phonetic_distance(Language::KO, "나비가 날아와", Language::KO, "나비가 날아와"), 0u);
    EXPECT_EQ(phonetic_distance(Language::EN, "And there's a butterfly", Language::EN, "And there's a butterfly"), 0u);
    const auto en = transcribe(Language::EN, "cry", G2PRuleSet::builtin(Language::EN));
    const auto ko = transcribe(Language::KO, "마", G2PRuleSet::builtin(Language::KO));
    EXPECT_EQ(phonetic_distance(Language::EN, "cry", Language::KO, "마"), edit_distance(en, ko));
}
