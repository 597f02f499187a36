#include <gtest/gtest.h>

#include <random>

#include "singable/data/dataset.hpp"
#include "singable/error.hpp"

using namespace singable;
using namespace singable::data;

namespace {

const char* kOneSong = R"({
  "song-1": {
    "EN": {
      "title": "Test Song",
      "source_url": "https://example.com/lyrics/1",
      "media_url": null,
      "sections": [
        {"index": 0, "lines": [
          {"index": 0, "rep": ["RmtIhtsg", "Remember", "goodbye"], "time_span": [1000, 4200], "syllable_count": null}
        ]}
      ]
    }
  }
})";

LyricLine make_line(std::size_t idx, std::string_view text) {
    LyricLine l;
    l.index = idx;
    l.rep = encode_line(Language::EN, text);
    return l;
}

SongEntry make_entry(Language lang, const std::vector<std::vector<std::string>>& sections) {
    SongEntry e;
    e.title = "t";
    e.source_url = "https://example.com/x";
    e.language = lang;
    for (std::size_t s = 0; s < sections.size(); ++s) {
        Section sec;
        sec.index = s;
        for (std::size_t i = 0; i < sections[s].size(); ++i) {
            LyricLine l;
            l.index = i;
            l.rep = encode_line(lang, sections[s][i]);
            sec.lines.push_back(l);
        }
        e.sections.push_back(sec);
    }
    return e;
}

}  // namespace

TEST(ParseDataset, OneSongOneLine) {
    const auto d = parse_dataset(kOneSong);
    ASSERT_EQ(d.songs.size(), 1u);
    const auto& en = d.songs.at("song-1").at(Language::EN);
    ASSERT_EQ(en.sections.size(), 1u);
    ASSERT_EQ(en.sections[0].lines.size(), 1u);
    const auto& line = en.sections[0].lines[0];
    EXPECT_EQ(line.rep.signature, "RmtIhtsg");
    EXPECT_EQ(line.rep.token_count, 8u);
    EXPECT_EQ(line.time_span, (TimeSpan{1000, 4200}));
    EXPECT_FALSE(line.syllable_count.has_value());
    EXPECT_FALSE(en.media_url.has_value());
}

TEST(ParseDataset, EmptyMap) { EXPECT_TRUE(parse_dataset("{}").songs.empty()); }

TEST(ParseDataset, LanguageCodesAreCaseInsensitive) {
    std::string doc = kOneSong;
    doc.replace(doc.find("\"EN\""), 4, "\"en\"");
    EXPECT_EQ(parse_dataset(doc), parse_dataset(kOneSong));
}

TEST(ParseDataset, MissingEnglishSibling) {
    std::string doc = kOneSong;
    doc.replace(doc.find("\"EN\""), 4, "\"KO\"");
    EXPECT_THROW(parse_dataset(doc), ValidationError);
}

TEST(ParseDataset, MalformedSyntaxReportsOffset) {
    try {
        parse_dataset("{\"a\": [1, 2,, 3]}");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 12u);
    }
}

TEST(ParseDataset, ValidationNamesLocation) {
    std::string doc = kOneSong;
    doc.replace(doc.find("[1000, 4200]"), 12, "[5000, 4200]");
    try {
        parse_dataset(doc);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("song-1"), std::string::npos) << what;
        EXPECT_NE(what.find("section 0"), std::string::npos) << what;
        EXPECT_NE(what.find("line 0"), std::string::npos) << what;
    }
}

TEST(ParseDataset, RejectsBrokenInvariants) {
    const auto with = [](std::string from, std::string to) {
        std::string doc = kOneSong;
        doc.replace(doc.find(from), from.size(), to);
        return doc;
    };
    EXPECT_THROW(parse_dataset(with("\"https://example.com/lyrics/1\"", "\"\"")), ValidationError);
    EXPECT_THROW(parse_dataset(with("\"Remember\"", "\"remember\"")), ValidationError);
    EXPECT_THROW(parse_dataset(with("{\"index\": 0, \"rep\"", "{\"index\": 1, \"rep\"")), ValidationError);
    EXPECT_THROW(parse_dataset(with("\"EN\"", "\"DE\"")), ValidationError);
}

TEST(ParseDataset, StrictModeRejectsUnknownFields) {
    std::string doc = kOneSong;
    doc.replace(doc.find("\"title\""), 7, "\"artist\": \"x\", \"title\"");
    EXPECT_NO_THROW(parse_dataset(doc));
    ParseOptions strict;
    strict.strict = true;
    EXPECT_THROW(parse_dataset(doc, strict), ValidationError);
}

TEST(SerializeDataset, EmptyIsCanonical) { EXPECT_EQ(serialize_dataset(Dataset{}), "{}\n"); }

TEST(SerializeDataset, RoundTrip) {
    const auto d = parse_dataset(kOneSong);
    EXPECT_EQ(parse_dataset(serialize_dataset(d)), d);
}

TEST(SerializeDataset, OmitsAbsentOptionals) {
    Dataset d;
    d.songs["s"][Language::EN] = make_entry(Language::EN, {{"Go"}});
    const auto bytes = serialize_dataset(d);
    EXPECT_EQ(bytes.find("media_url"), std::string::npos);
    EXPECT_EQ(bytes.find("time_span"), std::string::npos);
    EXPECT_EQ(bytes.find("syllable_count"), std::string::npos);
    EXPECT_EQ(parse_dataset(bytes), d);
}

TEST(SerializeDataset, RoundTripWithEveryField) {
    Dataset d;
    auto en = make_entry(Language::EN, {{"And there's a butterfly", "Go"}, {"Remember me"}});
    en.media_url = "https://example.com/v.mp4";
    en.sections[0].lines[0].time_span = TimeSpan{0, 1500};
    en.sections[0].lines[0].syllable_count = 6;
    en.sections[0].lines[1].resolved_text = "Go";
    d.songs["b"][Language::EN] = en;
    d.songs["b"][Language::KO] = make_entry(Language::KO, {{"나비가 날아와"}});
    d.songs["a"][Language::EN] = make_entry(Language::EN, {{"x y z"}});
    EXPECT_EQ(parse_dataset(serialize_dataset(d)), d);
    EXPECT_EQ(serialize_dataset(parse_dataset(serialize_dataset(d))), serialize_dataset(d));
}

TEST(EncodeLine, ReferenceExample) {
    const auto rep = encode_line(Language::EN, "Remember me though I have to say goodbye");
    EXPECT_EQ(rep.signature, "RmtIhtsg");
    EXPECT_EQ(rep.first_token, "Remember");
    EXPECT_EQ(rep.last_token, "goodbye");
    EXPECT_EQ(rep.token_count, 8u);
}

TEST(EncodeLine, SingleToken) {
    const auto rep = encode_line(Language::EN, "Go");
    EXPECT_EQ(rep.signature, "G");
    EXPECT_EQ(rep.first_token, "Go");
    EXPECT_EQ(rep.last_token, "Go");
}

TEST(EncodeLine, PunctuationKept) {
    const auto rep = encode_line(Language::EN, "don't cry, baby!");
    EXPECT_EQ(rep.signature, "dcb");
    EXPECT_EQ(rep.last_token, "baby!");
    EXPECT_EQ(encode_line(Language::KO, "나비가 날아와").signature, "나날");
}

TEST(EncodeLine, EmptyLine) {
    EXPECT_THROW(encode_line(Language::EN, ""), EmptyLineError);
    EXPECT_THROW(encode_line(Language::EN, " \t "), EmptyLineError);
}

TEST(EncodeLine, JapanesePairsMorphologicalTokens) {
    PreSegmentedTokenizer mecab;
    const auto rep = encode_line(Language::JA, "ありの|ままの|姿|見せる", mecab);
    EXPECT_EQ(rep.signature, "あ姿");
    EXPECT_EQ(rep.first_token, "ありのままの");
    EXPECT_EQ(rep.last_token, "姿見せる");
    const auto odd = encode_line(Language::JA, "雪 が 降る", mecab);
    EXPECT_EQ(odd.signature, "雪降");
    EXPECT_EQ(odd.last_token, "降る");
}

TEST(EncodeLine, JapaneseNeedsMorphologicalTokenizer) {
    WhitespaceTokenizer ws;
    EXPECT_THROW(encode_line(Language::JA, "ありのままの", ws), PreconditionError);
}

TEST(MatchLine, Examples) {
    const auto rep = encode_line(Language::EN, "Remember me though I have to say goodbye");
    EXPECT_TRUE(match_line(rep, "Remember me though I have to say goodbye", Language::EN));
    EXPECT_FALSE(match_line(rep, "Remember me", Language::EN));
    EXPECT_FALSE(match_line(rep, "", Language::EN));
    EXPECT_TRUE(match_line(encode_line(Language::EN, "Go"), "Go", Language::EN));
}

TEST(MatchLine, AgreesWithEncoderOnRandomTokens) {
    std::mt19937 rng(3);
    const std::vector<std::string> vocab = {"a", "an", "Bee", "cat", "dog's", "e,", "Far", "go!", "hm"};
    for (int trial = 0; trial < 500; ++trial) {
        const auto random_line = [&] {
            std::string s;
            for (int k = 1 + rng() % 4; k > 0; --k) s += (s.empty() ? "" : " ") + vocab[rng() % vocab.size()];
            return s;
        };
        const auto a = random_line();
        const auto b = random_line();
        const auto rep = encode_line(Language::EN, a);
        EXPECT_EQ(match_line(rep, b, Language::EN), encode_line(Language::EN, b) == rep);
    }
}

TEST(ReconstructSong, ExactCandidates) {
    const auto e = make_entry(Language::EN, {{"one line here", "second line"}, {"third"}});
    const auto r = reconstruct_song(e, {"one line here", "second line", "third"});
    EXPECT_TRUE(r.unmatched.empty());
    EXPECT_EQ(r.resolved.sections[1].lines[0].resolved_text, "third");
}

TEST(ReconstructSong, SkipsInterleavedNoise) {
    const auto e = make_entry(Language::EN, {{"one line here", "second line"}});
    const auto r = reconstruct_song(e, {"[Verse 1]", "one line here", "Advertisement", "second line"});
    EXPECT_TRUE(r.unmatched.empty());
    EXPECT_EQ(r.resolved.sections[0].lines[1].resolved_text, "second line");
}

TEST(ReconstructSong, NoCandidates) {
    const auto e = make_entry(Language::EN, {{"a b", "c d"}});
    const auto r = reconstruct_song(e, {});
    EXPECT_EQ(r.unmatched, (std::vector<LineRef>{{0, 0}, {0, 1}}));
}

TEST(ReconstructSong, Idempotent) {
    const auto e = make_entry(Language::EN, {{"a b", "c d"}});
    const auto once = reconstruct_song(e, {"a b", "c d"}).resolved;
    EXPECT_EQ(reconstruct_song(once, {"a b", "c d"}).resolved, once);
    EXPECT_EQ(reconstruct_song(once, {}).resolved, once);
}

TEST(DatasetStats, Counts) {
    EXPECT_EQ(dataset_stats(Dataset{}).per_language.at(Language::EN), LanguageStats{});
    Dataset d;
    d.songs["a"][Language::EN] = make_entry(Language::EN, {{"l1", "l2", "l3"}, {"l4"}});
    d.songs["a"][Language::ES] = make_entry(Language::ES, {{"x"}});
    d.songs["b"][Language::EN] = make_entry(Language::EN, {{"l5", "l6", "l7"}});
    const auto stats = dataset_stats(d);
    EXPECT_EQ(stats.per_language.at(Language::EN), (LanguageStats{2, 3, 7}));
    EXPECT_EQ(stats.per_language.at(Language::ES).songs, 1u);
    EXPECT_EQ(stats.per_language.at(Language::JA), LanguageStats{});
}
