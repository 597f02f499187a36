#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <thread>

#include "singable/providers/bounded.hpp"
#include "singable/providers/http.hpp"
#include "singable/providers/mock.hpp"
#include "singable/providers/retry.hpp"
#include "singable/providers/trace_store.hpp"

using namespace singable;
using namespace singable::providers;

namespace {

GenerationRequest request(std::string task = "t1", std::string prompt = "hello") {
    GenerationRequest r;
    r.task_id = std::move(task);
    r.prompt_text = std::move(prompt);
    return r;
}

RetryPolicy no_sleep(int attempts) {
    RetryPolicy p;
    p.max_attempts = attempts;
    p.sleeper = [](std::chrono::milliseconds) {};
    return p;
}

std::string temp_path(const std::string& name) {
    const auto p = std::filesystem::temp_directory_path() / ("singable_" + std::to_string(::getpid()) + "_" + name);
    std::filesystem::remove(p);
    return p.string();
}

ScriptedProvider::Reply fail(ProviderErrorKind kind) { return ScriptedProvider::Failure{kind, "scripted"}; }

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return d / std::sqrt(na * nb);
}

}  // namespace

TEST(GenerationConfig, Defaults) {
    const auto g = GenerationConfig::gemini_defaults();
    EXPECT_DOUBLE_EQ(g.temperature, 0.6);
    EXPECT_DOUBLE_EQ(g.top_p, 0.95);
    EXPECT_EQ(g.top_k, 40);
    EXPECT_EQ(g.max_output_tokens, 8192);
    const auto q = GenerationConfig::qwen_defaults();
    EXPECT_DOUBLE_EQ(q.temperature, 0.7);
    EXPECT_EQ(q.max_output_tokens, 4096);
    GenerationConfig bad;
    bad.top_p = 1.5;
    EXPECT_THROW(bad.validate(), PreconditionError);
}

TEST(Request, DigestIgnoresTaskIdOnly) {
    auto a = request("a");
    auto b = request("b");
    EXPECT_EQ(a.digest(), b.digest());
    EXPECT_EQ(a.digest().size(), 64u);
    b.followups.push_back({Turn::Role::user, "again"});
    EXPECT_NE(a.digest(), b.digest());
    EXPECT_THROW(request("x", "").validate(), PreconditionError);
}

TEST(Media, MarginClampsAtZero) {
    EXPECT_EQ(with_margin({1000, 5000}, kDefaultMediaMarginMs), (data::TimeSpan{0, 7000}));
    EXPECT_EQ(with_margin({3000, 5000}, 500), (data::TimeSpan{2500, 5500}));
}

TEST(Retry, TwoFailuresThenSuccessWithCapThree) {
    auto mock = ScriptedProvider::sequence({fail(ProviderErrorKind::rate_limit), fail(ProviderErrorKind::server),
                                            std::string("ok")});
    std::vector<std::chrono::milliseconds> sleeps;
    auto policy = no_sleep(3);
    policy.sleeper = [&](std::chrono::milliseconds d) { sleeps.push_back(d); };
    EXPECT_EQ(generate(request(), mock, policy), "ok");
    EXPECT_EQ(mock.calls(), 3u);
    ASSERT_EQ(sleeps.size(), 2u);
    EXPECT_EQ(sleeps[0].count(), 500);
    EXPECT_EQ(sleeps[1].count(), 1000);
}

TEST(Retry, CapOneExhausts) {
    auto mock = ScriptedProvider::sequence({fail(ProviderErrorKind::timeout), fail(ProviderErrorKind::timeout),
                                            std::string("ok")});
    try {
        generate(request(), mock, no_sleep(1));
        FAIL();
    } catch (const ProviderError& e) {
        EXPECT_EQ(e.kind(), ProviderErrorKind::exhausted);
    }
    EXPECT_EQ(mock.calls(), 1u);
}

TEST(Retry, NonRetryableIsImmediate) {
    auto mock = ScriptedProvider::sequence({fail(ProviderErrorKind::auth), std::string("ok")});
    try {
        generate(request(), mock, no_sleep(5));
        FAIL();
    } catch (const ProviderError& e) {
        EXPECT_EQ(e.kind(), ProviderErrorKind::auth);
    }
    EXPECT_EQ(mock.calls(), 1u);
}

TEST(Retry, BackoffIsCapped) {
    RetryPolicy p;
    EXPECT_EQ(p.backoff_before(2).count(), 500);
    EXPECT_EQ(p.backoff_before(3).count(), 1000);
    EXPECT_EQ(p.backoff_before(20).count(), 8000);
}

TEST(TraceStore, RecordsEveryAttempt) {
    const auto path = temp_path("trace.jsonl");
    {
        TraceStore store(path, [] { return std::string("2025-01-01T00:00:00.000Z"); });
        auto mock = ScriptedProvider::sequence({fail(ProviderErrorKind::network), std::string("done")});
        generate(request("song|1"), mock, no_sleep(3), &store);
    }
    const auto records = TraceStore::read(path);
    ASSERT_EQ(records.size(), 2u);
    EXPECT_EQ(records[0].task_id, "song|1");
    EXPECT_EQ(records[0].attempt, 1);
    EXPECT_TRUE(records[0].error.has_value());
    EXPECT_EQ(records[1].attempt, 2);
    EXPECT_EQ(records[1].response_text, "done");
    EXPECT_EQ(records[1].request_digest, request().digest());
    EXPECT_EQ(records[1].started_at, "2025-01-01T00:00:00.000Z");

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    const auto j = nlohmann::json::parse(line);
    for (const char* key : {"task_id", "attempt", "request_digest", "response_text", "timestamps"})
        EXPECT_TRUE(j.contains(key)) << key;
    std::filesystem::remove(path);
}

TEST(ScriptedProvider, RulesAndPerTaskCursors) {
    auto mock = ScriptedProvider::parse(R"({
        "identity": "mock:test",
        "rules": [{"match": "butterfly", "replies": ["one", {"text": "two"}]}],
        "default": ["fallback"]
    })");
    EXPECT_EQ(mock.identity(), "mock:test");
    EXPECT_EQ(mock.generate_once(request("a", "a butterfly")), "one");
    EXPECT_EQ(mock.generate_once(request("b", "a butterfly")), "one");
    EXPECT_EQ(mock.generate_once(request("a", "a butterfly")), "two");
    EXPECT_EQ(mock.generate_once(request("a", "a butterfly")), "two");
    EXPECT_EQ(mock.generate_once(request("a", "moth")), "fallback");
}

TEST(ScriptedProvider, NoMatchIsContractError) {
    auto mock = ScriptedProvider::parse(R"({"rules": [{"match": "x", "replies": ["y"]}]})");
    try {
        mock.generate_once(request("a", "zzz"));
        FAIL();
    } catch (const ProviderError& e) {
        EXPECT_EQ(e.kind(), ProviderErrorKind::contract);
    }
    EXPECT_THROW(ScriptedProvider::parse("{"), ParseError);
    EXPECT_THROW(ScriptedProvider::parse(R"({"rules": [{"match": "x", "replies": [{"error": "nope"}]}]})"),
                 ValidationError);
}

TEST(HashingEmbedder, DeterministicAndDiscriminative) {
    HashingEmbedder e;
    EXPECT_EQ(e.embed_text("abc"), e.embed_text("abc"));
    EXPECT_EQ(e.embed_text("abc").size(), 256u);
    EXPECT_LT(cosine(e.embed_text("abc"), e.embed_text("abd")), 1.0);
    EXPECT_THROW(embed({{}, ""}, e), PreconditionError);
    const auto v = embed({{"x", "y"}, ""}, e);
    EXPECT_EQ(v.size(), 2u);
}

namespace {

class RaggedEmbedder final : public EmbeddingProvider {
public:
    std::vector<std::vector<double>> embed_once(const EmbeddingRequest& r) override {
        std::vector<std::vector<double>> out;
        for (std::size_t i = 0; i < r.texts.size(); ++i) out.push_back(std::vector<double>(i + 1, 1.0));
        return out;
    }
    std::string identity() const override { return "ragged"; }
};

class SlowProvider final : public GenerationProvider {
public:
    std::string generate_once(const GenerationRequest&) override {
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
        return "x";
    }
    std::string identity() const override { return "slow"; }
};

}  // namespace

TEST(Embed, DimensionMismatchIsContractError) {
    RaggedEmbedder e;
    try {
        embed({{"a", "b"}, ""}, e, no_sleep(1));
        FAIL();
    } catch (const ProviderError& err) {
        EXPECT_EQ(err.kind(), ProviderErrorKind::contract);
    }
}

TEST(BoundedProvider, NeverExceedsLimit) {
    SlowProvider slow;
    BoundedProvider bounded(slow, 3);
    std::vector<std::thread> threads;
    for (int i = 0; i < 12; ++i) threads.emplace_back([&] { bounded.generate_once(request()); });
    for (auto& t : threads) t.join();
    EXPECT_LE(bounded.peak_in_flight(), 3u);
    EXPECT_GE(bounded.peak_in_flight(), 1u);
}

TEST(Http, StatusClassification) {
    EXPECT_EQ(classify_status(401), ProviderErrorKind::auth);
    EXPECT_EQ(classify_status(403), ProviderErrorKind::auth);
    EXPECT_EQ(classify_status(429), ProviderErrorKind::rate_limit);
    EXPECT_EQ(classify_status(504), ProviderErrorKind::timeout);
    EXPECT_EQ(classify_status(503), ProviderErrorKind::server);
    EXPECT_EQ(classify_status(400), ProviderErrorKind::contract);
}

TEST(Http, GeminiBodyCarriesConfigAndMedia) {
    auto r = request();
    r.media.push_back({MediaKind::video, "gs://bucket/clip.mp4", data::TimeSpan{1500, 4000}});
    r.followups.push_back({Turn::Role::model, "prev"});
    r.followups.push_back({Turn::Role::user, "fix"});
    const auto body = nlohmann::json::parse(GeminiProvider::build_body(r));
    EXPECT_EQ(body["contents"].size(), 3u);
    EXPECT_EQ(body["contents"][1]["role"], "model");
    EXPECT_DOUBLE_EQ(body["generationConfig"]["temperature"].get<double>(), 0.6);
    EXPECT_EQ(body["generationConfig"]["topK"], 40);
    EXPECT_EQ(body["generationConfig"]["maxOutputTokens"], 8192);
    const auto dump = body.dump();
    EXPECT_NE(dump.find("gs://bucket/clip.mp4"), std::string::npos);
    EXPECT_NE(dump.find("\"1.500s\""), std::string::npos);
}

TEST(Http, GeminiParseResponse) {
    EXPECT_EQ(GeminiProvider::parse_response(
                  R"({"candidates":[{"content":{"parts":[{"text":"a"},{"text":"b"}]}}]})"),
              "ab");
    EXPECT_THROW(GeminiProvider::parse_response(R"({"candidates":[]})"), ProviderError);
}

TEST(Http, OpenAICompatibleRejectsMedia) {
    OpenAICompatibleProvider p({"http://127.0.0.1:9", "m", "", std::chrono::seconds(1)});
    auto r = request();
    r.media.push_back({MediaKind::audio, "a.wav", std::nullopt});
    try {
        p.generate_once(r);
        FAIL();
    } catch (const ProviderError& e) {
        EXPECT_EQ(e.kind(), ProviderErrorKind::contract);
    }
}

TEST(Http, LocalServerRoundTrip) {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        if (req.get_header_value("Authorization") != "Bearer k") {
            res.status = 401;
            return;
        }
        const auto body = nlohmann::json::parse(req.body);
        const std::string text = body["messages"].back()["content"];
        res.set_content(nlohmann::json{{"choices", {{{"message", {{"content", "echo:" + text}}}}}}}.dump(),
                        "application/json");
    });
    server.Post("/v1/embeddings", [&](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        nlohmann::json data = nlohmann::json::array();
        for (std::size_t i = 0; i < body["input"].size(); ++i)
            data.push_back({{"index", i}, {"embedding", {1.0, static_cast<double>(i)}}});
        res.set_content(nlohmann::json{{"data", data}}.dump(), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const std::string base = "http://127.0.0.1:" + std::to_string(port) + "/v1";
    OpenAICompatibleProvider ok({base, "m", "k", std::chrono::seconds(5)});
    EXPECT_EQ(ok.generate_once(request("t", "hi")), "echo:hi");

    OpenAICompatibleProvider wrong_key({base, "m", "bad", std::chrono::seconds(5)});
    try {
        wrong_key.generate_once(request());
        ADD_FAILURE();
    } catch (const ProviderError& e) {
        EXPECT_EQ(e.kind(), ProviderErrorKind::auth);
    }

    OpenAICompatibleEmbedder emb({base, "e", "k", std::chrono::seconds(5)});
    const auto v = emb.embed_once({{"a", "b"}, "e"});
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[1], (std::vector<double>{1.0, 1.0}));

    server.stop();
    t.join();
    EXPECT_EQ(hits.load(), 2);
}

TEST(Http, UnreachableIsNetworkError) {
    OpenAICompatibleProvider p({"http://127.0.0.1:1", "m", "", std::chrono::seconds(2)});
    try {
        p.generate_once(request());
        FAIL();
    } catch (const ProviderError& e) {
        EXPECT_TRUE(e.kind() == ProviderErrorKind::network || e.kind() == ProviderErrorKind::timeout);
        EXPECT_TRUE(e.retryable());
    }
}
