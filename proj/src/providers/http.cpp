#include "singable/providers/http.hpp"

#include <httplib.h>

#include <algorithm>
#include <json.hpp>

namespace singable::providers {

using nlohmann::json;

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path without trailing slash
};

Endpoint split_url(const std::string& url) {
    const auto scheme = url.find("://");
    if (scheme == std::string::npos) throw ConfigError("provider URL needs a scheme: '" + url + "'");
    const auto slash = url.find('/', scheme + 3);
    Endpoint e{url.substr(0, slash), slash == std::string::npos ? "" : url.substr(slash)};
    while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
    return e;
}

std::string post_json(const HttpSettings& s, const std::string& path, const std::string& body,
                      const httplib::Headers& headers) {
    const auto ep = split_url(s.base_url);
    httplib::Client cli(ep.origin);
    cli.set_connection_timeout(std::chrono::seconds(10));
    cli.set_read_timeout(s.timeout);
    cli.set_write_timeout(s.timeout);
    auto res = cli.Post(ep.prefix + path, headers, body, "application/json");
    if (!res) {
        const auto err = res.error();
        const auto kind = err == httplib::Error::Read || err == httplib::Error::Write ? ProviderErrorKind::timeout
                                                                                      : ProviderErrorKind::network;
        throw ProviderError(kind, "request to " + ep.origin + " failed: " + httplib::to_string(err));
    }
    if (res->status < 200 || res->status >= 300) {
        std::string snippet = res->body.substr(0, 300);
        throw ProviderError(classify_status(res->status), "HTTP " + std::to_string(res->status) + ": " + snippet);
    }
    return res->body;
}

std::string mime_type(const MediaAttachment& m) {
    const auto dot = m.uri.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : m.uri.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == "mp3") return "audio/mpeg";
    if (ext == "wav") return "audio/wav";
    if (ext == "m4a") return "audio/mp4";
    if (ext == "flac") return "audio/flac";
    if (ext == "ogg") return "audio/ogg";
    if (ext == "webm") return "video/webm";
    if (ext == "mov") return "video/quicktime";
    return m.kind == MediaKind::audio ? "audio/mpeg" : "video/mp4";
}

std::string seconds(std::int64_t ms) {
    std::string s = std::to_string(ms / 1000);
    if (ms % 1000) {
        char buf[8];
        std::snprintf(buf, sizeof buf, ".%03d", static_cast<int>(ms % 1000));
        s += buf;
    }
    return s + "s";
}

json parse_body(const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw ProviderError(ProviderErrorKind::contract, std::string("response is not JSON: ") + e.what());
    }
}

}  // namespace

ProviderErrorKind classify_status(int status) noexcept {
    if (status == 401 || status == 403) return ProviderErrorKind::auth;
    if (status == 429) return ProviderErrorKind::rate_limit;
    if (status == 408 || status == 504) return ProviderErrorKind::timeout;
    if (status >= 500) return ProviderErrorKind::server;
    return ProviderErrorKind::contract;
}

// ---- Gemini -------------------------------------------------------------------------

GeminiProvider::GeminiProvider(HttpSettings settings) : settings_(std::move(settings)) {
    if (settings_.base_url.empty()) settings_.base_url = "https://generativelanguage.googleapis.com";
}

std::string GeminiProvider::build_body(const GenerationRequest& request) {
    json parts = json::array();
    for (const auto& m : request.media) {
        json part{{"file_data", {{"mime_type", mime_type(m)}, {"file_uri", m.uri}}}};
        if (m.time_span)
            part["video_metadata"] = {{"start_offset", seconds(m.time_span->start_ms)},
                                      {"end_offset", seconds(m.time_span->end_ms)}};
        parts.push_back(part);
    }
    parts.push_back({{"text", request.prompt_text}});
    json contents = json::array({{{"role", "user"}, {"parts", parts}}});
    for (const auto& t : request.followups)
        contents.push_back({{"role", t.role == Turn::Role::user ? "user" : "model"}, {"parts", {{{"text", t.text}}}}});

    json cfg{{"temperature", request.config.temperature},
             {"topP", request.config.top_p},
             {"maxOutputTokens", request.config.max_output_tokens}};
    if (request.config.top_k) cfg["topK"] = *request.config.top_k;
    if (request.config.presence_penalty) cfg["presencePenalty"] = *request.config.presence_penalty;
    return json{{"contents", contents}, {"generationConfig", cfg}}.dump();
}

std::string GeminiProvider::parse_response(const std::string& body) {
    const auto j = parse_body(body);
    const auto candidates = j.find("candidates");
    if (candidates == j.end() || !candidates->is_array() || candidates->empty())
        throw ProviderError(ProviderErrorKind::contract, "response has no candidates");
    std::string text;
    const auto& c = (*candidates)[0];
    if (c.contains("content") && c["content"].contains("parts")) {
        for (const auto& p : c["content"]["parts"]) {
            if (p.contains("text") && p["text"].is_string()) text += p["text"].get<std::string>();
        }
    }
    if (text.empty()) throw ProviderError(ProviderErrorKind::contract, "candidate carries no text");
    return text;
}

std::string GeminiProvider::generate_once(const GenerationRequest& request) {
    const std::string path = "/v1beta/models/" + settings_.model + ":generateContent";
    return parse_response(post_json(settings_, path, build_body(request), {{"x-goog-api-key", settings_.api_key}}));
}

// ---- OpenAI-compatible --------------------------------------------------------------

OpenAICompatibleProvider::OpenAICompatibleProvider(HttpSettings settings) : settings_(std::move(settings)) {}

std::string OpenAICompatibleProvider::build_body(const GenerationRequest& request, const std::string& model) {
    if (!request.media.empty())
        throw ProviderError(ProviderErrorKind::contract, "this provider accepts text-only requests");
    json messages = json::array({{{"role", "user"}, {"content", request.prompt_text}}});
    for (const auto& t : request.followups)
        messages.push_back({{"role", t.role == Turn::Role::user ? "user" : "assistant"}, {"content", t.text}});
    json body{{"model", model},
              {"messages", messages},
              {"temperature", request.config.temperature},
              {"top_p", request.config.top_p},
              {"max_tokens", request.config.max_output_tokens}};
    if (request.config.top_k) body["top_k"] = *request.config.top_k;
    if (request.config.presence_penalty) body["presence_penalty"] = *request.config.presence_penalty;
    return body.dump();
}

std::string OpenAICompatibleProvider::parse_response(const std::string& body) {
    const auto j = parse_body(body);
    const auto choices = j.find("choices");
    if (choices == j.end() || !choices->is_array() || choices->empty())
        throw ProviderError(ProviderErrorKind::contract, "response has no choices");
    const auto& msg = (*choices)[0].value("message", json::object());
    if (!msg.contains("content") || !msg["content"].is_string())
        throw ProviderError(ProviderErrorKind::contract, "choice carries no text content");
    return msg["content"].get<std::string>();
}

std::string OpenAICompatibleProvider::generate_once(const GenerationRequest& request) {
    httplib::Headers headers;
    if (!settings_.api_key.empty()) headers.emplace("Authorization", "Bearer " + settings_.api_key);
    return parse_response(post_json(settings_, "/chat/completions", build_body(request, settings_.model), headers));
}

OpenAICompatibleEmbedder::OpenAICompatibleEmbedder(HttpSettings settings) : settings_(std::move(settings)) {}

std::vector<std::vector<double>> OpenAICompatibleEmbedder::parse_response(const std::string& body) {
    const auto j = parse_body(body);
    const auto data = j.find("data");
    if (data == j.end() || !data->is_array()) throw ProviderError(ProviderErrorKind::contract, "response has no data");
    std::vector<std::pair<std::size_t, std::vector<double>>> items;
    for (const auto& d : *data) {
        if (!d.contains("embedding") || !d["embedding"].is_array())
            throw ProviderError(ProviderErrorKind::contract, "data item has no embedding");
        items.emplace_back(d.value("index", items.size()), d["embedding"].get<std::vector<double>>());
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<double>> out;
    for (auto& [idx, v] : items) out.push_back(std::move(v));
    return out;
}

std::vector<std::vector<double>> OpenAICompatibleEmbedder::embed_once(const EmbeddingRequest& request) {
    httplib::Headers headers;
    if (!settings_.api_key.empty()) headers.emplace("Authorization", "Bearer " + settings_.api_key);
    const std::string model = request.model_id.empty() ? settings_.model : request.model_id;
    const json body{{"model", model}, {"input", request.texts}};
    return parse_response(post_json(settings_, "/embeddings", body.dump(), headers));
}

}  // namespace singable::providers
