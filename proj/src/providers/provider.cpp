#include "singable/providers/provider.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <json.hpp>

namespace singable::providers {

using nlohmann::json;

void GenerationConfig::validate() const {
    if (!(temperature >= 0.0)) throw PreconditionError("temperature must be >= 0");
    if (!(top_p > 0.0 && top_p <= 1.0)) throw PreconditionError("top_p must be in (0, 1]");
    if (max_output_tokens < 1) throw PreconditionError("max_output_tokens must be >= 1");
    if (top_k && *top_k < 1) throw PreconditionError("top_k must be >= 1");
}

std::string_view to_string(MediaKind kind) noexcept { return kind == MediaKind::audio ? "audio" : "video"; }

data::TimeSpan with_margin(const data::TimeSpan& span, std::int64_t margin_ms) noexcept {
    return {std::max<std::int64_t>(0, span.start_ms - margin_ms), span.end_ms + margin_ms};
}

void GenerationRequest::validate() const {
    if (prompt_text.empty()) throw PreconditionError("generation request has an empty prompt");
    config.validate();
}

std::string GenerationRequest::digest() const {
    json j;
    j["prompt"] = prompt_text;
    j["media"] = json::array();
    for (const auto& m : media) {
        json mj{{"kind", to_string(m.kind)}, {"uri", m.uri}};
        if (m.time_span) mj["time_span"] = {m.time_span->start_ms, m.time_span->end_ms};
        j["media"].push_back(mj);
    }
    j["config"] = {{"temperature", config.temperature},
                   {"top_p", config.top_p},
                   {"max_output_tokens", config.max_output_tokens}};
    if (config.top_k) j["config"]["top_k"] = *config.top_k;
    if (config.presence_penalty) j["config"]["presence_penalty"] = *config.presence_penalty;
    j["followups"] = json::array();
    for (const auto& t : followups) j["followups"].push_back({t.role == Turn::Role::user ? "user" : "model", t.text});
    return sha256_hex(j.dump());
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

std::string_view to_string(ProviderErrorKind kind) noexcept {
    switch (kind) {
        case ProviderErrorKind::auth: return "auth";
        case ProviderErrorKind::rate_limit: return "rate_limit";
        case ProviderErrorKind::timeout: return "timeout";
        case ProviderErrorKind::network: return "network";
        case ProviderErrorKind::server: return "server";
        case ProviderErrorKind::contract: return "contract";
        case ProviderErrorKind::exhausted: return "exhausted";
    }
    return "unknown";
}

ProviderError::ProviderError(ProviderErrorKind kind, const std::string& what)
    : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

bool ProviderError::retryable() const noexcept {
    switch (kind_) {
        case ProviderErrorKind::rate_limit:
        case ProviderErrorKind::timeout:
        case ProviderErrorKind::network:
        case ProviderErrorKind::server:
            return true;
        default:
            return false;
    }
}

}  // namespace singable::providers
