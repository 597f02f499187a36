#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "singable/providers/provider.hpp"

namespace singable::providers {

struct HttpSettings {
    /// e.g. "https://generativelanguage.googleapis.com" or "http://localhost:8000/v1".
    std::string base_url;
    std::string model;
    std::string api_key;
    std::chrono::seconds timeout{120};
};

/// Maps an HTTP status to an error kind: 401/403 auth, 429 rate limit, 408/504
/// timeout, other 5xx server, other 4xx contract.
ProviderErrorKind classify_status(int status) noexcept;

/// Gemini `models/{model}:generateContent`. Media become file_data parts with
/// video_metadata offsets.
class GeminiProvider final : public GenerationProvider {
public:
    explicit GeminiProvider(HttpSettings settings);
    std::string generate_once(const GenerationRequest& request) override;
    std::string identity() const override { return "gemini:" + settings_.model; }

    /// Request body, exposed for tests.
    static std::string build_body(const GenerationRequest& request);
    /// Concatenated candidate text; ProviderError{contract} when absent.
    static std::string parse_response(const std::string& body);

private:
    HttpSettings settings_;
};

/// OpenAI-compatible `/chat/completions` (vLLM, DashScope compatible mode, ...).
/// Text only: requests carrying media fail with ProviderError{contract}.
class OpenAICompatibleProvider final : public GenerationProvider {
public:
    explicit OpenAICompatibleProvider(HttpSettings settings);
    std::string generate_once(const GenerationRequest& request) override;
    std::string identity() const override { return "openai-compatible:" + settings_.model; }

    static std::string build_body(const GenerationRequest& request, const std::string& model);
    static std::string parse_response(const std::string& body);

private:
    HttpSettings settings_;
};

/// OpenAI-compatible `/embeddings`.
class OpenAICompatibleEmbedder final : public EmbeddingProvider {
public:
    explicit OpenAICompatibleEmbedder(HttpSettings settings);
    std::vector<std::vector<double>> embed_once(const EmbeddingRequest& request) override;
    std::string identity() const override { return "openai-compatible:" + settings_.model; }

    static std::vector<std::vector<double>> parse_response(const std::string& body);

private:
    HttpSettings settings_;
};

}  // namespace singable::providers
