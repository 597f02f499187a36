#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "singable/data/dataset.hpp"
#include "singable/error.hpp"

namespace singable::providers {

struct GenerationConfig {
    double temperature = 0.6;
    double top_p = 0.95;
    std::optional<int> top_k = 40;
    int max_output_tokens = 8192;
    std::optional<double> presence_penalty;

    /// temperature 0.6, top_p 0.95, top_k 40, 8192 output tokens.
    static GenerationConfig gemini_defaults() { return {}; }
    /// temperature 0.7, top_p 0.8, 4096 output tokens, presence penalty 1.05.
    static GenerationConfig qwen_defaults() { return {0.7, 0.8, std::nullopt, 4096, 1.05}; }

    /// Throws PreconditionError.
    void validate() const;

    bool operator==(const GenerationConfig&) const = default;
};

enum class MediaKind { audio, video };

std::string_view to_string(MediaKind kind) noexcept;

/// Media travel by reference; the core never opens them.
struct MediaAttachment {
    MediaKind kind = MediaKind::audio;
    std::string uri;
    std::optional<data::TimeSpan> time_span;

    bool operator==(const MediaAttachment&) const = default;
};

/// Widens a line span by `margin_ms` on both sides, clamped at zero.
data::TimeSpan with_margin(const data::TimeSpan& span, std::int64_t margin_ms) noexcept;

inline constexpr std::int64_t kDefaultMediaMarginMs = 2000;

struct Turn {
    enum class Role { user, model };
    Role role = Role::user;
    std::string text;

    bool operator==(const Turn&) const = default;
};

/// One generation call. `prompt_text` (with `media`) is the opening user turn;
/// `followups` continue the conversation (model reply, user correction, ...).
struct GenerationRequest {
    std::string task_id;
    std::string prompt_text;
    std::vector<MediaAttachment> media;
    GenerationConfig config;
    std::vector<Turn> followups;

    /// Throws PreconditionError on an empty prompt or invalid config.
    void validate() const;

    /// Hex SHA-256 over the canonical JSON of everything except task_id.
    std::string digest() const;
};

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

struct EmbeddingRequest {
    std::vector<std::string> texts;
    std::string model_id;
};

enum class ProviderErrorKind { auth, rate_limit, timeout, network, server, contract, exhausted };

std::string_view to_string(ProviderErrorKind kind) noexcept;

class ProviderError : public Error {
public:
    ProviderError(ProviderErrorKind kind, const std::string& what);

    ProviderErrorKind kind() const noexcept { return kind_; }
    bool retryable() const noexcept;

private:
    ProviderErrorKind kind_;
};

class GenerationProvider {
public:
    virtual ~GenerationProvider() = default;
    /// One attempt, no retries. Throws ProviderError.
    virtual std::string generate_once(const GenerationRequest& request) = 0;
    /// Stable name recorded in reports and traces, e.g. "gemini:gemini-2.0-flash".
    virtual std::string identity() const = 0;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::vector<std::vector<double>> embed_once(const EmbeddingRequest& request) = 0;
    virtual std::string identity() const = 0;
};

}  // namespace singable::providers
