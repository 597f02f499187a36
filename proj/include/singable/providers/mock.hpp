#pragma once

#include <map>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "singable/providers/provider.hpp"

namespace singable::providers {

/// Replays canned replies. A script is JSON:
///
///     {
///       "identity": "mock",
///       "rules": [
///         {"match": "butterfly", "replies": ["first reply", {"error": "rate_limit"}, "third"]}
///       ],
///       "default": ["fallback reply"]
///     }
///
/// The first rule whose `match` occurs in the request text (prompt and followups)
/// answers. Each task id walks a rule's replies in order and keeps returning the
/// last one once exhausted, so concurrent tasks replay deterministically. A reply is
/// a string or an object {"text": ...} / {"error": kind, "message": ...}.
class ScriptedProvider final : public GenerationProvider {
public:
    struct Failure {
        ProviderErrorKind kind;
        std::string message;
    };
    using Reply = std::variant<std::string, Failure>;
    struct Rule {
        std::string match;  // empty matches everything
        std::vector<Reply> replies;
    };

    explicit ScriptedProvider(std::vector<Rule> rules, std::string identity = "mock");
    /// Not safe while another thread uses `other`.
    ScriptedProvider(ScriptedProvider&& other) noexcept;
    /// Every request gets `replies` in sequence.
    static ScriptedProvider sequence(std::vector<Reply> replies);
    /// Throws ParseError / ValidationError.
    static ScriptedProvider parse(std::string_view json_text);
    static ScriptedProvider load(const std::string& path);

    std::string generate_once(const GenerationRequest& request) override;
    std::string identity() const override { return identity_; }

    /// Number of generate_once calls so far.
    std::size_t calls() const;
    /// Requests received, in arrival order.
    std::vector<GenerationRequest> requests() const;

private:
    std::vector<Rule> rules_;
    std::string identity_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::size_t, std::string>, std::size_t> cursors_;
    std::vector<GenerationRequest> log_;
};

/// Deterministic test embedder: character 1- to 3-grams of the lowercased text,
/// with ^/$ word-boundary marks, hashed (FNV-1a) into signed buckets.
class HashingEmbedder final : public EmbeddingProvider {
public:
    explicit HashingEmbedder(std::size_t dimension = 256) : dimension_(dimension) {}

    std::vector<std::vector<double>> embed_once(const EmbeddingRequest& request) override;
    std::string identity() const override;

    std::vector<double> embed_text(std::string_view text) const;

private:
    std::size_t dimension_;
};

}  // namespace singable::providers
