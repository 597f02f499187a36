#pragma once

#include <chrono>
#include <functional>

#include "singable/providers/provider.hpp"
#include "singable/providers/trace_store.hpp"

namespace singable::providers {

struct RetryPolicy {
    /// Total attempts, including the first.
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{500};
    double multiplier = 2.0;
    std::chrono::milliseconds max_backoff{8000};
    /// Defaults to std::this_thread::sleep_for.
    std::function<void(std::chrono::milliseconds)> sleeper;

    std::chrono::milliseconds backoff_before(int attempt) const;
};

/// Calls provider.generate_once with retries on retryable errors. Every attempt is
/// appended to `trace` when given. Non-retryable errors propagate at once; running
/// out of attempts raises ProviderError{exhausted} naming the last failure.
std::string generate(const GenerationRequest& request, GenerationProvider& provider, const RetryPolicy& policy = {},
                     TraceStore* trace = nullptr);

/// Same retry contract for embeddings. Checks one vector per text and a single
/// dimension across the batch (ProviderError{contract} otherwise). Empty `texts`
/// is a PreconditionError.
std::vector<std::vector<double>> embed(const EmbeddingRequest& request, EmbeddingProvider& provider,
                                       const RetryPolicy& policy = {});

}  // namespace singable::providers
