#include "singable/providers/retry.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace singable::providers {

std::chrono::milliseconds RetryPolicy::backoff_before(int attempt) const {
    if (attempt <= 1) return std::chrono::milliseconds(0);
    const double ms = static_cast<double>(initial_backoff.count()) * std::pow(multiplier, attempt - 2);
    return std::min(max_backoff, std::chrono::milliseconds(static_cast<long long>(ms)));
}

namespace {

void wait(const RetryPolicy& policy, int attempt) {
    const auto delay = policy.backoff_before(attempt);
    if (delay.count() <= 0) return;
    if (policy.sleeper) {
        policy.sleeper(delay);
    } else {
        std::this_thread::sleep_for(delay);
    }
}

template <typename Call>
auto with_retries(const RetryPolicy& policy, Call&& call) {
    const int cap = std::max(1, policy.max_attempts);
    for (int attempt = 1;; ++attempt) {
        wait(policy, attempt);
        try {
            return call(attempt);
        } catch (const ProviderError& e) {
            if (!e.retryable()) throw;
            if (attempt >= cap)
                throw ProviderError(ProviderErrorKind::exhausted,
                                    "gave up after " + std::to_string(attempt) + " attempt(s); last error " + e.what());
        }
    }
}

}  // namespace

std::string generate(const GenerationRequest& request, GenerationProvider& provider, const RetryPolicy& policy,
                     TraceStore* trace) {
    request.validate();
    const std::string digest = trace ? request.digest() : std::string();
    return with_retries(policy, [&](int attempt) {
        TraceRecord rec;
        if (trace) {
            rec.task_id = request.task_id;
            rec.attempt = attempt;
            rec.request_digest = digest;
            rec.provider = provider.identity();
            rec.started_at = trace->now();
        }
        try {
            std::string text = provider.generate_once(request);
            if (trace) {
                rec.response_text = text;
                rec.finished_at = trace->now();
                trace->append(rec);
            }
            return text;
        } catch (const ProviderError& e) {
            if (trace) {
                rec.error = e.what();
                rec.finished_at = trace->now();
                trace->append(rec);
            }
            throw;
        }
    });
}

std::vector<std::vector<double>> embed(const EmbeddingRequest& request, EmbeddingProvider& provider,
                                       const RetryPolicy& policy) {
    if (request.texts.empty()) throw PreconditionError("embedding request has no texts");
    auto vectors = with_retries(policy, [&](int) { return provider.embed_once(request); });
    if (vectors.size() != request.texts.size())
        throw ProviderError(ProviderErrorKind::contract, "expected " + std::to_string(request.texts.size()) +
                                                             " vectors, got " + std::to_string(vectors.size()));
    for (const auto& v : vectors) {
        if (v.size() != vectors.front().size() || v.empty())
            throw ProviderError(ProviderErrorKind::contract, "inconsistent embedding dimensions in one batch");
    }
    return vectors;
}

}  // namespace singable::providers
