#pragma once

#include <condition_variable>
#include <cstddef>
#include <mutex>

#include "singable/providers/provider.hpp"

namespace singable::providers {

/// Caps the number of in-flight generate_once calls on a shared provider.
class BoundedProvider final : public GenerationProvider {
public:
    BoundedProvider(GenerationProvider& inner, std::size_t max_in_flight);

    std::string generate_once(const GenerationRequest& request) override;
    std::string identity() const override { return inner_.identity(); }

    /// Highest concurrency observed so far.
    std::size_t peak_in_flight() const;

private:
    GenerationProvider& inner_;
    std::size_t limit_;
    mutable std::mutex mutex_;
    std::condition_variable cv_;
    std::size_t in_flight_ = 0;
    std::size_t peak_ = 0;
};

}  // namespace singable::providers
