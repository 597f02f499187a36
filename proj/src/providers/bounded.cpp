#include "singable/providers/bounded.hpp"

#include <algorithm>

namespace singable::providers {

BoundedProvider::BoundedProvider(GenerationProvider& inner, std::size_t max_in_flight)
    : inner_(inner), limit_(std::max<std::size_t>(1, max_in_flight)) {}

std::string BoundedProvider::generate_once(const GenerationRequest& request) {
    {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return in_flight_ < limit_; });
        ++in_flight_;
        peak_ = std::max(peak_, in_flight_);
    }
    struct Release {
        BoundedProvider& self;
        ~Release() {
            {
                std::lock_guard lock(self.mutex_);
                --self.in_flight_;
            }
            self.cv_.notify_one();
        }
    } release{*this};
    return inner_.generate_once(request);
}

std::size_t BoundedProvider::peak_in_flight() const {
    std::lock_guard lock(mutex_);
    return peak_;
}

}  // namespace singable::providers
