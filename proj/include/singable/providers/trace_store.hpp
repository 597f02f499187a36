#pragma once

#include <cstddef>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace singable::providers {

struct TraceRecord {
    std::string task_id;
    int attempt = 1;
    std::string request_digest;
    std::string response_text;
    std::optional<std::string> error;
    std::string provider;
    std::string started_at;
    std::string finished_at;
};

/// Append-only JSON-lines log of provider calls. Appends are serialized.
class TraceStore {
public:
    using Clock = std::function<std::string()>;

    /// Opens (creating if needed) `path` for appending. Throws ConfigError.
    explicit TraceStore(const std::string& path, Clock clock = {});

    void append(const TraceRecord& record);
    std::string now() const;
    const std::string& path() const noexcept { return path_; }

    static std::vector<TraceRecord> read(const std::string& path);

private:
    std::string path_;
    Clock clock_;
    std::mutex mutex_;
    std::ofstream out_;
};

/// UTC ISO-8601 with milliseconds.
std::string utc_timestamp();

}  // namespace singable::providers
