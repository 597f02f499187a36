#include "singable/providers/trace_store.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <json.hpp>
#include <sstream>

#include "singable/error.hpp"
#include "singable/resources.hpp"

namespace singable::providers {

using nlohmann::json;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                  tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
    return buf;
}

TraceStore::TraceStore(const std::string& path, Clock clock)
    : path_(path), clock_(std::move(clock)), out_(path, std::ios::app | std::ios::binary) {
    if (!out_) throw ConfigError("cannot open trace store '" + path + "'");
}

std::string TraceStore::now() const { return clock_ ? clock_() : utc_timestamp(); }

void TraceStore::append(const TraceRecord& r) {
    json j;
    j["task_id"] = r.task_id;
    j["attempt"] = r.attempt;
    j["request_digest"] = r.request_digest;
    j["response_text"] = r.response_text;
    if (r.error) j["error"] = *r.error;
    j["provider"] = r.provider;
    j["timestamps"] = {{"started", r.started_at}, {"finished", r.finished_at}};
    const std::string line = j.dump() + "\n";
    std::lock_guard lock(mutex_);
    out_ << line;
    out_.flush();
}

std::vector<TraceRecord> TraceStore::read(const std::string& path) {
    std::istringstream in(resources::read_file(path));
    std::vector<TraceRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = json::parse(line);
        TraceRecord r;
        r.task_id = j.at("task_id").get<std::string>();
        r.attempt = j.at("attempt").get<int>();
        r.request_digest = j.at("request_digest").get<std::string>();
        r.response_text = j.at("response_text").get<std::string>();
        if (j.contains("error")) r.error = j["error"].get<std::string>();
        r.provider = j.value("provider", "");
        r.started_at = j.at("timestamps").value("started", "");
        r.finished_at = j.at("timestamps").value("finished", "");
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace singable::providers
