#include "singable/providers/mock.hpp"

#include <cmath>
#include <json.hpp>

#include "singable/resources.hpp"
#include "singable/text/utf8.hpp"

namespace singable::providers {

using nlohmann::json;

namespace {

ProviderErrorKind parse_kind(const std::string& s) {
    for (auto k : {ProviderErrorKind::auth, ProviderErrorKind::rate_limit, ProviderErrorKind::timeout,
                   ProviderErrorKind::network, ProviderErrorKind::server, ProviderErrorKind::contract}) {
        if (to_string(k) == s) return k;
    }
    throw ValidationError("mock script: unknown error kind '" + s + "'");
}

ScriptedProvider::Reply parse_reply(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_object() && j.contains("text") && j["text"].is_string()) return j["text"].get<std::string>();
    if (j.is_object() && j.contains("error") && j["error"].is_string())
        return ScriptedProvider::Failure{parse_kind(j["error"].get<std::string>()), j.value("message", "scripted failure")};
    throw ValidationError("mock script: a reply must be a string, {\"text\": ...} or {\"error\": ...}");
}

std::vector<ScriptedProvider::Reply> parse_replies(const json& j) {
    std::vector<ScriptedProvider::Reply> out;
    if (j.is_array()) {
        for (const auto& r : j) out.push_back(parse_reply(r));
    } else {
        out.push_back(parse_reply(j));
    }
    if (out.empty()) throw ValidationError("mock script: empty reply list");
    return out;
}

std::string request_text(const GenerationRequest& r) {
    std::string s = r.prompt_text;
    for (const auto& t : r.followups) {
        s += '\n';
        s += t.text;
    }
    return s;
}

}  // namespace

ScriptedProvider::ScriptedProvider(std::vector<Rule> rules, std::string identity)
    : rules_(std::move(rules)), identity_(std::move(identity)) {}

ScriptedProvider::ScriptedProvider(ScriptedProvider&& other) noexcept
    : rules_(std::move(other.rules_)),
      identity_(std::move(other.identity_)),
      cursors_(std::move(other.cursors_)),
      log_(std::move(other.log_)) {}

ScriptedProvider ScriptedProvider::sequence(std::vector<Reply> replies) {
    return ScriptedProvider({Rule{"", std::move(replies)}});
}

ScriptedProvider ScriptedProvider::parse(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed mock script: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
    if (!root.is_object()) throw ValidationError("mock script must be a JSON object");
    std::vector<Rule> rules;
    if (root.contains("rules")) {
        for (const auto& r : root["rules"]) {
            if (!r.is_object() || !r.contains("match") || !r["match"].is_string() || !r.contains("replies"))
                throw ValidationError("mock script: each rule needs \"match\" and \"replies\"");
            rules.push_back({r["match"].get<std::string>(), parse_replies(r["replies"])});
        }
    }
    if (root.contains("default")) rules.push_back({"", parse_replies(root["default"])});
    if (rules.empty()) throw ValidationError("mock script has no rules and no default");
    return ScriptedProvider(std::move(rules), root.value("identity", "mock"));
}

ScriptedProvider ScriptedProvider::load(const std::string& path) { return parse(resources::read_file(path)); }

std::string ScriptedProvider::generate_once(const GenerationRequest& request) {
    const std::string haystack = request_text(request);
    Reply reply;
    {
        std::lock_guard lock(mutex_);
        log_.push_back(request);
        std::size_t rule = rules_.size();
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            if (haystack.find(rules_[i].match) != std::string::npos) {
                rule = i;
                break;
            }
        }
        if (rule == rules_.size())
            throw ProviderError(ProviderErrorKind::contract, "mock script has no reply for task '" + request.task_id + "'");
        auto& cursor = cursors_[{rule, request.task_id}];
        const auto& replies = rules_[rule].replies;
        reply = replies[std::min(cursor, replies.size() - 1)];
        ++cursor;
    }
    if (const auto* f = std::get_if<Failure>(&reply)) throw ProviderError(f->kind, f->message);
    return std::get<std::string>(reply);
}

std::size_t ScriptedProvider::calls() const {
    std::lock_guard lock(mutex_);
    return log_.size();
}

std::vector<GenerationRequest> ScriptedProvider::requests() const {
    std::lock_guard lock(mutex_);
    return log_;
}

std::vector<double> HashingEmbedder::embed_text(std::string_view text_in) const {
    std::vector<double> v(dimension_, 0.0);
    const auto cps = text::to_lower(text::decode(text_in));
    for (const auto& word : text::split_whitespace(text::encode(cps))) {
        std::u32string w = U"^" + text::decode(word) + U"$";
        for (std::size_t n = 1; n <= 3; ++n) {
            for (std::size_t i = 0; i + n <= w.size(); ++i) {
                std::uint64_t h = 1469598103934665603ULL;
                for (std::size_t k = 0; k < n; ++k) {
                    h ^= static_cast<std::uint64_t>(w[i + k]);
                    h *= 1099511628211ULL;
                }
                h ^= n;
                h *= 1099511628211ULL;
                const double sign = (h >> 63) ? -1.0 : 1.0;
                v[h % dimension_] += sign;
            }
        }
    }
    return v;
}

std::vector<std::vector<double>> HashingEmbedder::embed_once(const EmbeddingRequest& request) {
    std::vector<std::vector<double>> out;
    out.reserve(request.texts.size());
    for (const auto& t : request.texts) out.push_back(embed_text(t));
    return out;
}

std::string HashingEmbedder::identity() const { return "hashing-ngram-" + std::to_string(dimension_); }

}  // namespace singable::providers
