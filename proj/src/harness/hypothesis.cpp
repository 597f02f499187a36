#include "singable/harness/hypothesis.hpp"

#include <json.hpp>

#include "singable/error.hpp"
#include "singable/resources.hpp"

namespace singable::harness {

using nlohmann::ordered_json;

std::string LineKey::str() const {
    return song_id + "|" + std::string(to_string(language)) + "|" + std::to_string(section) + "|" +
           std::to_string(line);
}

std::string HypothesisSet::to_json() const {
    ordered_json j;
    j["provenance"] = provenance;
    j["entries"] = ordered_json::array();
    for (const auto& [k, text] : entries) {
        j["entries"].push_back({{"song_id", k.song_id},
                                {"language", to_string(k.language)},
                                {"section", k.section},
                                {"line", k.line},
                                {"text", text}});
    }
    return j.dump(2) + "\n";
}

HypothesisSet HypothesisSet::parse(std::string_view json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(std::string("malformed hypothesis JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw ValidationError("hypothesis file needs an \"entries\" array");
    HypothesisSet h;
    if (j.contains("provenance") && j["provenance"].is_string()) h.provenance = j["provenance"];
    std::size_t n = 0;
    for (const auto& e : j["entries"]) {
        const std::string where = "hypothesis entry " + std::to_string(n++);
        try {
            LineKey k;
            k.song_id = e.at("song_id").get<std::string>();
            k.language = parse_language(e.at("language").get<std::string>());
            k.section = e.at("section").get<std::size_t>();
            k.line = e.at("line").get<std::size_t>();
            if (!h.entries.emplace(k, e.at("text").get<std::string>()).second)
                throw ValidationError(where + ": duplicate key " + k.str());
        } catch (const ordered_json::exception& ex) {
            throw ValidationError(where + ": " + ex.what());
        }
    }
    return h;
}

HypothesisSet HypothesisSet::load(const std::string& path) { return parse(resources::read_file(path)); }

HypothesisSet human_references(const data::Dataset& d, Language target) {
    HypothesisSet h;
    h.provenance = "human";
    for (const auto& [song_id, langs] : d.songs) {
        const auto it = langs.find(target);
        if (it == langs.end()) continue;
        for (const auto& sec : it->second.sections)
            for (const auto& line : sec.lines)
                if (line.resolved_text) h.entries[{song_id, target, sec.index, line.index}] = *line.resolved_text;
    }
    return h;
}

void check_keys(const HypothesisSet& hyp, const data::Dataset& d, Language source) {
    const auto resolves = [&](const LineKey& k, Language lang) {
        const auto song = d.songs.find(k.song_id);
        if (song == d.songs.end()) return false;
        const auto it = song->second.find(lang);
        if (it == song->second.end()) return false;
        const auto& secs = it->second.sections;
        return k.section < secs.size() && k.line < secs[k.section].lines.size();
    };
    for (const auto& [k, text] : hyp.entries) {
        if (!resolves(k, source) && !resolves(k, k.language))
            throw ValidationError("hypothesis key " + k.str() + " does not resolve to a dataset line");
    }
}

}  // namespace singable::harness
