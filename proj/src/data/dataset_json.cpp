#include <initializer_list>
#include <json.hpp>

#include "singable/data/dataset.hpp"
#include "singable/error.hpp"
#include "singable/text/utf8.hpp"

namespace singable::data {

using nlohmann::json;

namespace {

struct Where {
    std::string song;
    std::string lang;
    std::optional<std::size_t> section;
    std::optional<std::size_t> line;

    std::string str() const {
        std::string s = "song '" + song + "'";
        if (!lang.empty()) s += " language " + lang;
        if (section) s += " section " + std::to_string(*section);
        if (line) s += " line " + std::to_string(*line);
        return s;
    }
};

[[noreturn]] void fail(const Where& w, const std::string& what) { throw ValidationError(w.str() + ": " + what); }

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, bool strict, const Where& w) {
    if (!strict) return;
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) fail(w, "unknown field '" + key + "'");
    }
}

const json* optional_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    return &*it;
}

const json& required_field(const json& obj, const char* key, const Where& w) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(w, std::string("missing field '") + key + "'");
    return *it;
}

std::string as_string(const json& v, const char* what, const Where& w) {
    if (!v.is_string()) fail(w, std::string(what) + " must be a string");
    return v.get<std::string>();
}

std::size_t as_index(const json& v, const char* what, const Where& w) {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(w, std::string(what) + " must be a non-negative integer");
    return v.get<std::size_t>();
}

LyricLine parse_line(const json& j, const Where& w, bool strict) {
    if (!j.is_object()) fail(w, "line must be an object");
    check_keys(j, {"index", "rep", "time_span", "syllable_count", "text"}, strict, w);
    LyricLine line;
    line.index = as_index(required_field(j, "index", w), "index", w);
    const auto& rep = required_field(j, "rep", w);
    if (!rep.is_array() || rep.size() != 3) fail(w, "rep must be a [signature, first, last] array");
    line.rep.signature = as_string(rep[0], "rep signature", w);
    line.rep.first_token = as_string(rep[1], "rep first token", w);
    line.rep.last_token = as_string(rep[2], "rep last token", w);
    line.rep.token_count = text::decode(line.rep.signature).size();
    if (const json* ts = optional_field(j, "time_span")) {
        if (!ts->is_array() || ts->size() != 2 || !(*ts)[0].is_number_integer() || !(*ts)[1].is_number_integer())
            fail(w, "time_span must be [start_ms, end_ms]");
        line.time_span = TimeSpan{(*ts)[0].get<std::int64_t>(), (*ts)[1].get<std::int64_t>()};
    }
    if (const json* sc = optional_field(j, "syllable_count")) line.syllable_count = as_index(*sc, "syllable_count", w);
    if (const json* t = optional_field(j, "text")) line.resolved_text = as_string(*t, "text", w);
    return line;
}

SongEntry parse_entry(const json& j, Language lang, Where w, bool strict) {
    if (!j.is_object()) fail(w, "language entry must be an object");
    check_keys(j, {"title", "source_url", "media_url", "sections"}, strict, w);
    SongEntry e;
    e.language = lang;
    e.title = as_string(required_field(j, "title", w), "title", w);
    e.source_url = as_string(required_field(j, "source_url", w), "source_url", w);
    if (const json* m = optional_field(j, "media_url")) e.media_url = as_string(*m, "media_url", w);
    const auto& sections = required_field(j, "sections", w);
    if (!sections.is_array()) fail(w, "sections must be an array");
    for (const auto& sj : sections) {
        if (!sj.is_object()) fail(w, "section must be an object");
        Section s;
        s.index = as_index(required_field(sj, "index", w), "section index", w);
        w.section = s.index;
        check_keys(sj, {"index", "lines"}, strict, w);
        const auto& lines = required_field(sj, "lines", w);
        if (!lines.is_array()) fail(w, "lines must be an array");
        for (const auto& lj : lines) {
            Where lw = w;
            if (lj.is_object() && lj.contains("index") && lj["index"].is_number_integer())
                lw.line = lj["index"].get<std::size_t>();
            s.lines.push_back(parse_line(lj, lw, strict));
        }
        w.line.reset();
        e.sections.push_back(std::move(s));
        w.section.reset();
    }
    return e;
}

json line_to_json(const LyricLine& line) {
    json j = json::object();
    j["index"] = line.index;
    j["rep"] = json::array({line.rep.signature, line.rep.first_token, line.rep.last_token});
    if (line.time_span) j["time_span"] = json::array({line.time_span->start_ms, line.time_span->end_ms});
    if (line.syllable_count) j["syllable_count"] = *line.syllable_count;
    if (line.resolved_text) j["text"] = *line.resolved_text;
    return j;
}

}  // namespace

Dataset parse_dataset(std::string_view bytes, const ParseOptions& options) {
    json root;
    try {
        root = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed dataset JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
    if (!root.is_object()) throw ValidationError("dataset top level must be an object of song-id -> languages");
    Dataset d;
    for (const auto& [song_id, langs] : root.items()) {
        Where w{song_id, {}, {}, {}};
        if (!langs.is_object()) fail(w, "song must map language codes to entries");
        SongLanguages entries;
        for (const auto& [code, entry] : langs.items()) {
            const auto lang = try_parse_language(code);
            w.lang = code;
            if (!lang) fail(w, "unknown language code");
            if (entries.count(*lang)) fail(w, "duplicate language entry");
            entries.emplace(*lang, parse_entry(entry, *lang, w, options.strict));
        }
        d.songs.emplace(song_id, std::move(entries));
    }
    validate(d, options);
    return d;
}

void validate(const Dataset& d, const ParseOptions& options) {
    const Tokenizer& ja = options.ja_tokenizer ? *options.ja_tokenizer : default_tokenizer();
    for (const auto& [song_id, langs] : d.songs) {
        Where w{song_id, {}, {}, {}};
        if (!langs.count(Language::EN)) fail(w, "missing EN entry");
        for (const auto& [lang, e] : langs) {
            w.lang = std::string(to_string(lang));
            if (e.language != lang) fail(w, "entry language does not match its key");
            if (text::trim(e.source_url).empty()) fail(w, "source_url is empty");
            for (std::size_t si = 0; si < e.sections.size(); ++si) {
                const auto& s = e.sections[si];
                w.section = s.index;
                if (s.index != si) fail(w, "section indices must be contiguous from 0");
                for (std::size_t li = 0; li < s.lines.size(); ++li) {
                    const auto& line = s.lines[li];
                    w.line = line.index;
                    if (line.index != li) fail(w, "line indices must be contiguous from 0");
                    try {
                        validate(line.rep);
                    } catch (const ValidationError& err) {
                        fail(w, err.what());
                    }
                    if (line.time_span && line.time_span->start_ms >= line.time_span->end_ms)
                        fail(w, "time_span start must precede end");
                    if (line.resolved_text && !match_line(line.rep, *line.resolved_text, lang, ja))
                        fail(w, "resolved text does not match its compact representation");
                }
                w.line.reset();
            }
            w.section.reset();
        }
    }
}

std::string serialize_dataset(const Dataset& d) {
    json root = json::object();
    for (const auto& [song_id, langs] : d.songs) {
        json song = json::object();
        for (const auto& [lang, e] : langs) {
            json entry = json::object();
            entry["title"] = e.title;
            entry["source_url"] = e.source_url;
            if (e.media_url) entry["media_url"] = *e.media_url;
            json sections = json::array();
            for (const auto& s : e.sections) {
                json lines = json::array();
                for (const auto& line : s.lines) lines.push_back(line_to_json(line));
                sections.push_back(json{{"index", s.index}, {"lines", std::move(lines)}});
            }
            entry["sections"] = std::move(sections);
            song[std::string(to_string(lang))] = std::move(entry);
        }
        root[song_id] = std::move(song);
    }
    return root.dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

}  // namespace singable::data
