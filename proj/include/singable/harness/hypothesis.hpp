#pragma once

#include <compare>
#include <map>
#include <string>

#include "singable/data/dataset.hpp"

namespace singable::harness {

struct LineKey {
    std::string song_id;
    Language language = Language::EN;
    std::size_t section = 0;
    std::size_t line = 0;

    auto operator<=>(const LineKey&) const = default;
    std::string str() const;  // "song|KO|0|3"
};

/// Translated lines keyed by (song, language, section, line). Dubbed references
/// loaded through human_references carry provenance "human".
struct HypothesisSet {
    std::string provenance;
    std::map<LineKey, std::string> entries;

    /// {"provenance": ..., "entries": [{"song_id", "language", "section", "line", "text"}]}
    std::string to_json() const;
    /// Throws ParseError / ValidationError.
    static HypothesisSet parse(std::string_view json_text);
    static HypothesisSet load(const std::string& path);
};

/// The resolved lines of every `target` entry, provenance "human".
HypothesisSet human_references(const data::Dataset& d, Language target);

/// Throws ValidationError for keys that match neither a source-language line nor a
/// line of their own language entry.
void check_keys(const HypothesisSet& hyp, const data::Dataset& d, Language source);

}  // namespace singable::harness
