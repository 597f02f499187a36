#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "singable/data/tokenizer.hpp"
#include "singable/language.hpp"

namespace singable::data {

/// Copyright-safe fingerprint of one lyric line: the first character of every
/// token plus the first and last tokens verbatim.
struct CompactLineRep {
    std::string signature;
    std::string first_token;
    std::string last_token;
    std::size_t token_count = 0;

    bool operator==(const CompactLineRep&) const = default;
};

/// Throws ValidationError when a CompactLineRep breaks its invariants.
void validate(const CompactLineRep& rep);

struct TimeSpan {
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
    bool operator==(const TimeSpan&) const = default;
};

struct LyricLine {
    std::size_t index = 0;
    CompactLineRep rep;
    std::optional<std::string> resolved_text;
    std::optional<TimeSpan> time_span;
    std::optional<std::size_t> syllable_count;

    bool operator==(const LyricLine&) const = default;
};

struct Section {
    std::size_t index = 0;
    std::vector<LyricLine> lines;
    bool operator==(const Section&) const = default;
};

struct SongEntry {
    std::string title;
    std::string source_url;
    std::optional<std::string> media_url;
    Language language = Language::EN;
    std::vector<Section> sections;

    bool operator==(const SongEntry&) const = default;
    std::size_t line_count() const noexcept;
};

using SongLanguages = std::map<Language, SongEntry>;

struct Dataset {
    std::map<std::string, SongLanguages> songs;
    bool operator==(const Dataset&) const = default;
};

struct ParseOptions {
    /// Reject unknown object keys instead of ignoring them.
    bool strict = false;
    /// Used to verify JA lines that carry resolved text. Defaults to the script-run tokenizer.
    const Tokenizer* ja_tokenizer = nullptr;
};

/// Parses the JSON dataset format. Throws ParseError (with byte offset) on malformed
/// syntax and ValidationError (naming song/language/section/line) on invariant violations.
Dataset parse_dataset(std::string_view bytes, const ParseOptions& options = {});

/// Canonical JSON: sorted keys, two-space indent, absent optionals omitted.
std::string serialize_dataset(const Dataset& d);

/// Checks every type invariant; throws ValidationError.
void validate(const Dataset& d, const ParseOptions& options = {});

// ---- compact line codec -------------------------------------------------------------

/// Space-delimited languages split on whitespace; JA is tokenized by `tokenizer`
/// (which must be morphological) and tokens are joined in consecutive pairs.
/// Throws EmptyLineError on blank input.
CompactLineRep encode_line(Language lang, std::string_view text,
                           const Tokenizer& tokenizer = default_tokenizer());

/// True iff encode_line(lang, candidate) == rep. Never throws.
bool match_line(const CompactLineRep& rep, std::string_view candidate, Language lang,
                const Tokenizer& tokenizer = default_tokenizer()) noexcept;

struct LineRef {
    std::size_t section = 0;
    std::size_t line = 0;
    bool operator==(const LineRef&) const = default;
};

struct Reconstruction {
    SongEntry resolved;
    std::vector<LineRef> unmatched;
};

/// Greedy in-order matching with skip-ahead: each dataset line takes the next
/// candidate (after the previous match) whose encoding equals its rep.
Reconstruction reconstruct_song(const SongEntry& entry, const std::vector<std::string>& candidate_lines,
                                const Tokenizer& tokenizer = default_tokenizer());

// ---- statistics ---------------------------------------------------------------------

struct LanguageStats {
    std::size_t songs = 0;
    std::size_t sections = 0;
    std::size_t lines = 0;
    bool operator==(const LanguageStats&) const = default;
};

struct StatsReport {
    std::map<Language, LanguageStats> per_language;  // all five languages present
};

StatsReport dataset_stats(const Dataset& d);

}  // namespace singable::data
