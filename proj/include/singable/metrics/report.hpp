#pragma once

#include <optional>
#include <span>
#include <string>

#include "singable/metrics/metrics.hpp"

namespace singable::metrics {

/// One line x reference kind of an evaluation, scored or skipped.
struct ReportRow {
    std::string song_id;
    Language target = Language::EN;
    std::size_t section = 0;
    std::size_t line = 0;
    ReferenceKind kind = ReferenceKind::original_en;
    std::optional<LineScore> score;  // empty when skipped
    std::string reason;              // skip reason, or component errors

    /// "scored", "partial" (some component failed) or "skipped".
    std::string_view status() const noexcept;
};

/// Sorts rows by (song, target, section, line, reference kind).
void sort_rows(std::vector<ReportRow>& rows);

/// Header plus one row per ReportRow. Reals use fixed six-decimal notation.
std::string to_csv(std::span<const ReportRow> rows);

/// The full corpus report plus skip counts, as pretty-printed JSON.
std::string to_json(const CorpusReport& report, std::span<const ReportRow> rows);

/// Metric x language grid, one block per reference kind. Missing cells print "-".
std::string to_table(const CorpusReport& report);

/// RFC 4180 quoting when needed.
std::string csv_field(std::string_view s);

/// "%.6f".
std::string fixed6(double v);

}  // namespace singable::metrics
