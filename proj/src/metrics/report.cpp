#include "singable/metrics/report.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <set>
#include <tuple>

namespace singable::metrics {

using nlohmann::ordered_json;

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);  // no "-0.000000"
    return buf;
}

std::string_view ReportRow::status() const noexcept {
    if (!score) return "skipped";
    return score->errors.empty() ? "scored" : "partial";
}

void sort_rows(std::vector<ReportRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.song_id, a.target, a.section, a.line, a.kind) <
               std::tie(b.song_id, b.target, b.section, b.line, b.kind);
    });
}

namespace {


std::string reason_of(const ReportRow& r) {
    if (!r.score) return r.reason;
    std::string out = r.reason;
    for (const auto& [component, message] : r.score->errors) {
        if (!out.empty()) out += "; ";
        out += component + ": " + message;
    }
    return out;
}

}  // namespace

std::string to_csv(std::span<const ReportRow> rows) {
    std::string out = "song_id,target_lang,section,line,reference_kind,status,c_ref,c_pred,se,scd,mismatch,semantic,phonetic,reason\n";
    for (const auto& r : rows) {
        std::vector<std::string> f = {csv_field(r.song_id), std::string(to_string(r.target)), std::to_string(r.section),
                                      std::to_string(r.line), std::string(to_string(r.kind)), std::string(r.status())};
        const LineScore* s = r.score ? &*r.score : nullptr;
        const bool syl = s && s->syllabic;
        f.push_back(syl ? std::to_string(s->c_ref) : "");
        f.push_back(syl ? std::to_string(s->c_pred) : "");
        f.push_back(syl ? fixed6(s->se) : "");
        f.push_back(syl && s->scd ? fixed6(*s->scd) : "");
        f.push_back(syl ? (s->mismatch ? "1" : "0") : "");
        f.push_back(s && s->semantic ? fixed6(*s->semantic) : "");
        f.push_back(s && s->phonetic ? std::to_string(*s->phonetic) : "");
        f.push_back(csv_field(reason_of(r)));
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i) out += ',';
            out += f[i];
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const CorpusReport& report, std::span<const ReportRow> rows) {
    ordered_json j;
    j["provenance"] = report.provenance;
    j["embedding_provider"] = report.embedding_provider;
    j["average"] = report.mode == AverageMode::lines ? "lines" : "songs";
    const auto opt = [](const std::optional<double>& v) -> ordered_json {
        return v ? ordered_json(std::stod(fixed6(*v))) : ordered_json(nullptr);
    };
    j["groups"] = ordered_json::array();
    for (const auto& [key, m] : report.groups) {
        ordered_json g;
        g["language"] = to_string(key.lang);
        g["reference_kind"] = to_string(key.reference);
        g["line_count"] = m.line_count;
        g["syllabic_lines"] = m.syllabic_lines;
        g["mismatches"] = m.mismatches;
        g["error_rate"] = opt(m.error_rate);
        g["se"] = opt(m.mean_se);
        g["scd"] = opt(m.mean_scd);
        g["phonetic"] = opt(m.mean_phonetic);
        g["semantic"] = opt(m.mean_semantic);
        g["phonetic_lines"] = m.phonetic_lines;
        g["semantic_lines"] = m.semantic_lines;
        j["groups"].push_back(g);
    }
    std::map<std::string, std::size_t> skips;
    std::size_t scored = 0;
    for (const auto& r : rows) {
        if (r.score) {
            ++scored;
        } else {
            ++skips[r.reason];
        }
    }
    j["rows"] = {{"scored", scored}, {"skipped", rows.size() - scored}};
    j["skip_reasons"] = skips;
    return j.dump(2) + "\n";
}

std::string to_table(const CorpusReport& report) {
    std::set<Language> present;
    for (const auto& [key, m] : report.groups) present.insert(key.lang);
    std::vector<Language> cols;
    for (Language l : kAllLanguages) {
        if (present.count(l)) cols.push_back(l);
    }

    std::string out = "provenance: " + (report.provenance.empty() ? std::string("-") : report.provenance) +
                      "  embedding: " + (report.embedding_provider.empty() ? std::string("-") : report.embedding_provider) +
                      "  average: " + (report.mode == AverageMode::lines ? "lines" : "songs") + "\n";
    const auto cell = [](const std::optional<double>& v) {
        if (!v) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", *v == 0.0 ? 0.0 : *v);
        return std::string(buf);
    };
    const auto pad = [](std::string s, std::size_t w) {
        // width in code points is close enough for ASCII cells
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    for (ReferenceKind kind : {ReferenceKind::original_en, ReferenceKind::dubbed}) {
        out += "\n";
        out += kind == ReferenceKind::original_en ? "English lyrics <-> translated\n" : "Dubbed lyrics <-> translated\n";
        out += pad("metric", 12);
        for (Language l : cols) out += pad(std::string(to_string(l)), 10);
        out += "\n";
        const auto row = [&](const char* name, auto get) {
            out += pad(name, 12);
            for (Language l : cols) {
                const auto it = report.groups.find({l, kind});
                out += pad(it == report.groups.end() ? std::string("-") : get(it->second), 10);
            }
            out += "\n";
        };
        row("SE", [&](const MetricSummary& m) { return cell(m.mean_se); });
        row("SCD", [&](const MetricSummary& m) { return cell(m.mean_scd); });
        row("ErrorRate", [&](const MetricSummary& m) { return cell(m.error_rate); });
        row("Phonetic", [&](const MetricSummary& m) { return cell(m.mean_phonetic); });
        row("Semantic", [&](const MetricSummary& m) { return cell(m.mean_semantic); });
        row("lines", [&](const MetricSummary& m) { return std::to_string(m.line_count); });
    }
    return out;
}

}  // namespace singable::metrics
