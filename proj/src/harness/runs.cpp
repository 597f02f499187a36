#include "singable/harness/runs.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <unistd.h>

#include "singable/providers/bounded.hpp"
#include "singable/resources.hpp"
#include "singable/text/utf8.hpp"

namespace singable::harness {

namespace fs = std::filesystem;

namespace {

// Runs f(i) for i in [0, n) on up to `threads` workers, issuing in `order`.
template <typename F>
void parallel_for(std::size_t n, std::size_t threads, std::uint64_t seed, F&& f) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    if (seed != 0) std::shuffle(order.begin(), order.end(), std::mt19937_64(seed));
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) f(order[k]);
    };
    const std::size_t t = std::min(threads, n);
    if (t <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

const data::SongEntry* entry_of(const data::SongLanguages& langs, Language lang) {
    const auto it = langs.find(lang);
    return it == langs.end() ? nullptr : &it->second;
}

const data::LyricLine* line_of(const data::SongEntry* e, std::size_t section, std::size_t line) {
    if (!e || section >= e->sections.size()) return nullptr;
    const auto& lines = e->sections[section].lines;
    return line < lines.size() ? &lines[line] : nullptr;
}

std::string pad(std::string s, std::size_t width) {
    const std::size_t w = text::decode(s).size();
    if (w < width) s.append(width - w, ' ');
    return s;
}

std::string opt_fixed(const std::optional<double>& v) { return v ? metrics::fixed6(*v) : ""; }

std::string reference_title(metrics::ReferenceKind kind) {
    return kind == metrics::ReferenceKind::original_en ? "English lyrics <-> translated" : "Dubbed lyrics <-> translated";
}

}  // namespace

std::size_t resolve_lyrics(data::Dataset& d, const std::string& dir) {
    std::size_t unmatched = 0;
    for (auto& [song_id, langs] : d.songs) {
        for (auto& [lang, entry] : langs) {
            const auto path = fs::path(dir) / song_id / (std::string(to_string(lang)) + ".txt");
            if (!fs::exists(path)) {
                unmatched += entry.line_count();
                continue;
            }
            std::vector<std::string> candidates;
            std::istringstream in(resources::read_file(path.string()));
            for (std::string l; std::getline(in, l);) {
                if (!l.empty() && l.back() == '\r') l.pop_back();
                candidates.push_back(l);
            }
            auto rec = data::reconstruct_song(entry, candidates);
            unmatched += rec.unmatched.size();
            entry = std::move(rec.resolved);
        }
    }
    return unmatched;
}

// ---- translate ----------------------------------------------------------------------

TranslateOutcome run_translate(const data::Dataset& d, const RunConfig& cfg, const RunContext& ctx) {
    if (!ctx.generator) throw ConfigError("translate needs a generation provider");
    const auto& syl = ctx.syllabifier ? *ctx.syllabifier : syllable::Syllabifier::builtin();
    const auto& modalities = cfg.variant.modalities;
    const bool wants_media = modalities.audio || modalities.video;

    struct Job {
        LineKey key;
        std::optional<pipeline::TranslationTask> task;
    };
    TranslateOutcome out;
    std::vector<Job> jobs;
    for (const auto& [song_id, langs] : d.songs) {
        const auto* src = entry_of(langs, cfg.source_lang);
        if (!src) continue;
        for (Language target : cfg.targets()) {
            for (const auto& sec : src->sections) {
                for (const auto& line : sec.lines) {
                    LineOutcome o;
                    o.key = {song_id, target, sec.index, line.index};
                    o.status = "skipped";
                    if (!line.resolved_text) {
                        o.message = "unresolved source text";
                        out.lines.push_back(std::move(o));
                        continue;
                    }
                    if (wants_media && !src->media_url) {
                        o.message = "no media_url for modalities " + modalities.label();
                        out.lines.push_back(std::move(o));
                        continue;
                    }
                    try {
                        auto task = pipeline::TranslationTask::make(o.key.str() + "|" + cfg.variant.slug(),
                                                                    *line.resolved_text, cfg.source_lang, target,
                                                                    line.syllable_count, syl);
                        if (wants_media) {
                            std::optional<data::TimeSpan> span;
                            if (line.time_span) span = providers::with_margin(*line.time_span, cfg.media_margin_ms);
                            if (modalities.audio) task.media.push_back({providers::MediaKind::audio, *src->media_url, span});
                            if (modalities.video) task.media.push_back({providers::MediaKind::video, *src->media_url, span});
                        }
                        jobs.push_back({o.key, std::move(task)});
                    } catch (const Error& e) {
                        o.message = e.what();
                        out.lines.push_back(std::move(o));
                    }
                }
            }
        }
    }

    providers::BoundedProvider bounded(*ctx.generator, cfg.parallelism);
    pipeline::TranslateOptions opts;
    opts.max_reprompts = cfg.max_reprompts;
    opts.resend_media = cfg.resend_media;
    opts.config = cfg.provider == "openai" ? providers::GenerationConfig::qwen_defaults()
                                           : providers::GenerationConfig::gemini_defaults();
    opts.retry.max_attempts = cfg.retry_attempts;
    if (ctx.sleeper) opts.retry.sleeper = ctx.sleeper;
    opts.trace_store = ctx.trace;
    opts.templates = ctx.templates;
    opts.syllabifier = &syl;

    std::vector<LineOutcome> done(jobs.size());
    parallel_for(jobs.size(), cfg.parallelism, cfg.seed, [&](std::size_t i) {
        LineOutcome& o = done[i];
        o.key = jobs[i].key;
        try {
            o.result = pipeline::translate_line(*jobs[i].task, cfg.variant, bounded, opts);
            o.status = "ok";
        } catch (const providers::ProviderError& e) {
            o.status = "failed";
            o.message = e.what();
            o.provider_failure = true;
        } catch (const std::exception& e) {
            o.status = "failed";
            o.message = e.what();
        }
    });

    out.hyp.provenance = ctx.generator->identity() + " " + cfg.variant.slug();
    out.attempted = done.size();
    for (auto& o : done) {
        if (o.result) out.hyp.entries[o.key] = o.result->translation;
        if (o.status == "failed") ++out.failed;
        out.lines.push_back(std::move(o));
    }
    std::sort(out.lines.begin(), out.lines.end(), [](const LineOutcome& a, const LineOutcome& b) { return a.key < b.key; });
    return out;
}

void check_threshold(const TranslateOutcome& outcome, const RunConfig& cfg) {
    if (outcome.attempted == 0) return;
    const double share = static_cast<double>(outcome.failed) / static_cast<double>(outcome.attempted);
    if (share <= cfg.failure_threshold) return;
    bool provider_only = true;
    for (const auto& l : outcome.lines)
        if (l.status == "failed" && !l.provider_failure) provider_only = false;
    throw ThresholdError(std::to_string(outcome.failed) + " of " + std::to_string(outcome.attempted) +
                             " lines failed (threshold " + metrics::fixed6(cfg.failure_threshold) + ")",
                         provider_only);
}

std::string results_csv(const TranslateOutcome& outcome) {
    std::string out =
        "song_id,target_lang,section,line,status,required,achieved,constraint_met,attempts,translation,message\n";
    for (const auto& l : outcome.lines) {
        const auto& r = l.result;
        out += metrics::csv_field(l.key.song_id) + "," + std::string(to_string(l.key.language)) + "," +
               std::to_string(l.key.section) + "," + std::to_string(l.key.line) + "," + l.status + ",";
        if (r) {
            out += std::to_string(r->task.required_count) + "," + std::to_string(r->achieved_count) + "," +
                   (r->constraint_met ? "true" : "false") + "," + std::to_string(r->attempts) + "," +
                   metrics::csv_field(r->translation) + ",";
        } else {
            out += ",,,,,";
        }
        out += metrics::csv_field(l.message) + "\n";
    }
    return out;
}

// ---- evaluate -----------------------------------------------------------------------

EvaluateOutcome run_evaluate(const data::Dataset& d, const HypothesisSet& hyp, const RunConfig& cfg,
                             const RunContext& ctx) {
    metrics::ScoringContext sc;
    sc.syllabifier = ctx.syllabifier ? ctx.syllabifier : &syllable::Syllabifier::builtin();
    sc.se_params.beta = cfg.beta;
    sc.embedder = ctx.embedder;
    sc.embed_retry.max_attempts = cfg.retry_attempts;
    if (ctx.sleeper) sc.embed_retry.sleeper = ctx.sleeper;
    if (cfg.components.semantic && !ctx.embedder) throw ConfigError("the semantic component needs an embedder");

    std::vector<Language> targets = cfg.target_langs;
    if (targets.empty()) {
        for (const auto& [k, text] : hyp.entries)
            if (k.language != cfg.source_lang && std::find(targets.begin(), targets.end(), k.language) == targets.end())
                targets.push_back(k.language);
        std::sort(targets.begin(), targets.end());
    }

    struct Job {
        std::size_t row;
        std::string gt;
        std::string pred;
        Language lang_gt;
        std::optional<std::size_t> c_ref;
    };
    EvaluateOutcome out;
    std::vector<Job> jobs;
    for (const auto& [song_id, langs] : d.songs) {
        const auto* src = entry_of(langs, cfg.source_lang);
        for (Language target : targets) {
            const auto* dub = entry_of(langs, target);
            if (src) {
                for (const auto& sec : src->sections) {
                    for (const auto& line : sec.lines) {
                        const LineKey key{song_id, target, sec.index, line.index};
                        const auto pred = hyp.entries.find(key);
                        for (auto kind : {metrics::ReferenceKind::original_en, metrics::ReferenceKind::dubbed}) {
                            metrics::ReportRow row{song_id, target, sec.index, line.index, kind, std::nullopt, ""};
                            const data::LyricLine* ref = kind == metrics::ReferenceKind::original_en
                                                             ? &line
                                                             : line_of(dub, sec.index, line.index);
                            if (pred == hyp.entries.end()) row.reason = "no hypothesis";
                            else if (kind == metrics::ReferenceKind::dubbed && !dub) row.reason = "no dubbed entry";
                            else if (!ref) row.reason = "no aligned dubbed line";
                            else if (!ref->resolved_text) row.reason = "unresolved reference text";
                            if (row.reason.empty()) {
                                jobs.push_back({out.rows.size(), *ref->resolved_text, pred->second,
                                                kind == metrics::ReferenceKind::original_en ? cfg.source_lang : target,
                                                ref->syllable_count});
                            }
                            out.rows.push_back(std::move(row));
                        }
                    }
                }
            }
            if (!dub) continue;
            for (const auto& sec : dub->sections)
                for (const auto& line : sec.lines)
                    if (!line_of(src, sec.index, line.index))
                        out.rows.push_back({song_id, target, sec.index, line.index, metrics::ReferenceKind::dubbed,
                                            std::nullopt, "no aligned source line"});
        }
    }

    parallel_for(jobs.size(), cfg.parallelism, 0, [&](std::size_t i) {
        const auto& j = jobs[i];
        auto& row = out.rows[j.row];
        try {
            row.score = metrics::score_line(j.gt, j.pred, j.lang_gt, row.target, row.kind, cfg.components, sc, j.c_ref);
            row.score->song_id = row.song_id;
        } catch (const std::exception& e) {
            row.reason = e.what();
        }
    });

    metrics::sort_rows(out.rows);
    std::vector<metrics::LineScore> scores;
    for (const auto& r : out.rows)
        if (r.score) scores.push_back(*r.score);
    if (!scores.empty()) out.report = metrics::aggregate(scores, cfg.average);
    out.report.mode = cfg.average;
    out.report.provenance = hyp.provenance;
    out.report.embedding_provider = ctx.embedder ? ctx.embedder->identity() : "";
    return out;
}

std::string render(const EvaluateOutcome& outcome, std::string_view format) {
    if (format == "csv") return metrics::to_csv(outcome.rows);
    if (format == "json") return metrics::to_json(outcome.report, outcome.rows);
    if (format == "table") return metrics::to_table(outcome.report);
    throw ConfigError("unknown format '" + std::string(format) + "'");
}

// ---- ablate -------------------------------------------------------------------------

AblationGrid parse_grid(std::string_view s) {
    if (s == "stages") return AblationGrid::stages;
    if (s == "modalities") return AblationGrid::modalities;
    if (s == "both") return AblationGrid::both;
    throw ConfigError("unknown ablation grid '" + std::string(s) + "' (stages, modalities, both)");
}

std::vector<AblationRow> run_ablation(const data::Dataset& d, const RunConfig& cfg, const RunContext& ctx,
                                      AblationGrid grid) {
    std::vector<AblationRow> rows;
    if (grid != AblationGrid::modalities) {
        for (bool list : {false, true}) {
            for (bool refine : {false, true}) {
                AblationRow r;
                r.variant = cfg.variant;
                r.variant.style = pipeline::PromptStyle::chain_of_thought;
                r.variant.use_syllable_list = list;
                r.variant.use_refine = refine;
                r.label = r.variant.grid_label();
                rows.push_back(std::move(r));
            }
        }
    }
    if (grid != AblationGrid::stages) {
        for (const char* m : {"T", "T+V", "T+A", "T+A+V"}) {
            AblationRow r;
            r.variant = cfg.variant;
            r.variant.style = pipeline::PromptStyle::chain_of_thought;
            r.variant.modalities = pipeline::Modalities::parse(m);
            r.label = m;
            rows.push_back(std::move(r));
        }
    }

    bool any_media = false;
    for (const auto& [id, langs] : d.songs)
        if (const auto* src = entry_of(langs, cfg.source_lang); src && src->media_url) any_media = true;

    for (auto& r : rows) {
        if ((r.variant.modalities.audio || r.variant.modalities.video) && !any_media) {
            r.skipped = true;
            r.reason = "no media_url in dataset";
            continue;
        }
        RunConfig sub = cfg;
        sub.variant = r.variant;
        r.translation = run_translate(d, sub, ctx);
        r.evaluation = run_evaluate(d, r.translation->hyp, sub, ctx);
    }
    return rows;
}

std::string ablation_table(const std::vector<AblationRow>& rows, const std::vector<Language>& langs) {
    struct Metric {
        const char* name;
        std::optional<double> metrics::MetricSummary::*field;
    };
    const Metric all_metrics[] = {{"Syllable Error", &metrics::MetricSummary::mean_se},
                                  {"SCD", &metrics::MetricSummary::mean_scd},
                                  {"Error Rate", &metrics::MetricSummary::error_rate},
                                  {"Semantic", &metrics::MetricSummary::mean_semantic},
                                  {"Phonetic", &metrics::MetricSummary::mean_phonetic}};
    std::size_t label_w = 8;
    for (const auto& r : rows) label_w = std::max(label_w, text::decode(r.label).size() + 2);

    std::string out;
    for (auto kind : {metrics::ReferenceKind::original_en, metrics::ReferenceKind::dubbed}) {
        for (const auto& m : all_metrics) {
            bool present = false;
            for (const auto& r : rows)
                if (r.evaluation)
                    for (const auto& [key, s] : r.evaluation->report.groups)
                        present = present || (key.reference == kind && (s.*m.field).has_value());
            if (!present) continue;
            out += std::string(m.name) + " | " + reference_title(kind) + "\n";
            out += pad("variant", label_w);
            for (Language l : langs) out += pad(std::string(to_string(l)), 10);
            out += "\n";
            for (const auto& r : rows) {
                out += pad(r.label, label_w);
                if (r.skipped) {
                    out += "skipped (" + r.reason + ")\n";
                    continue;
                }
                for (Language l : langs) {
                    std::string cell = "-";
                    const auto& groups = r.evaluation->report.groups;
                    if (auto it = groups.find({l, kind}); it != groups.end() && (it->second.*m.field))
                        cell = metrics::fixed6(*(it->second.*m.field)).substr(0, 8);
                    out += pad(cell, 10);
                }
                while (!out.empty() && out.back() == ' ') out.pop_back();
                out += "\n";
            }
            out += "\n";
        }
    }
    return out;
}

std::string ablation_csv(const std::vector<AblationRow>& rows) {
    std::string out = "variant,label,target_lang,reference_kind,status,lines,se,scd,error_rate,semantic,phonetic\n";
    for (const auto& r : rows) {
        if (r.skipped) {
            out += r.variant.slug() + "," + metrics::csv_field(r.label) + ",,,skipped,,,,,,\n";
            continue;
        }
        for (const auto& [key, s] : r.evaluation->report.groups) {
            out += r.variant.slug() + "," + metrics::csv_field(r.label) + "," + std::string(to_string(key.lang)) + "," +
                   std::string(metrics::to_string(key.reference)) + ",scored," + std::to_string(s.line_count) + "," +
                   opt_fixed(s.mean_se) + "," + opt_fixed(s.mean_scd) + "," + opt_fixed(s.error_rate) + "," +
                   opt_fixed(s.mean_semantic) + "," + opt_fixed(s.mean_phonetic) + "\n";
        }
    }
    return out;
}

// ---- stats --------------------------------------------------------------------------

namespace {

bool empty_stats(const data::StatsReport& stats) {
    for (const auto& [l, s] : stats.per_language)
        if (s.songs) return false;
    return true;
}

std::vector<std::string> stats_cells(const data::StatsReport& stats, Language l, bool zeros) {
    const auto it = stats.per_language.find(l);
    const data::LanguageStats s = it == stats.per_language.end() ? data::LanguageStats{} : it->second;
    if (s.songs == 0 && !zeros) return {"-", "-", "-"};
    return {std::to_string(s.songs), std::to_string(s.sections), std::to_string(s.lines)};
}

}  // namespace

std::string stats_table(const data::StatsReport& stats) {
    const bool zeros = empty_stats(stats);
    std::string out = pad("Language", 10) + pad("#Song", 8) + pad("#Section", 10) + "#Line\n";
    for (Language l : kAllLanguages) {
        const auto c = stats_cells(stats, l, zeros);
        out += pad(std::string(to_string(l)), 10) + pad(c[0], 8) + pad(c[1], 10) + c[2] + "\n";
    }
    return out;
}

std::string stats_csv(const data::StatsReport& stats) {
    const bool zeros = empty_stats(stats);
    std::string out = "language,songs,sections,lines\n";
    for (Language l : kAllLanguages) {
        const auto c = stats_cells(stats, l, zeros);
        out += std::string(to_string(l)) + "," + c[0] + "," + c[1] + "," + c[2] + "\n";
    }
    return out;
}

std::string stats_json(const data::StatsReport& stats) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (Language l : kAllLanguages) {
        const auto it = stats.per_language.find(l);
        if (it == stats.per_language.end() || (it->second.songs == 0 && !empty_stats(stats))) {
            j[std::string(to_string(l))] = nullptr;
            continue;
        }
        j[std::string(to_string(l))] = {
            {"songs", it->second.songs}, {"sections", it->second.sections}, {"lines", it->second.lines}};
    }
    return j.dump(2) + "\n";
}

// ---- output -------------------------------------------------------------------------

std::string make_run_dir(const std::string& out_dir, const std::string& command, const std::string& hash) {
    const fs::path base = fs::path(out_dir) / (command + "-" + hash);
    fs::path dir = base;
    for (int n = 2; fs::exists(dir); ++n) dir = base.string() + "." + std::to_string(n);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create run directory " + dir.string() + ": " + ec.message());
    return dir.string();
}

void write_atomic(const std::string& path, std::string_view content) {
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw ConfigError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

}  // namespace singable::harness
