#pragma once

#include <memory>
#include <ostream>
#include <string>

#include "singable/harness/runs.hpp"

namespace singable::harness {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitData = 3,
    kExitProvider = 4,
    kExitThreshold = 5,
};

/// Maps an exception escaping a command to its exit code.
int exit_code_for(const std::exception& e) noexcept;

/// API keys come from GEMINI_API_KEY / OPENAI_API_KEY, base URLs from the config or
/// SINGABLE_BASE_URL. Throws ConfigError when something required is missing.
std::unique_ptr<providers::GenerationProvider> make_generator(const RunConfig& cfg);
/// nullptr for embedder "none".
std::unique_ptr<providers::EmbeddingProvider> make_embedder(const RunConfig& cfg);

/// Parses the dataset and, with lyrics_dir set, fills in resolved text.
data::Dataset load_dataset(const RunConfig& cfg, std::ostream& log);

/// Each command validates the config, writes its outputs into a fresh run directory
/// and returns that directory. `out` receives the report in cfg.format, `log`
/// progress and warnings.
std::string cmd_translate(const RunConfig& cfg, std::ostream& out, std::ostream& log);
/// cfg.hyp_path names a hypothesis file, or "human" for the dubbed references.
std::string cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& log);
std::string cmd_ablate(const RunConfig& cfg, AblationGrid grid, std::ostream& out, std::ostream& log);
void cmd_stats(const std::string& dataset_path, std::string_view format, std::ostream& out);

}  // namespace singable::harness
