#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "singable/error.hpp"

namespace singable::pipeline {

struct RefinementRound {
    std::vector<std::string> syllables;
    std::size_t count = 0;

    bool operator==(const RefinementRound&) const = default;
};

/// What could be read back from one model answer.
struct StageTrace {
    std::optional<std::vector<std::string>> source_segmentation;
    std::optional<std::vector<std::string>> target_syllable_list;
    std::vector<RefinementRound> refinement_rounds;
    std::optional<std::string> final_translation;
    std::string raw_text;

    bool operator==(const StageTrace&) const = default;
};

class PipelineError : public Error {
public:
    PipelineError(const std::string& what, std::vector<StageTrace> traces = {})
        : Error(what), traces_(std::move(traces)) {}
    const std::vector<StageTrace>& traces() const noexcept { return traces_; }

private:
    std::vector<StageTrace> traces_;
};

class MissingFinalAnswerError : public PipelineError {
public:
    explicit MissingFinalAnswerError(StageTrace partial)
        : PipelineError("no {\"translation\": ...} payload in model output", {std::move(partial)}) {}
};

struct SyllableList {
    std::size_t offset = 0;  // byte offset of '['
    std::vector<std::string> items;
};

/// Square-bracketed, comma-separated lists of quoted strings, in order of
/// appearance. Other bracketed text is ignored.
std::vector<SyllableList> extract_syllable_lists(std::string_view raw);

/// The last well-formed JSON object with a string "translation" member.
std::optional<std::string> extract_final_answer(std::string_view raw);

/// Splits lists by the step headers: the first list before the target-list step
/// is the source segmentation, the last list inside that step is the target list,
/// and lists inside the refine step become refinement rounds (consecutive repeats
/// collapsed). Without headers, lists are assigned by position.
/// Throws MissingFinalAnswerError (carrying the partial trace) without a payload.
StageTrace parse_trace(std::string_view raw);

/// As parse_trace but never throws; final_translation may be empty.
StageTrace parse_trace_partial(std::string_view raw);

}  // namespace singable::pipeline
