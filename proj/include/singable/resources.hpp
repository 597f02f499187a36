#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace singable::resources {

/// Built-in data files compiled from data/ and templates/ (e.g. "lexicon/en.tsv",
/// "g2p/ko.tsv", "templates/cot.txt"). Empty view when the name is unknown.
std::string_view get(std::string_view name) noexcept;

std::vector<std::string> names();

/// Reads a whole file; throws ConfigError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace singable::resources
