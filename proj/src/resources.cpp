#include "singable/resources.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "singable/error.hpp"

namespace singable::resources {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kEntries[];
extern const std::size_t kEntryCount;
}  // namespace detail

std::string_view get(std::string_view name) noexcept {
    for (std::size_t i = 0; i < detail::kEntryCount; ++i) {
        if (detail::kEntries[i].first == name) return detail::kEntries[i].second;
    }
    return {};
}

std::vector<std::string> names() {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < detail::kEntryCount; ++i) out.emplace_back(detail::kEntries[i].first);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace singable::resources
