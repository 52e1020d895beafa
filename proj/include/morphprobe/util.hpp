#ifndef MORPHPROBE_UTIL_HPP
#define MORPHPROBE_UTIL_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace morphprobe {

// Bad invocation: unknown flags, missing arguments. Maps to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad data or violated constraint: malformed files, infeasible splits,
// singular designs. Maps to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_on(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string strip_cr(std::string line);
std::string ascii_lower(std::string_view s);
bool ends_with(std::string_view s, std::string_view suffix);

// FNV-1a over raw bytes; used for content checksums in manifests.
// Equality checking only, not security.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
// Writes to a temp file in the same directory and renames into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace morphprobe

#endif
