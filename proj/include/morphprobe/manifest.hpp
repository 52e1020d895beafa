#ifndef MORPHPROBE_MANIFEST_HPP
#define MORPHPROBE_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace morphprobe {

// Provenance record written atomically next to every command's outputs.
// Output checksums are the determinism contract: identical inputs and seeds
// must reproduce identical checksums (the timestamp is informational).
struct RunManifest {
    std::string tool_version;
    std::string command;
    std::map<std::string, std::string> input_checksums;   // path -> fnv1a64 hex
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> probes;
    std::map<std::string, std::string> output_checksums;  // relative path -> fnv1a64 hex
    std::string timestamp;  // ISO 8601 UTC

    std::string to_json() const;
    static RunManifest from_json(std::string_view text);
};

std::string current_timestamp_utc();
std::string checksum_file(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace morphprobe

#endif
