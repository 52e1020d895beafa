#include "morphprobe/manifest.hpp"

#include <chrono>
#include <ctime>

#include <json.hpp>

#include "morphprobe/util.hpp"

namespace morphprobe {

using nlohmann::json;

std::string RunManifest::to_json() const {
    json j;
    j["tool_version"] = tool_version;
    j["command"] = command;
    j["inputs"] = input_checksums;
    j["seeds"] = seeds;
    j["probes"] = probes;
    j["outputs"] = output_checksums;
    j["timestamp"] = timestamp;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("manifest is not valid JSON: ") + e.what());
    }
    RunManifest m;
    try {
        m.tool_version = j.at("tool_version").get<std::string>();
        m.command = j.at("command").get<std::string>();
        m.input_checksums = j.at("inputs").get<std::map<std::string, std::string>>();
        m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        m.probes = j.at("probes").get<std::vector<std::string>>();
        m.output_checksums = j.at("outputs").get<std::map<std::string, std::string>>();
        m.timestamp = j.at("timestamp").get<std::string>();
    } catch (const json::exception& e) {
        throw DataError(std::string("manifest missing field: ") + e.what());
    }
    return m;
}

std::string current_timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string checksum_file(const std::filesystem::path& path) {
    return fnv1a64_hex(read_file(path));
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    write_file_atomic(path, manifest.to_json());
}

RunManifest read_manifest(const std::filesystem::path& path) {
    return RunManifest::from_json(read_file(path));
}

}  // namespace morphprobe
