#include "tstdp/manifest.hpp"

#include <json.hpp>

namespace tstdp {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(bytes);
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out += digits[(hash >> shift) & 0xf];
    return out;
}

std::string manifest_to_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["artifact_version"] = manifest.artifact_version;
    j["command"] = manifest.command;
    j["config_digest"] = manifest.config_digest;
    j["seed"] = manifest.seed;
    j["started_utc"] = manifest.started_utc;
    j["wall_clock_s"] = manifest.wall_clock_s;
    nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
    for (const auto& [file, digest] : manifest.outputs) outputs[file] = digest;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

} // namespace tstdp
