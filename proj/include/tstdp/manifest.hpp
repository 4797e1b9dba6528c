#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tstdp {

/// FNV-1a 64-bit digest, rendered as "fnv1a64:<hex>" by the _hex variant.
/// Strong enough to verify that two runs produced identical bytes; not a
/// cryptographic hash.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

/// Reproducibility record written next to every command's outputs.
struct RunManifest {
    std::string artifact_version;
    std::string command;
    std::string config_digest;
    std::uint64_t seed = 0;
    std::string started_utc;
    double wall_clock_s = 0.0;
    std::vector<std::pair<std::string, std::string>> outputs; ///< file -> digest
};

std::string manifest_to_json(const RunManifest& manifest);

} // namespace tstdp
