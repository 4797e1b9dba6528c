#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tstdp/protocol.hpp"

namespace tstdp {

/// One experimental observation: a stimulation protocol, the mean weight
/// change it produced, and the standard error of that mean (> 0).
struct DataPoint {
    Protocol protocol;
    double dw_exp = 0.0;
    double sem = 1.0;
};

struct Dataset {
    std::string name;
    std::vector<DataPoint> points;
};

/// Parses the plain-text dataset format. Lines are comma-separated, '#'
/// starts a comment, and a leading "# name: <x>" comment names the set.
/// Row shapes (times in ms, rates in Hz):
///   pairing,<dt_ms>,<rho_hz>,<n>,<dw>,<sem>
///   triplet,<pre-post-pre|post-pre-post>,<dt1_ms>,<dt2_ms>,<rho_hz>,<n>,<dw>,<sem>
///   quadruplet,<dt_ms>,<T_ms>,<rho_hz>,<n>,<dw>,<sem>
/// Throws DatasetError naming <origin>:<line> for malformed rows, sem <= 0,
/// or protocol parameters the generators reject.
Dataset parse_dataset(const std::string& text, const std::string& origin,
                      const std::string& default_name);

Dataset load_dataset(const std::filesystem::path& path);

/// Serializes in the same format (used to write synthetic fixtures).
std::string dataset_to_text(const Dataset& dataset);

} // namespace tstdp
