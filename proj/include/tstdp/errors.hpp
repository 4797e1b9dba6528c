#pragma once

#include <stdexcept>
#include <string>

namespace tstdp {

/// Raised when stimulation protocol parameters are inconsistent (span
/// violations, wrong spike ordering, non-positive rates and the like).
class ProtocolError : public std::invalid_argument {
public:
    explicit ProtocolError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised on malformed dataset files; the message names the offending line.
class DatasetError : public std::runtime_error {
public:
    explicit DatasetError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on malformed run configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tstdp
