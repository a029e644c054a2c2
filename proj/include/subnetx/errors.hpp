#pragma once

#include <stdexcept>
#include <string>

namespace subnetx {

// Raised for malformed or inconsistent input data (matrices, manifests,
// masks, reports). The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for unusable configuration (bad JSON, missing files, invalid
// parameter combinations). The CLI maps these to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace subnetx
