#pragma once

#include <stdexcept>
#include <string>

namespace frontier {

// Configuration problems (bad JSON, missing keys, invalid values). CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem problems (missing file, unreadable path). CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Everything that goes wrong inside an analysis (bad data, rank deficiency,
// infeasible LP, non-convergence). CLI exit code 1 when collected by the runner.
class AnalysisError : public std::runtime_error {
public:
    explicit AnalysisError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace frontier
