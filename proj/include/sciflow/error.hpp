#ifndef SCIFLOW_ERROR_HPP
#define SCIFLOW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sciflow {

// Data-level failure: malformed input, violated invariant, degenerate statistic.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration or parameters (maps to CLI exit code 2).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace sciflow

#endif
