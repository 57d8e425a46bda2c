#pragma once

#include <stdexcept>
#include <string>

namespace nlse {

/// Bad sizes, mismatched grids, malformed parameters.
class InvalidInputError : public std::invalid_argument {
  public:
    explicit InvalidInputError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Config-file problems (missing file, unknown key, inconsistent sweep).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Unreadable or inconsistent reference-cache file.
class CacheError : public std::runtime_error {
  public:
    explicit CacheError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite or exploding coefficients during time stepping.
class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(const std::string& msg, long step)
        : std::runtime_error(msg + " at step " + std::to_string(step)), step_(step) {}
    long step() const { return step_; }

  private:
    long step_;
};

}  // namespace nlse
