#pragma once

#include <stdexcept>
#include <string>

namespace s2w {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid or inconsistent experiment configuration. Carries the offending key when known.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& message)
        : Error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
    explicit ConfigError(const std::string& message) : ConfigError("", message) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Numerical failure that is not a usage mistake (embedding failure, degenerate normalizer).
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace s2w
