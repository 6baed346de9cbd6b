#pragma once

#include <stdexcept>
#include <string>

namespace thermowalk {

enum class ErrorKind {
    Config,       // invalid input or configuration
    Numerical,    // NaN, negative mass, non-convergence, runaway step counts
    Domain,       // physically invalid argument (T <= 0, eta <= 0, S = 0, ...)
    Io,           // unreadable or malformed files
    Unsupported,  // a case the implementation deliberately does not handle
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(ErrorKind::Unsupported, what) {}
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace thermowalk
