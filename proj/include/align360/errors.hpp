#pragma once

#include <stdexcept>
#include <string>

namespace align360 {

// Error taxonomy shared by all modules. The CLI maps these onto distinct
// process exit codes (see tools/).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input value outside its documented domain (screen coordinate > 1, alpha
// outside [0,1], p-value outside [0,1], ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A window, trace, or sample list that is too empty for the requested
// statistic.
class NoDataError : public Error {
public:
    explicit NoDataError(const std::string& msg) : Error(msg) {}
};

// Inconsistent or impossible configuration (t_edit <= 2*t_fade, omega <= 0,
// unknown video name, ...).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A frame sequence that does not span the edit interval it is asked to render.
class CoverageError : public Error {
public:
    explicit CoverageError(const std::string& msg) : Error(msg) {}
};

// File system / parse failures.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Statistical test input that makes the statistic undefined (zero variance,
// all values identical).
class DegenerateInputError : public Error {
public:
    explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

}  // namespace align360
