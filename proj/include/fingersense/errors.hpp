#pragma once

#include <stdexcept>
#include <string>

namespace fingersense {

// Error taxonomy mirrored by the CLI exit codes:
//   ConfigError     -> 2 (bad configuration or usage)
//   DataError       -> 3 (malformed or inconsistent input data)
//   DegenerateError -> 4 (numerically degenerate problem)
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace fingersense
