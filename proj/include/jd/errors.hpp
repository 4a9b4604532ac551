#pragma once

#include <stdexcept>
#include <string>

namespace jd {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or value (JSON/CSV parse, schema violation).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// File could not be read or written.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

/// Caller violated a precondition (bad dimension, invalid argument).
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

/// Numerical failure (non-convergence, factorization breakdown).
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

}  // namespace jd
