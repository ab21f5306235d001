// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef RW2CF_ERRORS_HPP
#define RW2CF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rw2cf {

// Malformed input files: CSV cells, month strings, config JSON.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Semantically invalid requests: bad windows, missing columns, degenerate
// covariates, incompatible draws. Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failures at run time (non-finite sampler state, singular
// conditionals). Maps to CLI exit code 2.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rw2cf

#endif
