#pragma once

#include <stdexcept>
#include <string>

namespace nrt {

// Malformed or inconsistent input: CSV parse failures, model/data dimension
// mismatches, degenerate datasets.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Training produced a non-finite loss or parameter.
class DivergedError : public std::runtime_error {
 public:
  explicit DivergedError(const std::string& what) : std::runtime_error(what) {}
};

// A statistical test whose preconditions leave it undefined, e.g. a paired
// t-test on zero-variance differences.
class DegenerateTestError : public std::runtime_error {
 public:
  explicit DegenerateTestError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nrt
