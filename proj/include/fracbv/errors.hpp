#ifndef FRACBV_ERRORS_HPP
#define FRACBV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracbv {

// Malformed input: bad files, out-of-range parameters, inconsistent configs.
// The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A property that must hold for every solution was observed to fail
// (TV^s increase across an interaction, broken Rankine-Hugoniot, ...).
// The CLI maps it to exit code 3.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

// Numerical procedure could not complete (bracket failure, event storm).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracbv

#endif  // FRACBV_ERRORS_HPP
