#ifndef BMVS_ERRORS_HPP_
#define BMVS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bmvs {

// Invalid input data or configuration (bad dimensions, non-finite values,
// malformed files, parameter values outside their domain). Maps to CLI
// exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure during computation (failed factorization, non-finite
// intermediate). Maps to CLI exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bmvs

#endif  // BMVS_ERRORS_HPP_
