#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fneg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using BasisIndex = std::uint64_t;

// Tolerance used for the cached operator flags.
inline constexpr double kFlagTolerance = 1e-10;
inline constexpr int kDefaultMaxModes = 12;

enum class Flavor { fermionic, bosonic };
enum class Sector { even, odd };

std::string to_string(Flavor flavor);
std::string to_string(Sector sector);

// Base for all library errors. The CLI maps the subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input rejected: bad index, bad dimension, not a density matrix, ...
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Two computations that must agree did not.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace fneg
