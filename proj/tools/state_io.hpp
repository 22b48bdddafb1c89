#pragma once

#include "fneg/fock.hpp"

#include <string>
#include <string_view>

namespace fneg::cli {

/// Malformed state file. Maps to exit code 3.
class ParseError : public Error {
 public:
  using Error::Error;
};

struct StateFile {
  FockOperator rho;
  /// Came from a "pure" amplitude array.
  bool from_pure = false;
};

/// {"num_modes": N, "labels": [...], "matrix": [[re, im], ...]} with 4^N
/// row-major entries, or {"pure": [...]} with 2^N amplitudes (each [re, im] or a
/// plain number). Labels default to A, B, C, ... one per mode.
/// Throws ParseError on syntax/shape problems, ValidationError when the
/// matrix is not Hermitian, unit trace and positive semidefinite.
StateFile parse_state(std::string_view text, double tolerance = 1e-9);
StateFile load_state(const std::string& path, double tolerance = 1e-9);

}  // namespace fneg::cli
