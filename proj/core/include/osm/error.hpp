#pragma once

#include <stdexcept>
#include <string>

namespace osm {

enum class ErrorKind {
  invalid_argument,
  mesh_coarser_than_domain,
  singular_denominator,
  eigensolver_failure,
  grid_misalignment,
  singular_local_matrix,
  insufficient_points,
  parse_error,
};

/// Exception type thrown by every module of the library. `kind()` lets
/// callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace osm
