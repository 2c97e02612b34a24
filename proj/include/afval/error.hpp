#pragma once

#include <stdexcept>
#include <string>

namespace afval {

enum class ErrorKind {
  unsupported_dimension,
  out_of_range,
  dimension_mismatch,
  not_positive_definite,
  unsupported_smoothness,
  degenerate_frame,
  schema,
  outside_cone,
  invalid_argument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace afval
