#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weylk {

/// Operands live over different fields.
class field_mismatch : public std::invalid_argument {
 public:
  field_mismatch() : std::invalid_argument("operands belong to different fields") {}
};

/// A documented precondition of an operation was violated by the caller
/// (wrong twist shape, map that is not an endomorphism, ...).
class precondition_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two independent computations that must agree did not. Indicates a bug.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace weylk
