#pragma once

#include <stdexcept>
#include <string>

namespace ckit {

/// Dimensions of the operands do not fit together.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A vector expected to lie in a lattice does not.
class ContainmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The caller violated an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent problem description.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed quantity contradicts a theorem the engine relies on. Always a bug
/// in the engine or in a homomorphism that slipped through validation.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ckit
