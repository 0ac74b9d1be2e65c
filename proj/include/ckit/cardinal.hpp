#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace ckit {

using Integer = mpz_class;

/// Cardinality of a Reidemeister set: a non-negative integer or infinity.
class Cardinal {
 public:
  Cardinal() : value_(Integer(0)) {}
  explicit Cardinal(Integer value);
  explicit Cardinal(long value) : Cardinal(Integer(value)) {}

  static Cardinal infinite() { return Cardinal(Tag{}); }

  bool is_finite() const { return value_.has_value(); }
  bool is_infinite() const { return !value_.has_value(); }

  /// Throws std::logic_error when infinite.
  const Integer& value() const;

  /// `infinite` or the decimal digits.
  std::string to_string() const;

  /// True when both are finite, this is nonzero and divides `other`.
  bool divides(const Cardinal& other) const;

  friend Cardinal operator*(const Cardinal& a, const Cardinal& b);
  friend bool operator==(const Cardinal& a, const Cardinal& b);
  friend std::strong_ordering operator<=>(const Cardinal& a, const Cardinal& b);

 private:
  struct Tag {};
  explicit Cardinal(Tag) {}

  std::optional<Integer> value_;
};

std::ostream& operator<<(std::ostream& os, const Cardinal& c);

}  // namespace ckit
