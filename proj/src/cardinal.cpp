#include "ckit/cardinal.hpp"

#include <stdexcept>

namespace ckit {

Cardinal::Cardinal(Integer value) : value_(std::move(value)) {
  if (sgn(*value_) < 0) throw std::invalid_argument("Cardinal: negative value");
}

const Integer& Cardinal::value() const {
  if (!value_) throw std::logic_error("Cardinal: value() of an infinite cardinal");
  return *value_;
}

std::string Cardinal::to_string() const {
  return value_ ? value_->get_str() : std::string("infinite");
}

bool Cardinal::divides(const Cardinal& other) const {
  if (!value_ || !other.value_ || sgn(*value_) == 0) return false;
  return mpz_divisible_p(other.value_->get_mpz_t(), value_->get_mpz_t()) != 0;
}

Cardinal operator*(const Cardinal& a, const Cardinal& b) {
  if (a.is_finite() && b.is_finite()) return Cardinal(Integer(*a.value_ * *b.value_));
  // infinity absorbs everything except zero
  if ((a.is_finite() && sgn(*a.value_) == 0) || (b.is_finite() && sgn(*b.value_) == 0))
    return Cardinal(0L);
  return Cardinal::infinite();
}

bool operator==(const Cardinal& a, const Cardinal& b) {
  if (a.is_finite() != b.is_finite()) return false;
  return a.is_infinite() || *a.value_ == *b.value_;
}

std::strong_ordering operator<=>(const Cardinal& a, const Cardinal& b) {
  if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
  if (a.is_infinite()) return std::strong_ordering::greater;
  if (b.is_infinite()) return std::strong_ordering::less;
  const int c = cmp(*a.value_, *b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Cardinal& c) { return os << c.to_string(); }

}  // namespace ckit
