#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "tdlab/rational.hpp"

namespace tdlab {

/// A letter of the alphabet [0,1]: an exact rational constrained to the unit
/// interval.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(Rational value);
  Symbol(std::int64_t num, std::int64_t den) : Symbol(Rational(num, den)) {}

  static Symbol zero() { return Symbol{}; }
  static Symbol one() { return Symbol(1, 1); }
  /// Parses the canonical "p/q" text used in sequence files.
  static Symbol parse(std::string_view text);

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_.is_zero(); }
  std::string str() const { return value_.str(); }

  /// Pointwise product; [0,1] is closed under multiplication.
  friend Symbol operator*(const Symbol& a, const Symbol& b) {
    Symbol r;
    r.value_ = a.value_ * b.value_;
    return r;
  }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
    return a.value_ <=> b.value_;
  }

 private:
  Rational value_;
};

/// |a - b|, exact.
inline Rational abs_diff(const Symbol& a, const Symbol& b) { return (a.value() - b.value()).abs(); }

}  // namespace tdlab
