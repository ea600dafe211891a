#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

namespace tdlab {

/// Exact rational number of unbounded precision.
///
/// Values whose reduced numerator and denominator fit in a signed 64-bit word
/// are stored inline and operated on with 128-bit intermediates. Any result
/// that does not fit is promoted to a heap-allocated GMP rational, and any big
/// result that fits again is demoted, so every value has exactly one
/// representation and equality is field comparison.
class Rational {
 public:
  Rational() noexcept : num_{0}, den_{1} {}
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "p/q" or "p" with arbitrary-size decimal integers; q > 0.
  /// Does not require lowest terms (use parse_canonical for that).
  static Rational parse(std::string_view text);
  /// Parses "p/q" and rejects anything that is not already in lowest terms.
  static Rational parse_canonical(std::string_view text);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept;
  ~Rational();

  bool is_small() const noexcept { return den_ != 0; }
  bool is_zero() const noexcept { return den_ == 1 && num_ == 0; }
  int sign() const noexcept;

  /// Decimal "p/q" with q >= 1, always including the denominator.
  std::string str() const;
  std::string numerator_str() const;
  std::string denominator_str() const;

  Rational abs() const;
  Rational operator-() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  struct Big;
  __extension__ typedef __int128 i128;
  __extension__ typedef unsigned __int128 u128;

  static constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

  struct BigTag {};
  Rational(Big* big, BigTag) noexcept : big_{big}, den_{0} {}
  // num/den with den > 0, already in lowest terms.
  static Rational from_i128(i128 num, i128 den);
  // num/den with den > 0, arbitrary common factors.
  static Rational reduce_i128(i128 num, i128 den);
  static Rational make_big(i128 num, i128 den);
  static Rational adopt(Big* big);

  friend Rational big_add(const Rational&, const Rational&);
  friend Rational big_sub(const Rational&, const Rational&);
  friend Rational big_mul(const Rational&, const Rational&);
  friend Rational big_div(const Rational&, const Rational&);
  friend int big_cmp(const Rational&, const Rational&);

  union {
    std::int64_t num_;
    Big* big_;
  };
  std::int64_t den_;  // 0 marks the big representation
};

Rational big_add(const Rational&, const Rational&);
Rational big_sub(const Rational&, const Rational&);
Rational big_mul(const Rational&, const Rational&);
Rational big_div(const Rational&, const Rational&);
int big_cmp(const Rational&, const Rational&);

inline int Rational::sign() const noexcept {
  if (is_small()) return (num_ > 0) - (num_ < 0);
  return big_cmp(*this, Rational{});
}

inline Rational Rational::from_i128(i128 num, i128 den) {
  if (num <= kSmallMax && num >= -kSmallMax && den <= kSmallMax) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  return make_big(num, den);
}

inline Rational Rational::reduce_i128(i128 num, i128 den) {
  if (num == 0) return Rational{};
  const bool negative = num < 0;
  u128 n = negative ? static_cast<u128>(-num) : static_cast<u128>(num);
  u128 d = static_cast<u128>(den);
  constexpr u128 kWord = std::numeric_limits<std::uint64_t>::max();
  if (n <= kWord && d <= kWord) {
    const std::uint64_t n64 = static_cast<std::uint64_t>(n);
    const std::uint64_t d64 = static_cast<std::uint64_t>(d);
    const std::uint64_t g = std::gcd(n64, d64);
    n = n64 / g;
    d = d64 / g;
  } else {
    u128 a = n, b = d;
    while (b != 0) {
      const u128 t = a % b;
      a = b;
      b = t;
    }
    n /= a;
    d /= a;
  }
  const i128 sn = negative ? -static_cast<i128>(n) : static_cast<i128>(n);
  return from_i128(sn, static_cast<i128>(d));
}

inline Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    if (a.den_ == b.den_) {
      return Rational::reduce_i128(Rational::i128{a.num_} + b.num_, a.den_);
    }
    return Rational::reduce_i128(Rational::i128{a.num_} * b.den_ + Rational::i128{b.num_} * a.den_,
                                 Rational::i128{a.den_} * b.den_);
  }
  return big_add(a, b);
}

inline Rational operator-(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    if (a.den_ == b.den_) {
      return Rational::reduce_i128(Rational::i128{a.num_} - b.num_, a.den_);
    }
    return Rational::reduce_i128(Rational::i128{a.num_} * b.den_ - Rational::i128{b.num_} * a.den_,
                                 Rational::i128{a.den_} * b.den_);
  }
  return big_sub(a, b);
}

inline Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    if (a.num_ == 0 || b.num_ == 0) return Rational{};
    // Cross-cancel first: the product of reduced factors is then reduced.
    const auto abs64 = [](std::int64_t v) { return static_cast<std::uint64_t>(v < 0 ? -v : v); };
    const auto g1 = static_cast<std::int64_t>(std::gcd(abs64(a.num_), static_cast<std::uint64_t>(b.den_)));
    const auto g2 = static_cast<std::int64_t>(std::gcd(abs64(b.num_), static_cast<std::uint64_t>(a.den_)));
    const Rational::i128 num = Rational::i128{a.num_ / g1} * (b.num_ / g2);
    const Rational::i128 den = Rational::i128{a.den_ / g2} * (b.den_ / g1);
    return Rational::from_i128(num, den);
  }
  return big_mul(a, b);
}

inline bool operator==(const Rational& a, const Rational& b) noexcept {
  if (a.is_small() != b.is_small()) return false;
  if (a.is_small()) return a.num_ == b.num_ && a.den_ == b.den_;
  return big_cmp(a, b) == 0;
}

inline std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const Rational::i128 lhs = Rational::i128{a.num_} * b.den_;
    const Rational::i128 rhs = Rational::i128{b.num_} * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int c = big_cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

inline Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

/// 2^-exponent as an exact rational.
Rational pow2_neg(int exponent);

}  // namespace tdlab
