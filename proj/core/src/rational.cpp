#include "tdlab/rational.hpp"

#include <gmpxx.h>

#include <cctype>

#include "tdlab/error.hpp"

namespace tdlab {

struct Rational::Big {
  mpq_class value;
};

namespace {

__extension__ typedef unsigned __int128 u128_t;

mpz_class mpz_from_u128(u128_t v) {
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  mpz_class z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return z;
}

bool fits_small(const mpz_class& z) {
  // |z| <= INT64_MAX; INT64_MIN is excluded from the small representation.
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

std::int64_t to_i64(const mpz_class& z) {
  // Caller guarantees fits_small(z).
  std::uint64_t magnitude = 0;
  mpz_export(&magnitude, nullptr, -1, sizeof(magnitude), 0, 0, z.get_mpz_t());
  const auto v = static_cast<std::int64_t>(magnitude);
  return sgn(z) < 0 ? -v : v;
}

mpq_class to_mpq(std::int64_t num, std::int64_t den) {
  mpq_class q;
  mpz_set_si(mpq_numref(q.get_mpq_t()), num);
  mpz_set_si(mpq_denref(q.get_mpq_t()), den);
  return q;
}

bool is_decimal(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t value) : num_{value}, den_{1} {
  if (value == std::numeric_limits<std::int64_t>::min()) {
    *this = make_big(value, 1);
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) : Rational() {
  if (den == 0) throw DomainError("rational with zero denominator");
  i128 n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  *this = reduce_i128(n, d);
}

Rational::Rational(const Rational& other) : num_{other.num_}, den_{other.den_} {
  if (!other.is_small()) big_ = new Big{other.big_->value};
}

Rational::Rational(Rational&& other) noexcept : num_{other.num_}, den_{other.den_} {
  other.num_ = 0;
  other.den_ = 1;
}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    Rational copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Rational& Rational::operator=(Rational&& other) noexcept {
  if (this != &other) {
    if (!is_small()) delete big_;
    num_ = other.num_;
    den_ = other.den_;
    other.num_ = 0;
    other.den_ = 1;
  }
  return *this;
}

Rational::~Rational() {
  if (!is_small()) delete big_;
}

Rational Rational::adopt(Big* big) {
  big->value.canonicalize();
  const mpz_class& n = big->value.get_num();
  const mpz_class& d = big->value.get_den();
  if (fits_small(n) && fits_small(d)) {
    Rational r;
    r.num_ = to_i64(n);
    r.den_ = to_i64(d);
    delete big;
    return r;
  }
  return Rational(big, BigTag{});
}

Rational Rational::make_big(i128 num, i128 den) {
  auto* big = new Big{};
  const bool negative = num < 0;
  mpz_class n = mpz_from_u128(negative ? static_cast<u128>(-num) : static_cast<u128>(num));
  if (negative) n = -n;
  big->value = mpq_class(n, mpz_from_u128(static_cast<u128>(den)));
  return adopt(big);
}

#define TDLAB_MPQ(r) ((r).is_small() ? to_mpq((r).num_, (r).den_) : (r).big_->value)

Rational big_add(const Rational& a, const Rational& b) {
  return Rational::adopt(new Rational::Big{mpq_class(TDLAB_MPQ(a) + TDLAB_MPQ(b))});
}

Rational big_sub(const Rational& a, const Rational& b) {
  return Rational::adopt(new Rational::Big{mpq_class(TDLAB_MPQ(a) - TDLAB_MPQ(b))});
}

Rational big_mul(const Rational& a, const Rational& b) {
  return Rational::adopt(new Rational::Big{mpq_class(TDLAB_MPQ(a) * TDLAB_MPQ(b))});
}

Rational big_div(const Rational& a, const Rational& b) {
  return Rational::adopt(new Rational::Big{mpq_class(TDLAB_MPQ(a) / TDLAB_MPQ(b))});
}

int big_cmp(const Rational& a, const Rational& b) { return cmp(TDLAB_MPQ(a), TDLAB_MPQ(b)); }

#undef TDLAB_MPQ

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (b.is_small()) {
    // a * (den/num) with the sign moved to the numerator.
    Rational reciprocal;
    reciprocal.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    reciprocal.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * reciprocal;
  }
  return big_div(a, b);
}

Rational Rational::operator-() const {
  if (is_small()) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return adopt(new Big{mpq_class(-big_->value)});
}

std::string Rational::numerator_str() const {
  return is_small() ? std::to_string(num_) : big_->value.get_num().get_str();
}

std::string Rational::denominator_str() const {
  return is_small() ? std::to_string(den_) : big_->value.get_den().get_str();
}

std::string Rational::str() const { return numerator_str() + "/" + denominator_str(); }

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text = slash == std::string_view::npos ? "1" : body.substr(slash + 1);
  if (!is_decimal(num_text) || !is_decimal(den_text)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num_text), 10);
  mpz_class d(std::string(den_text), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return adopt(new Big{mpq_class(n, d)});
}

Rational Rational::parse_canonical(std::string_view text) {
  if (text.find('/') == std::string_view::npos) {
    throw ParseError("rational '" + std::string(text) + "' lacks a denominator");
  }
  Rational r = parse(text);
  if (r.str() != text) {
    throw ParseError("rational '" + std::string(text) + "' is not in lowest terms (expected " + r.str() +
                     ")");
  }
  return r;
}

Rational pow2_neg(int exponent) {
  if (exponent < 0) throw DomainError("pow2_neg expects a non-negative exponent");
  if (exponent <= 62) return Rational(1, std::int64_t{1} << exponent);
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(exponent));
  return Rational::parse("1/" + d.get_str());
}

}  // namespace tdlab
