#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tdlab/block.hpp"
#include "tdlab/rational.hpp"

namespace support {

inline mpq_class to_mpq(const tdlab::Rational& r) {
  mpq_class q(r.numerator_str() + "/" + r.denominator_str());
  q.canonicalize();
  return q;
}

inline tdlab::Rational from_mpq(const mpq_class& q) { return tdlab::Rational::parse(q.get_str()); }

inline tdlab::Symbol sym(const std::string& text) { return tdlab::Symbol(tdlab::Rational::parse(text)); }

/// Block from comma-separated symbols such as "1,0,1/2".
inline tdlab::Block block(std::int64_t base, const std::string& text) {
  std::vector<tdlab::Symbol> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    out.push_back(sym(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return tdlab::Block(base, std::move(out));
}

inline std::string render(const tdlab::Block& b) {
  std::string s;
  for (const auto& x : b.symbols()) {
    if (!s.empty()) s += ',';
    const auto& v = x.value();
    s += v.denominator_str() == "1" ? v.numerator_str() : v.str();
  }
  return s;
}

inline tdlab::Symbol random_symbol(std::mt19937_64& rng, std::int64_t max_den = 12) {
  std::uniform_int_distribution<std::int64_t> den(1, max_den);
  const std::int64_t q = den(rng);
  std::uniform_int_distribution<std::int64_t> num(0, q);
  return tdlab::Symbol(num(rng), q);
}

inline tdlab::Block random_block(std::mt19937_64& rng, std::int64_t length, std::int64_t base = 0, double zero_bias = 0.5) {
  std::bernoulli_distribution zero(zero_bias);
  std::vector<tdlab::Symbol> out;
  for (std::int64_t i = 0; i < length; ++i) out.push_back(zero(rng) ? tdlab::Symbol::zero() : random_symbol(rng));
  return tdlab::Block(base, std::move(out));
}

}  // namespace support
