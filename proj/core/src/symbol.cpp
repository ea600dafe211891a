#include "tdlab/symbol.hpp"

#include "tdlab/error.hpp"

namespace tdlab {

Symbol::Symbol(Rational value) : value_(std::move(value)) {
  if (value_.sign() < 0 || value_ > Rational(1)) {
    throw DomainError("symbol " + value_.str() + " lies outside [0,1]");
  }
}

Symbol Symbol::parse(std::string_view text) { return Symbol(Rational::parse_canonical(text)); }

}  // namespace tdlab
