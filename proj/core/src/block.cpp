#include "tdlab/block.hpp"

#include <algorithm>
#include <string>

#include "tdlab/error.hpp"

namespace tdlab {

namespace {

std::vector<std::int64_t> index_nonzeros(std::int64_t base, const std::vector<Symbol>& symbols) {
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    if (!symbols[k].is_zero()) out.push_back(base + static_cast<std::int64_t>(k));
  }
  return out;
}

const Symbol kZero{};

}  // namespace

Block::Block(std::int64_t base, std::vector<Symbol> symbols) : base_{base}, symbols_{std::move(symbols)} {
  if (symbols_.empty()) throw DomainError("a block has length at least 1");
  nonzeros_ = index_nonzeros(base_, symbols_);
}

Block Block::zeros(std::int64_t base, std::int64_t length) {
  if (length < 1) throw DomainError("a block has length at least 1");
  return Block(base, std::vector<Symbol>(static_cast<std::size_t>(length)));
}

const Symbol& Block::at(std::int64_t i) const {
  if (i < base_) {
    throw RangeError("index " + std::to_string(i) + " below block start " + std::to_string(base_));
  }
  if (i > last()) {
    throw RangeError("index " + std::to_string(i) + " beyond block end " + std::to_string(last()));
  }
  return (*this)[i];
}

const Symbol& Block::value_or_zero(std::int64_t i) const noexcept { return contains(i) ? (*this)[i] : kZero; }

std::int64_t Block::count_nonzero(std::int64_t i, std::int64_t j) const noexcept {
  if (j < i) return 0;
  const auto lo = std::lower_bound(nonzeros_.begin(), nonzeros_.end(), i);
  const auto hi = std::upper_bound(lo, nonzeros_.end(), j);
  return hi - lo;
}

std::int64_t Block::leading_zeros() const noexcept {
  return nonzeros_.empty() ? length() : nonzeros_.front() - base_;
}

std::int64_t Block::trailing_zeros() const noexcept {
  return nonzeros_.empty() ? length() : last() - nonzeros_.back();
}

Block Block::rebased(std::int64_t new_base) const { return Block(new_base, symbols_); }

Block Block::with_symbol(std::int64_t i, Symbol s) const {
  at(i);
  std::vector<Symbol> copy = symbols_;
  copy[static_cast<std::size_t>(i - base_)] = std::move(s);
  return Block(base_, std::move(copy));
}

BlockBuilder& BlockBuilder::append(const Block& b) {
  symbols_.insert(symbols_.end(), b.symbols().begin(), b.symbols().end());
  return *this;
}

BlockBuilder& BlockBuilder::append_scaled(const Symbol& t, const Block& b) {
  if (t.is_zero()) return append_zeros(b.length());
  if (t == Symbol::one()) return append(b);
  for (const Symbol& s : b.symbols()) symbols_.push_back(s.is_zero() ? s : t * s);
  return *this;
}

BlockBuilder& BlockBuilder::append_zeros(std::int64_t count) {
  if (count < 0) throw DomainError("negative zero-run length");
  symbols_.resize(symbols_.size() + static_cast<std::size_t>(count));
  return *this;
}

BlockBuilder& BlockBuilder::append(const Symbol& s) {
  symbols_.push_back(s);
  return *this;
}

Block BlockBuilder::finish(std::int64_t base) && { return Block(base, std::move(symbols_)); }

Block concat(const Block& a, const Block& b) {
  BlockBuilder builder(a.length() + b.length());
  builder.append(a).append(b);
  return std::move(builder).finish(a.base());
}

Block scale(const Symbol& t, const Block& b) {
  BlockBuilder builder(b.length());
  builder.append_scaled(t, b);
  return std::move(builder).finish(b.base());
}

Block window(const Block& b, std::int64_t i, std::int64_t j) {
  if (j < i) {
    throw RangeError("empty window: end " + std::to_string(j) + " precedes start " + std::to_string(i));
  }
  if (i < b.base()) {
    throw RangeError("window start " + std::to_string(i) + " below block start " + std::to_string(b.base()));
  }
  if (j > b.last()) {
    throw RangeError("window end " + std::to_string(j) + " beyond block end " + std::to_string(b.last()));
  }
  const auto first = b.symbols().begin() + (i - b.base());
  return Block(i, std::vector<Symbol>(first, first + (j - i + 1)));
}

Rational sup_distance(const Block& a, const Block& b) {
  if (a.length() != b.length()) {
    throw DomainError("sup_distance needs equal lengths, got " + std::to_string(a.length()) + " and " +
                      std::to_string(b.length()));
  }
  Rational best;
  const auto sa = a.symbols();
  const auto sb = b.symbols();
  for (std::size_t k = 0; k < sa.size(); ++k) {
    if (sa[k] == sb[k]) continue;
    Rational d = abs_diff(sa[k], sb[k]);
    if (d > best) best = std::move(d);
  }
  return best;
}

}  // namespace tdlab
