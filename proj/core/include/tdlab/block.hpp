#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tdlab/rational.hpp"
#include "tdlab/symbol.hpp"

namespace tdlab {

/// A finite run of symbols at positions base, base+1, ..., base+length-1.
///
/// Symbols are stored densely; a sorted index of the nonzero positions is
/// kept alongside so that scans over sparse blocks cost O(nonzeros). Blocks
/// are immutable once constructed.
class Block {
 public:
  /// Throws DomainError when `symbols` is empty.
  Block(std::int64_t base, std::vector<Symbol> symbols);

  static Block zeros(std::int64_t base, std::int64_t length);

  std::int64_t base() const noexcept { return base_; }
  std::int64_t length() const noexcept { return static_cast<std::int64_t>(symbols_.size()); }
  /// Last covered position, base + length - 1.
  std::int64_t last() const noexcept { return base_ + length() - 1; }
  bool contains(std::int64_t i) const noexcept { return i >= base_ && i <= last(); }

  /// Bounds-checked access; throws RangeError naming the violated bound.
  const Symbol& at(std::int64_t i) const;
  /// Unchecked access by absolute position.
  const Symbol& operator[](std::int64_t i) const noexcept {
    return symbols_[static_cast<std::size_t>(i - base_)];
  }
  /// The symbol at i, or 0 for positions outside the block.
  const Symbol& value_or_zero(std::int64_t i) const noexcept;

  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  /// Absolute nonzero positions in strictly increasing order.
  std::span<const std::int64_t> nonzero_positions() const noexcept { return nonzeros_; }
  std::int64_t nonzero_count() const noexcept { return static_cast<std::int64_t>(nonzeros_.size()); }

  /// Number of nonzero symbols in [i, j] (clamped to the block).
  std::int64_t count_nonzero(std::int64_t i, std::int64_t j) const noexcept;
  bool is_zero_on(std::int64_t i, std::int64_t j) const noexcept { return count_nonzero(i, j) == 0; }

  /// Length of the maximal run of zeros at the start / end of the block.
  std::int64_t leading_zeros() const noexcept;
  std::int64_t trailing_zeros() const noexcept;

  Block rebased(std::int64_t new_base) const;
  /// Copy with the symbol at position i replaced.
  Block with_symbol(std::int64_t i, Symbol s) const;

  friend bool operator==(const Block& a, const Block& b) {
    return a.base_ == b.base_ && a.symbols_ == b.symbols_;
  }

 private:
  std::int64_t base_;
  std::vector<Symbol> symbols_;
  std::vector<std::int64_t> nonzeros_;
};

/// Accumulates pieces and produces a Block in one allocation pass.
class BlockBuilder {
 public:
  explicit BlockBuilder(std::int64_t reserve = 0) { symbols_.reserve(static_cast<std::size_t>(reserve)); }

  BlockBuilder& append(const Block& b);
  BlockBuilder& append_scaled(const Symbol& t, const Block& b);
  BlockBuilder& append_zeros(std::int64_t count);
  BlockBuilder& append(const Symbol& s);

  std::int64_t length() const noexcept { return static_cast<std::int64_t>(symbols_.size()); }
  Block finish(std::int64_t base) &&;

 private:
  std::vector<Symbol> symbols_;
};

/// Symbols of a followed by those of b; the result keeps a's base.
Block concat(const Block& a, const Block& b);
/// Pointwise product t * b; same base and length.
Block scale(const Symbol& t, const Block& b);
/// The sub-block at positions i..j with base i. Throws RangeError.
Block window(const Block& b, std::int64_t i, std::int64_t j);
/// Exact maximum of |a(k) - b(k)| over aligned offsets. Throws DomainError on
/// a length mismatch. Bases need not agree.
Rational sup_distance(const Block& a, const Block& b);

}  // namespace tdlab
