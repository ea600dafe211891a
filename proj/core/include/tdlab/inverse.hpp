#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tdlab/block.hpp"
#include "tdlab/report.hpp"

/// One-sided point whose shift is pointwise rigid while the inverse shift has
/// a point backward-asymptotic to the fixed point 0.
///
/// The point is built as an increasing chain of prefixes x^1 = 100,
///
///     x^{m+1} = x^m x^m (m/(m+1) x^m) ((m-1)/(m+1) x^m) ... (1/(m+1) x^m) (0 x^m),
///
/// each indexed from position 1. Stage m+1 holds m+3 copies of x^m.
namespace tdlab::inverse {

inline constexpr std::int64_t kDefaultMaxLength = 100'000'000;

struct Thm1State {
  int stage = 1;
  /// lengths[m-1] is n_m, the measured length of x^m.
  std::vector<std::int64_t> lengths;
  /// x^stage with base 1.
  Block prefix = Block::zeros(1, 1);

  std::int64_t length_at(int m) const { return lengths.at(static_cast<std::size_t>(m - 1)); }
};

Thm1State initial_state();

/// Length of the next stage, (stage + 3) * n_stage. Throws ResourceCapError on
/// 64-bit overflow.
std::int64_t next_length(const Thm1State& state);

/// Extends the state by one stage. The cap is checked before any allocation.
Thm1State step(const Thm1State& state, std::int64_t max_length = kDefaultMaxLength);
/// Stage m, m >= 1.
Thm1State build(int m, std::int64_t max_length = kDefaultMaxLength);

enum class Condition {
  C1,       ///< 0^k 1 occurs, for every k up to the bound
  C3,       ///< shift-n_k rigidity on windows that are not all zero
  C2Prime,  ///< smallness propagation: x(i) <= max of next n_j symbols + 1/(j+1)
  Tails,    ///< the final stage+1 symbols are 0
};

const char* condition_id(Condition c) noexcept;

/// Dispatches to the checks below. `bound` is kmax for C1 and C3, jmax for
/// C2Prime, ignored for Tails. C3 and C2Prime need bound <= stage-1.
CheckReport verify(const Thm1State& state, Condition condition, int bound = 0);

// The block-level checks take the times n_1, n_2, ... explicitly so they can
// be run on scaled or mutated prefixes.

/// Longest run of zeros followed immediately by a symbol equal to 1; passes
/// iff it is at least kmax.
CheckReport verify_zero_runs(const Block& x, int kmax);
/// For k <= kmax and every i with i+n_k+k-1 in range: if x(i..i+k-1) is not
/// all zero then max_d |x(i+d) - x(i+n_k+d)| < 1/k.
CheckReport verify_rigidity(const Block& x, std::span<const std::int64_t> times, int kmax);
/// For j <= jmax and every i with i+n_j in range, with eps the maximum of
/// x(i+1..i+n_j): x(i) <= eps + 1/(j+1). Reports the number of instances met
/// with equality.
CheckReport verify_smallness(const Block& x, std::span<const std::int64_t> times, int jmax);
CheckReport verify_tails(const Block& x, int count);

/// A window a b_1 ... b_{k+1} with b_i <= eps for i <= k but a > eps + 1/k,
/// taking eps = max(b_1..b_k). Such a window refutes the unrestricted form of
/// the smallness property.
struct LiteralSmallnessWitness {
  int k = 0;
  std::int64_t position = 0;
  std::vector<Symbol> window;
  Rational epsilon;
};

std::optional<LiteralSmallnessWitness> falsify_literal_smallness(const Block& x, int k);
/// INFO report describing the first witness for k, or its absence.
CheckReport literal_smallness_report(const Block& x, int k);

}  // namespace tdlab::inverse
