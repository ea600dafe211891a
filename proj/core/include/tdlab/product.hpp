#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdlab/block.hpp"
#include "tdlab/report.hpp"

/// Two-sided points x*, y* whose orbit closures form a deterministic system
/// while the pair (x*, y*) is not forward recurrent under the square.
///
/// Stage r holds center-indexed blocks x_r, y_r of a common odd length with
/// position 0 at the center. Given zero runs u = 0^s, v = 0^t, u' = 0^s',
/// v' = 0^t', the next stage is
///
///     x_{r+1} = v (1/(r+1) x_r) u ... u (r/(r+1) x_r) u x_r u (r/(r+1) x_r) u ... u (1/(r+1) x_r) v
///
/// and likewise for y with u', v'. The copy pitches are the rigidity times
/// m_r = len + s and n_r = len + s'.
namespace tdlab::product {

inline constexpr std::int64_t kDefaultMaxLength = 100'000'000;

/// Zero-run lengths for one stage: u, v on the x side, u', v' on the y side.
struct SpacerChoice {
  std::int64_t s = 0;
  std::int64_t t = 0;
  std::int64_t s_prime = 0;
  std::int64_t t_prime = 0;

  friend bool operator==(const SpacerChoice&, const SpacerChoice&) = default;
};

/// Zero-run lengths a, b, c, d for x' = b y a x a y b and y' = d x c y c x d.
struct InterleaveChoice {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;

  friend bool operator==(const InterleaveChoice&, const InterleaveChoice&) = default;
};

struct Thm2State {
  int stage = 1;
  Block x = Block::zeros(0, 1);
  Block y = Block::zeros(0, 1);
  /// m_times[k-1] = m_k, n_times[k-1] = n_k, for k <= stage-1.
  std::vector<std::int64_t> m_times;
  std::vector<std::int64_t> n_times;
  std::vector<SpacerChoice> spacers;
  std::vector<InterleaveChoice> interleaves;
  /// Transitive variant: an interleave step precedes every build step.
  bool transitive = false;
  /// The blocks are the interleaved x'_r, y'_r of the current stage.
  bool interleaved = false;

  std::int64_t length() const noexcept { return x.length(); }
  /// Blocks cover [-half_width, half_width].
  std::int64_t half_width() const noexcept { return (x.length() - 1) / 2; }
  int defined_times() const noexcept { return static_cast<int>(m_times.size()); }
  std::int64_t m(int k) const { return m_times.at(static_cast<std::size_t>(k - 1)); }
  std::int64_t n(int k) const { return n_times.at(static_cast<std::size_t>(k - 1)); }
  /// max{m_k, n_k : k <= stage-1}, 0 at stage 1.
  std::int64_t max_time() const noexcept;
  /// Required length of the leading and trailing zero runs: 2 * max_time().
  std::int64_t zero_tail_bound() const noexcept { return 2 * max_time(); }
};

/// x_1 = y_1 = (1) at position 0.
Thm2State initial_state(bool transitive = false);

/// Throws PreconditionError when the choice breaks t = t' + r(s' - s) or
/// s' > s, and ResourceCapError when the result would exceed max_length.
Thm2State build_stage(const Thm2State& state, const SpacerChoice& choice,
                      std::int64_t max_length = kDefaultMaxLength);

/// Forms x'_r, y'_r. Requires b + a = d + c, a != c, every run at least the
/// zero-tail bound, and a state that is not already interleaved; the result is
/// re-checked for orthogonality.
Thm2State build_transitive_stage(const Thm2State& state, const InterleaveChoice& choice,
                                 std::int64_t max_length = kDefaultMaxLength);

/// a = d = max(bound, 1), c = a + len, b = len + d: the interleaved copies of
/// x_r and y_r then never overlap.
InterleaveChoice default_interleave(const Thm2State& state);

struct SolverConfig {
  int max_iterations = 32;
  std::int64_t max_length = kDefaultMaxLength;
};

/// Spacer lengths for the next stage that make every verifier pass on the
/// result. Seeds satisfy the divisibility chain n_{r-1} | m_r | n_r so that
/// block phases carry across stages; a failing verifier doubles the parameter
/// it depends on. Throws ResourceCapError naming the failing condition once
/// the iteration cap is spent.
SpacerChoice solve_spacers(const Thm2State& state, const SolverConfig& config = {});

/// Stage r built with solver-chosen spacers (and default interleaves in the
/// transitive variant). Appends one SPACERS / INTERLEAVE line per decision to
/// `log` when given.
Thm2State build(int r, bool transitive = false, const SolverConfig& config = {},
                std::vector<std::string>* log = nullptr);

std::string spacer_log_line(int r, const SpacerChoice& choice);
std::string interleave_log_line(int r, const InterleaveChoice& choice);

enum class Condition {
  I,                   ///< |x(i+m_k) - x(i)| <= 1/k
  II,                  ///< |y(i+n_k) - y(i)| <= 1/k
  III,                 ///< x sparse at block length n_k (phased)
  IV,                  ///< y sparse at block length m_k (phased)
  V,                   ///< min(x(p), y(p)) = 0 for p != 0, x(0) = y(0) = 1
  Z,                   ///< zero tails of length >= 2 max time
  SlidingFalsifier,    ///< INFO: witness against the any-offset sparseness reading
  TransitiveRigidity,  ///< every symbol repeats within 1/k at distance m_k or n_k
};

const char* condition_id(Condition c) noexcept;

/// k must lie in [1, stage-1] for the k-indexed conditions; V and Z ignore it.
CheckReport verify(const Thm2State& state, Condition condition, int k = 0);

/// Every condition relevant to the state's variant for k <= kmax, in canonical
/// order. Plain: I, II, III, IV, SLIDING_FALSIFIER, V, Z. Transitive: V, Z,
/// TRANSITIVE_RIGIDITY.
std::vector<CheckReport> verify_stage(const Thm2State& state, int kmax);

/// Smallest phase c in [0, len) such that, cutting the integers into blocks
/// [c + q*len, c + (q+1)*len), any two blocks holding nonzeros of b are at
/// least three blocks apart. Positions outside b count as 0.
std::optional<std::int64_t> sparse_phase(const Block& b, std::int64_t len);

}  // namespace tdlab::product
