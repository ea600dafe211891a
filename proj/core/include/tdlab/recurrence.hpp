#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tdlab/block.hpp"
#include "tdlab/product.hpp"
#include "tdlab/report.hpp"

/// Recurrence analysis of shifted generating points on finite windows.
///
/// Distances use the weighted supremum
///
///     d_W(p, q) = max_{|i| <= W} 2^{-|i|} |p(i) - q(i)|
///
/// which differs from the full metric by at most 2^{-(W+1)} because symbols
/// lie in [0,1]. All arithmetic is exact.
namespace tdlab::recurrence {

enum class Sidedness { OneSided, TwoSided };

/// The point T^shift z observed through coordinates [-radius, radius]
/// (two-sided) or [0, radius] (one-sided), where coordinate i reads the
/// source block at origin + i. The source must outlive the point.
/// Reading outside the source block is an error, never an implicit 0.
class WindowPoint {
 public:
  WindowPoint(const Block& source, std::int64_t origin, std::int64_t radius, Sidedness sidedness);

  /// Two-sided point centered at position 0 of `source`, shifted by `shift`.
  static WindowPoint two_sided(const Block& source, std::int64_t shift, std::int64_t radius);
  /// One-sided point whose coordinate 0 is the first symbol of `source`,
  /// shifted by `shift`.
  static WindowPoint one_sided(const Block& source, std::int64_t shift, std::int64_t radius);

  WindowPoint shifted(std::int64_t n) const;

  std::int64_t radius() const noexcept { return radius_; }
  Sidedness sidedness() const noexcept { return sidedness_; }
  std::int64_t first_coordinate() const noexcept { return sidedness_ == Sidedness::TwoSided ? -radius_ : 0; }
  std::int64_t origin() const noexcept { return origin_; }
  const Block& source() const noexcept { return *source_; }

  /// Symbol at coordinate i; throws RangeError outside the window or block.
  const Symbol& at(std::int64_t i) const;
  /// Throws RangeError unless every coordinate of the window is built.
  void require_in_range() const;

 private:
  const Block* source_;
  std::int64_t origin_;
  std::int64_t radius_;
  Sidedness sidedness_;
};

/// 2^{-(radius+1)}: bound on the contribution of coordinates beyond the window.
Rational tail_bound(std::int64_t radius);

/// Exact d_W. Both points need the same radius and sidedness.
Rational window_distance(const WindowPoint& p, const WindowPoint& q);

/// All n in [1, horizon] with d_W(T^n p, p) < eps, increasing.
std::vector<std::int64_t> epsilon_recurrence_times(const WindowPoint& p, const Rational& eps, std::int64_t horizon);
/// Same for a product point under the max metric over its components.
std::vector<std::int64_t> epsilon_recurrence_times(std::span<const WindowPoint> components, const Rational& eps,
                                                   std::int64_t horizon);

/// Passes iff x*(0) = y*(0) = 1 and min(x*(n), y*(n)) = 0 for every
/// 0 < |n| <= horizon; then every nonzero shift of the pair stays at distance
/// >= 1 from it at coordinate 0. Requires 1 <= horizon <= half width.
CheckReport pair_separation_check(const product::Thm2State& state, std::int64_t horizon);

enum class EscapeSide {
  XatN,  ///< x* vanishes on a window shifted by r * n_k
  YatM,  ///< y* vanishes on a window shifted by r * m_k
};

const char* to_string(EscapeSide side) noexcept;

struct EscapeChoice {
  std::int64_t center = 0;
  int r = 0;               ///< smallest valid r in {1, 2, 3}
  unsigned valid_mask = 0; ///< bit r-1 set when r is valid
};

struct EscapeResult {
  CheckReport report;
  std::vector<EscapeChoice> choices;
};

/// For every center j with all accesses in range, finds r in {1,2,3} such that
/// the side's sequence is identically 0 on [j-w+rT, j+w+rT], T the side's
/// time. Requires 1 <= k <= stage-1 and 0 <= w < T.
EscapeResult escape_witness(const product::Thm2State& state, int k, std::int64_t w, EscapeSide side);

struct OmegaChoice {
  std::int64_t center = 0;
  int r_x = 0;  ///< shift r_x * m_k: x* returns within 3/k, y* vanishes
  int r_y = 0;  ///< shift r_y * n_k: y* returns within 3/k, x* vanishes
};

struct OmegaResult {
  CheckReport report;
  std::vector<OmegaChoice> choices;
};

/// Finite certificate that (x*, 0) and (0, y*) lie in the omega-limit set of
/// (x*, y*): per center, r in {1,2,3} with
///   (a) max_{|i-j| <= w} |x*(i + r m_k) - x*(i)| <= 3/k and
///   (b) y* identically 0 on [j-w+r m_k, j+w+r m_k],
/// and symmetrically with n_k and the roles of x*, y* exchanged.
OmegaResult cross_omega_witness(const product::Thm2State& state, int k, std::int64_t w);

/// "WITNESS kind=<kind> k=<k> center=<j> r=<r>"
std::string witness_line(const std::string& kind, int k, std::int64_t center, int r);

}  // namespace tdlab::recurrence
