#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tdlab/report.hpp"

/// Brute-force ground truth for invariant relations, determinism and
/// omega-limits on finite systems.
///
/// Maps need not be onto. On a finite set onto already means invertible, so
/// every non-deterministic example is non-onto; the oracle admits those to
/// exercise the non-recurrent-point construction.
namespace tdlab::oracle {

using Point = int;

/// A self-map of {0, ..., n-1}.
class FiniteSystem {
 public:
  /// Throws DomainError for an empty table or out-of-range values.
  explicit FiniteSystem(std::vector<Point> map);

  /// Parses "v0,v1,...".
  static FiniteSystem parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(map_.size()); }
  Point operator()(Point x) const noexcept { return map_[static_cast<std::size_t>(x)]; }
  std::span<const Point> table() const noexcept { return map_; }
  bool is_onto() const noexcept { return onto_; }

  /// "FSYS n=<n> map=<v0,v1,...>"
  std::string serialize() const;

  friend bool operator==(const FiniteSystem& a, const FiniteSystem& b) { return a.map_ == b.map_; }

 private:
  std::vector<Point> map_;
  bool onto_ = false;
};

/// T^N.
FiniteSystem power_system(const FiniteSystem& sys, int exponent);
/// T x S on pairs, with (a, b) encoded as a * other.size() + b.
FiniteSystem product_system(const FiniteSystem& a, const FiniteSystem& b);

/// An equivalence relation on {0, ..., n-1}, stored as a block label per
/// point normalized to a restricted growth string (labels in order of first
/// appearance).
class Partition {
 public:
  explicit Partition(std::vector<int> labels);

  static Partition diagonal(int n);
  static Partition full(int n);

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  bool related(Point a, Point b) const noexcept {
    return labels_[static_cast<std::size_t>(a)] == labels_[static_cast<std::size_t>(b)];
  }
  std::span<const int> labels() const noexcept { return labels_; }
  /// Blocks in "{0,1}{2}" notation.
  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
};

/// Every partition of n points, in decreasing lexicographic order of
/// restricted growth strings: the diagonal comes first and the full relation
/// last.
void for_each_partition(int n, const std::function<bool(const Partition&)>& visit);
std::int64_t bell_number(int n);

enum class RelationClass {
  NotForwardInvariant,   ///< (T x T)(R) not contained in R
  ForwardInvariantOnly,  ///< (T x T)(R) strictly inside R
  Invariant,             ///< (T x T)(R) = R
};

const char* to_string(RelationClass c) noexcept;

/// Compares the raw pair image {(Ta, Tb) : a R b} with R as sets of pairs.
RelationClass classify_relation(const FiniteSystem& sys, const Partition& relation);

inline constexpr int kDefaultExhaustiveBound = 8;

struct TdResult {
  bool deterministic = true;
  std::optional<Partition> witness;  ///< first forward-invariant-only partition
};

/// Deterministic iff no partition is forward invariant without being
/// invariant. Throws ResourceCapError when size() > bound.
TdResult is_td(const FiniteSystem& sys, int bound = kDefaultExhaustiveBound);

/// The cycle eventually entered by the orbit of x, sorted.
std::vector<Point> omega_limit(const FiniteSystem& sys, Point x);
bool is_forward_recurrent(const FiniteSystem& sys, Point x);

struct Lemma6Result {
  std::vector<Point> orbit_set;  ///< {T^n x : n >= 0} union omega(x), sorted
  Partition relation;            ///< orbit_set^2 union the diagonal
  RelationClass classification;
};

/// Builds the relation that collapses the closed forward orbit of a
/// non-recurrent point. Throws PreconditionError when x is recurrent, and
/// Error if the relation is not forward-invariant-only.
Lemma6Result lemma6_relation(const FiniteSystem& sys, Point x);

/// For every point x and 1 <= N <= nmax:
///   recurrence for T implies recurrence for T^N;
///   omega_T(x) = union_{k<N} omega_{T^N}(T^k x);
/// and, when every pair is recurrent for T x T, T^N is deterministic.
CheckReport lemma7_checks(const FiniteSystem& sys, int nmax);

/// omega_T(x) = union_{k<N} omega_{T^N}(T^k x), compared exactly.
bool omega_decomposition_holds(const FiniteSystem& sys, Point x, int exponent);

/// Every point of T x T lies on a cycle.
bool all_pairs_recurrent(const FiniteSystem& sys);

/// Calls visit for each of the n^n maps on n points, in lexicographic order.
void for_each_map(int n, const std::function<bool(const FiniteSystem&)>& visit);
/// Calls visit for each of the n! permutations, in lexicographic order.
void for_each_permutation(int n, const std::function<bool(const FiniteSystem&)>& visit);

struct SweepConfig {
  int nmax = 5;
  int power_max = 4;
  bool permutations_only = false;
  /// Sizes above these bounds are sampled with `samples` seeded draws.
  int all_maps_bound = 6;
  int permutations_bound = 7;
  int samples = 200;
  std::uint64_t seed = 1;
};

/// Runs every oracle check for n = 1..nmax and returns one report per check
/// and size, in canonical order.
std::vector<CheckReport> sweep(const SweepConfig& config);

}  // namespace tdlab::oracle
