#include "tdlab/finite_oracle.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>

#include "tdlab/error.hpp"

namespace tdlab::oracle {

namespace {

std::string join(std::span<const Point> values) {
  std::string out;
  for (const Point v : values) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

// Row-major n x n membership table.
using PairSet = std::vector<char>;

PairSet pairs_of(const Partition& p) {
  const int n = p.size();
  PairSet out(static_cast<std::size_t>(n * n), 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out[static_cast<std::size_t>(a * n + b)] = p.related(a, b);
  }
  return out;
}

void require_point(const FiniteSystem& sys, Point x) {
  if (x < 0 || x >= sys.size()) {
    throw PreconditionError("point " + std::to_string(x) + " outside [0, " + std::to_string(sys.size() - 1) + "]");
  }
}

void partitions_from(std::vector<int>& labels, int pos, int next_label, bool& stop,
                     const std::function<bool(const Partition&)>& visit) {
  const int n = static_cast<int>(labels.size());
  if (stop) return;
  if (pos == n) {
    if (!visit(Partition(labels))) stop = true;
    return;
  }
  for (int label = next_label; label >= 0 && !stop; --label) {
    labels[static_cast<std::size_t>(pos)] = label;
    partitions_from(labels, pos + 1, label == next_label ? next_label + 1 : next_label, stop, visit);
  }
}

}  // namespace

FiniteSystem::FiniteSystem(std::vector<Point> map) : map_(std::move(map)) {
  if (map_.empty()) throw DomainError("a finite system needs at least one point");
  std::vector<char> hit(map_.size(), 0);
  for (const Point v : map_) {
    if (v < 0 || v >= size()) {
      throw DomainError("map value " + std::to_string(v) + " outside [0, " + std::to_string(size() - 1) + "]");
    }
    hit[static_cast<std::size_t>(v)] = 1;
  }
  onto_ = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

FiniteSystem FiniteSystem::parse(std::string_view text) {
  std::vector<Point> values;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    Point v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ParseError("malformed map entry '" + std::string(item) + "'");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return FiniteSystem(std::move(values));
}

std::string FiniteSystem::serialize() const {
  return "FSYS n=" + std::to_string(size()) + " map=" + join(map_);
}

FiniteSystem power_system(const FiniteSystem& sys, int exponent) {
  if (exponent < 0) throw PreconditionError("exponent must be non-negative");
  std::vector<Point> out(static_cast<std::size_t>(sys.size()));
  for (Point x = 0; x < sys.size(); ++x) {
    Point y = x;
    for (int i = 0; i < exponent; ++i) y = sys(y);
    out[static_cast<std::size_t>(x)] = y;
  }
  return FiniteSystem(std::move(out));
}

FiniteSystem product_system(const FiniteSystem& a, const FiniteSystem& b) {
  const int nb = b.size();
  std::vector<Point> out(static_cast<std::size_t>(a.size() * nb));
  for (Point i = 0; i < a.size(); ++i) {
    for (Point j = 0; j < nb; ++j) out[static_cast<std::size_t>(i * nb + j)] = a(i) * nb + b(j);
  }
  return FiniteSystem(std::move(out));
}

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("a partition needs at least one point");
  std::vector<int> relabel;
  for (int& label : labels_) {
    if (label < 0) throw DomainError("negative block label");
    if (static_cast<std::size_t>(label) >= relabel.size()) relabel.resize(static_cast<std::size_t>(label) + 1, -1);
    int& target = relabel[static_cast<std::size_t>(label)];
    if (target < 0) target = *std::max_element(relabel.begin(), relabel.end()) + 1;
    label = target;
  }
}

Partition Partition::diagonal(int n) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 0);
  return Partition(std::move(labels));
}

Partition Partition::full(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 0)); }

std::string Partition::str() const {
  const int blocks = *std::max_element(labels_.begin(), labels_.end()) + 1;
  std::string out;
  for (int b = 0; b < blocks; ++b) {
    std::vector<Point> members;
    for (int x = 0; x < size(); ++x) {
      if (labels_[static_cast<std::size_t>(x)] == b) members.push_back(x);
    }
    out += "{" + join(members) + "}";
  }
  return out;
}

void for_each_partition(int n, const std::function<bool(const Partition&)>& visit) {
  if (n < 1) throw PreconditionError("partitions need n >= 1");
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  bool stop = false;
  partitions_from(labels, 1, 1, stop, visit);
}

std::int64_t bell_number(int n) {
  // Bell triangle.
  std::vector<std::int64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::int64_t> next{row.back()};
    for (const auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

const char* to_string(RelationClass c) noexcept {
  switch (c) {
    case RelationClass::NotForwardInvariant: return "NOT_FORWARD_INVARIANT";
    case RelationClass::ForwardInvariantOnly: return "FORWARD_INVARIANT_ONLY";
    case RelationClass::Invariant: return "INVARIANT";
  }
  return "?";
}

RelationClass classify_relation(const FiniteSystem& sys, const Partition& relation) {
  const int n = sys.size();
  if (relation.size() != n) {
    throw PreconditionError("relation on " + std::to_string(relation.size()) + " points, system on " +
                            std::to_string(n));
  }
  const PairSet r = pairs_of(relation);
  PairSet image(r.size(), 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (r[static_cast<std::size_t>(a * n + b)]) image[static_cast<std::size_t>(sys(a) * n + sys(b))] = 1;
    }
  }
  bool equal = true;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (image[i] && !r[i]) return RelationClass::NotForwardInvariant;
    if (r[i] && !image[i]) equal = false;
  }
  return equal ? RelationClass::Invariant : RelationClass::ForwardInvariantOnly;
}

TdResult is_td(const FiniteSystem& sys, int bound) {
  if (sys.size() > bound) {
    throw ResourceCapError("exhaustive determinism check limited to " + std::to_string(bound) + " points, got " +
                           std::to_string(sys.size()));
  }
  TdResult result;
  for_each_partition(sys.size(), [&](const Partition& p) {
    if (classify_relation(sys, p) == RelationClass::ForwardInvariantOnly) {
      result.deterministic = false;
      result.witness = p;
      return false;
    }
    return true;
  });
  return result;
}

std::vector<Point> omega_limit(const FiniteSystem& sys, Point x) {
  require_point(sys, x);
  std::vector<int> seen_at(static_cast<std::size_t>(sys.size()), -1);
  std::vector<Point> orbit;
  Point y = x;
  while (seen_at[static_cast<std::size_t>(y)] < 0) {
    seen_at[static_cast<std::size_t>(y)] = static_cast<int>(orbit.size());
    orbit.push_back(y);
    y = sys(y);
  }
  std::vector<Point> cycle(orbit.begin() + seen_at[static_cast<std::size_t>(y)], orbit.end());
  std::sort(cycle.begin(), cycle.end());
  return cycle;
}

bool is_forward_recurrent(const FiniteSystem& sys, Point x) {
  const auto cycle = omega_limit(sys, x);
  return std::binary_search(cycle.begin(), cycle.end(), x);
}

Lemma6Result lemma6_relation(const FiniteSystem& sys, Point x) {
  require_point(sys, x);
  if (is_forward_recurrent(sys, x)) {
    throw PreconditionError("point " + std::to_string(x) + " is forward recurrent; the construction needs a "
                            "non-recurrent point");
  }
  std::vector<char> member(static_cast<std::size_t>(sys.size()), 0);
  for (Point y = x; !member[static_cast<std::size_t>(y)]; y = sys(y)) member[static_cast<std::size_t>(y)] = 1;
  for (const Point y : omega_limit(sys, x)) member[static_cast<std::size_t>(y)] = 1;

  Lemma6Result out{{}, Partition::diagonal(sys.size()), RelationClass::Invariant};
  std::vector<int> labels(static_cast<std::size_t>(sys.size()));
  for (Point y = 0; y < sys.size(); ++y) {
    if (member[static_cast<std::size_t>(y)]) {
      out.orbit_set.push_back(y);
      labels[static_cast<std::size_t>(y)] = 0;
    } else {
      labels[static_cast<std::size_t>(y)] = y + 1;
    }
  }
  out.relation = Partition(std::move(labels));
  out.classification = classify_relation(sys, out.relation);
  if (out.classification != RelationClass::ForwardInvariantOnly) {
    throw Error("collapsed orbit relation of point " + std::to_string(x) + " classified " +
                to_string(out.classification) + " on " + sys.serialize());
  }
  return out;
}

bool omega_decomposition_holds(const FiniteSystem& sys, Point x, int exponent) {
  if (exponent < 1) throw PreconditionError("exponent must be at least 1");
  const FiniteSystem power = power_system(sys, exponent);
  std::vector<Point> joined;
  Point y = x;
  for (int k = 0; k < exponent; ++k) {
    const auto part = omega_limit(power, y);
    joined.insert(joined.end(), part.begin(), part.end());
    y = sys(y);
  }
  std::sort(joined.begin(), joined.end());
  joined.erase(std::unique(joined.begin(), joined.end()), joined.end());
  return joined == omega_limit(sys, x);
}

bool all_pairs_recurrent(const FiniteSystem& sys) {
  const FiniteSystem square = product_system(sys, sys);
  for (Point p = 0; p < square.size(); ++p) {
    if (!is_forward_recurrent(square, p)) return false;
  }
  return true;
}

CheckReport lemma7_checks(const FiniteSystem& sys, int nmax) {
  if (nmax < 1) throw PreconditionError("Nmax must be at least 1");
  CheckReport r = make_report("LEMMA7", Verdict::Pass);
  r.param("n", sys.size()).param("Nmax", nmax);
  const auto fail = [&](const char* part, Point x, int exponent) {
    r.verdict = Verdict::Fail;
    r.note("map", join(sys.table())).note("part", part).note("x", x).note("N", exponent);
    return r;
  };
  for (int exponent = 1; exponent <= nmax; ++exponent) {
    const FiniteSystem power = power_system(sys, exponent);
    for (Point x = 0; x < sys.size(); ++x) {
      if (is_forward_recurrent(sys, x) && !is_forward_recurrent(power, x)) return fail("a", x, exponent);
      if (!omega_decomposition_holds(sys, x, exponent)) return fail("b", x, exponent);
    }
  }
  if (all_pairs_recurrent(sys)) {
    for (int exponent = 1; exponent <= nmax; ++exponent) {
      if (!is_td(power_system(sys, exponent), std::max(kDefaultExhaustiveBound, sys.size())).deterministic) {
        return fail("c", 0, exponent);
      }
    }
  }
  return r;
}

void for_each_map(int n, const std::function<bool(const FiniteSystem&)>& visit) {
  if (n < 1) throw PreconditionError("maps need n >= 1");
  std::vector<Point> table(static_cast<std::size_t>(n), 0);
  while (true) {
    if (!visit(FiniteSystem(table))) return;
    int pos = n - 1;
    while (pos >= 0 && table[static_cast<std::size_t>(pos)] == n - 1) table[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return;
    ++table[static_cast<std::size_t>(pos)];
  }
}

void for_each_permutation(int n, const std::function<bool(const FiniteSystem&)>& visit) {
  if (n < 1) throw PreconditionError("permutations need n >= 1");
  std::vector<Point> table(static_cast<std::size_t>(n));
  std::iota(table.begin(), table.end(), 0);
  do {
    if (!visit(FiniteSystem(table))) return;
  } while (std::next_permutation(table.begin(), table.end()));
}

namespace {

struct SizeTally {
  std::int64_t systems = 0;
  std::int64_t deterministic = 0;
  std::int64_t nonrecurrent_points = 0;
  std::int64_t decompositions = 0;
  std::vector<CheckReport> failures;
};

void check_system(const FiniteSystem& sys, const SweepConfig& cfg, SizeTally& tally) {
  ++tally.systems;
  const TdResult td = is_td(sys, std::max(kDefaultExhaustiveBound, cfg.nmax));
  if (td.deterministic) ++tally.deterministic;
  const bool expected_witness = !sys.is_onto() && td.witness == Partition::diagonal(sys.size());
  if (td.deterministic != sys.is_onto() || (!td.deterministic && !expected_witness)) {
    CheckReport f = make_report("ORACLE_TD", Verdict::Fail);
    f.note("map", join(sys.table())).note("deterministic", td.deterministic ? "yes" : "no");
    if (td.witness) f.note("witness", td.witness->str());
    tally.failures.push_back(std::move(f));
  }

  for (Point x = 0; x < sys.size(); ++x) {
    if (is_forward_recurrent(sys, x)) continue;
    ++tally.nonrecurrent_points;
    try {
      lemma6_relation(sys, x);
    } catch (const Error& e) {
      CheckReport f = make_report("ORACLE_LEMMA6", Verdict::Fail);
      f.note("map", join(sys.table())).note("x", x);
      tally.failures.push_back(std::move(f));
    }
  }

  const CheckReport l7 = lemma7_checks(sys, cfg.power_max);
  tally.decompositions += static_cast<std::int64_t>(sys.size()) * cfg.power_max;
  if (!l7.passed()) tally.failures.push_back(l7);
}

}  // namespace

std::vector<CheckReport> sweep(const SweepConfig& cfg) {
  if (cfg.nmax < 1) throw PreconditionError("nmax must be at least 1");
  if (cfg.power_max < 1) throw PreconditionError("Nmax must be at least 1");
  if (cfg.nmax > kDefaultExhaustiveBound) {
    throw ResourceCapError("oracle sweeps are limited to " + std::to_string(kDefaultExhaustiveBound) + " points");
  }
  std::vector<CheckReport> out;
  std::mt19937_64 rng(cfg.seed);

  for (int n = 1; n <= cfg.nmax; ++n) {
    SizeTally tally;
    const int bound = cfg.permutations_only ? cfg.permutations_bound : cfg.all_maps_bound;
    const bool sampled = n > bound;
    const auto visit = [&](const FiniteSystem& sys) {
      check_system(sys, cfg, tally);
      return true;
    };
    if (!sampled) {
      cfg.permutations_only ? for_each_permutation(n, visit) : for_each_map(n, visit);
    } else {
      std::uniform_int_distribution<Point> pick(0, n - 1);
      for (int s = 0; s < cfg.samples; ++s) {
        std::vector<Point> table(static_cast<std::size_t>(n));
        if (cfg.permutations_only) {
          std::iota(table.begin(), table.end(), 0);
          std::shuffle(table.begin(), table.end(), rng);
        } else {
          for (auto& v : table) v = pick(rng);
        }
        visit(FiniteSystem(std::move(table)));
      }
    }

    const std::string mode = cfg.permutations_only ? "permutations" : "all";
    const std::string onto = cfg.permutations_only ? "required" : "optional";
    const auto summary = [&](const char* id) {
      const auto failed = std::find_if(tally.failures.begin(), tally.failures.end(),
                                       [&](const CheckReport& f) { return f.id == id; });
      CheckReport r = failed == tally.failures.end() ? make_report(id, Verdict::Pass) : *failed;
      r.params.clear();
      r.param("n", n).param("maps", mode).param("onto", onto).param("sampling", sampled ? "seeded" : "exhaustive");
      if (sampled) r.param("seed", std::to_string(cfg.seed));
      r.note("systems", tally.systems);
      return r;
    };

    CheckReport td = summary("ORACLE_TD");
    td.note("deterministic", tally.deterministic);
    out.push_back(std::move(td));
    CheckReport l6 = summary("ORACLE_LEMMA6");
    l6.note("nonrecurrent_points", tally.nonrecurrent_points);
    out.push_back(std::move(l6));
    CheckReport l7 = summary("LEMMA7");
    l7.param("Nmax", cfg.power_max);
    l7.note("decompositions", tally.decompositions);
    out.push_back(std::move(l7));
  }
  sort_canonical(out);
  return out;
}

}  // namespace tdlab::oracle
