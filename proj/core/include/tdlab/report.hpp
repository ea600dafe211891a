#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tdlab/rational.hpp"

namespace tdlab {

enum class Verdict { Pass, Fail, Info };

const char* to_string(Verdict v) noexcept;

/// Outcome of one verified condition, rendered as a single report line:
///
///     CHECK <id> <PASS|FAIL|INFO> key=value ...
///
/// Parameters come first, then witness fields. Values never contain spaces.
struct CheckReport {
  using Field = std::pair<std::string, std::string>;

  std::string id;
  Verdict verdict = Verdict::Pass;
  std::vector<Field> params;
  std::vector<Field> witness;

  bool passed() const noexcept { return verdict != Verdict::Fail; }

  CheckReport& param(std::string key, std::string value);
  CheckReport& param(std::string key, std::int64_t value);
  CheckReport& param(std::string key, const Rational& value);
  CheckReport& note(std::string key, std::string value);
  CheckReport& note(std::string key, std::int64_t value);
  CheckReport& note(std::string key, const Rational& value);

  /// Looks up a parameter or witness field; empty string when absent.
  std::string field(const std::string& key) const;

  std::string line() const;
};

CheckReport make_report(std::string id, Verdict verdict);

/// Canonical emission order: by id, then by parameters (integers compared
/// numerically).
bool canonical_less(const CheckReport& a, const CheckReport& b);
void sort_canonical(std::vector<CheckReport>& reports);

}  // namespace tdlab
