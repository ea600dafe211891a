#include "tdlab/report.hpp"

#include <algorithm>
#include <charconv>

#include "tdlab/error.hpp"

namespace tdlab {

namespace {

std::string checked_value(std::string value) {
  if (value.empty() || value.find_first_of(" \t\n") != std::string::npos) {
    throw DomainError("report values must be non-empty and free of whitespace: '" + value + "'");
  }
  return value;
}

bool as_integer(const std::string& s, std::int64_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

int compare_values(const std::string& a, const std::string& b) {
  std::int64_t ia = 0, ib = 0;
  if (as_integer(a, ia) && as_integer(b, ib)) return (ia > ib) - (ia < ib);
  return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Info: return "INFO";
  }
  return "?";
}

CheckReport& CheckReport::param(std::string key, std::string value) {
  params.emplace_back(std::move(key), checked_value(std::move(value)));
  return *this;
}
CheckReport& CheckReport::param(std::string key, std::int64_t value) {
  return param(std::move(key), std::to_string(value));
}
CheckReport& CheckReport::param(std::string key, const Rational& value) { return param(std::move(key), value.str()); }

CheckReport& CheckReport::note(std::string key, std::string value) {
  witness.emplace_back(std::move(key), checked_value(std::move(value)));
  return *this;
}
CheckReport& CheckReport::note(std::string key, std::int64_t value) {
  return note(std::move(key), std::to_string(value));
}
CheckReport& CheckReport::note(std::string key, const Rational& value) { return note(std::move(key), value.str()); }

std::string CheckReport::field(const std::string& key) const {
  for (const auto* list : {&params, &witness}) {
    for (const auto& [k, v] : *list) {
      if (k == key) return v;
    }
  }
  return {};
}

std::string CheckReport::line() const {
  std::string out = "CHECK " + id + " " + to_string(verdict);
  for (const auto* list : {&params, &witness}) {
    for (const auto& [k, v] : *list) out += " " + k + "=" + v;
  }
  return out;
}

CheckReport make_report(std::string id, Verdict verdict) {
  CheckReport r;
  r.id = std::move(id);
  r.verdict = verdict;
  return r;
}

bool canonical_less(const CheckReport& a, const CheckReport& b) {
  if (a.id != b.id) return a.id < b.id;
  const std::size_t n = std::min(a.params.size(), b.params.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.params[i].first != b.params[i].first) return a.params[i].first < b.params[i].first;
    const int c = compare_values(a.params[i].second, b.params[i].second);
    if (c != 0) return c < 0;
  }
  return a.params.size() < b.params.size();
}

void sort_canonical(std::vector<CheckReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), canonical_less);
}

}  // namespace tdlab
