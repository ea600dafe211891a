#include "tdlab/inverse.hpp"

#include <deque>
#include <string>

#include "tdlab/error.hpp"

namespace tdlab::inverse {

namespace {

std::string join_symbols(std::span<const Symbol> symbols) {
  std::string out;
  for (const Symbol& s : symbols) {
    if (!out.empty()) out += ',';
    out += s.value().denominator_str() == "1" ? s.value().numerator_str() : s.str();
  }
  return out;
}

void require_times(std::span<const std::int64_t> times, int bound, const char* what) {
  if (bound < 1) throw PreconditionError(std::string(what) + " must be at least 1");
  if (static_cast<std::size_t>(bound) > times.size()) {
    throw PreconditionError(std::string(what) + "=" + std::to_string(bound) + " exceeds the " +
                            std::to_string(times.size()) + " defined times");
  }
}

}  // namespace

Thm1State initial_state() {
  Thm1State s;
  s.stage = 1;
  s.lengths = {3};
  s.prefix = Block(1, {Symbol::one(), Symbol::zero(), Symbol::zero()});
  return s;
}

std::int64_t next_length(const Thm1State& state) {
  const std::int64_t copies = state.stage + 3;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(state.prefix.length(), copies, &out)) {
    throw ResourceCapError("stage " + std::to_string(state.stage + 1) + " length overflows 64 bits");
  }
  return out;
}

Thm1State step(const Thm1State& state, std::int64_t max_length) {
  const int m = state.stage;
  const std::int64_t predicted = next_length(state);
  if (predicted > max_length) {
    throw ResourceCapError("stage " + std::to_string(m + 1) + " would hold " + std::to_string(predicted) +
                           " symbols, above the cap of " + std::to_string(max_length));
  }

  BlockBuilder builder(predicted);
  builder.append(state.prefix).append(state.prefix);
  for (int r = m; r >= 0; --r) builder.append_scaled(Symbol(r, m + 1), state.prefix);

  Thm1State next;
  next.stage = m + 1;
  next.prefix = std::move(builder).finish(1);
  next.lengths = state.lengths;
  next.lengths.push_back(next.prefix.length());
  if (next.prefix.length() != predicted) {
    throw Error("internal: measured length " + std::to_string(next.prefix.length()) + " differs from " +
                std::to_string(predicted));
  }
  return next;
}

Thm1State build(int m, std::int64_t max_length) {
  if (m < 1) throw PreconditionError("stage must be at least 1");
  Thm1State s = initial_state();
  while (s.stage < m) s = step(s, max_length);
  return s;
}

const char* condition_id(Condition c) noexcept {
  switch (c) {
    case Condition::C1: return "C1";
    case Condition::C3: return "C3";
    case Condition::C2Prime: return "C2PRIME";
    case Condition::Tails: return "TAILS";
  }
  return "?";
}

CheckReport verify(const Thm1State& state, Condition condition, int bound) {
  const std::span<const std::int64_t> times(state.lengths);
  switch (condition) {
    case Condition::C1:
      return verify_zero_runs(state.prefix, bound);
    case Condition::C3:
      require_times(times.first(static_cast<std::size_t>(state.stage - 1)), bound, "kmax");
      return verify_rigidity(state.prefix, times, bound);
    case Condition::C2Prime:
      require_times(times.first(static_cast<std::size_t>(state.stage - 1)), bound, "jmax");
      return verify_smallness(state.prefix, times, bound);
    case Condition::Tails:
      return verify_tails(state.prefix, state.stage + 1);
  }
  throw PreconditionError("unknown condition");
}

CheckReport verify_zero_runs(const Block& x, int kmax) {
  if (kmax < 1) throw PreconditionError("kmax must be at least 1");
  std::int64_t best = -1;
  std::int64_t best_start = 0;
  std::int64_t run = 0;
  const Symbol one = Symbol::one();
  for (std::int64_t i = x.base(); i <= x.last(); ++i) {
    const Symbol& s = x[i];
    if (s.is_zero()) {
      ++run;
      continue;
    }
    if (s == one && run > best) {
      best = run;
      best_start = i - run;
    }
    run = 0;
  }
  const bool pass = best >= kmax;
  CheckReport r = make_report("C1", pass ? Verdict::Pass : Verdict::Fail);
  r.param("kmax", kmax);
  r.note("max_run", best < 0 ? 0 : best);
  if (best >= 0) r.note("position", best_start);
  return r;
}

CheckReport verify_rigidity(const Block& x, std::span<const std::int64_t> times, int kmax) {
  require_times(times, kmax, "kmax");
  std::int64_t windows = 0;
  for (int k = 1; k <= kmax; ++k) {
    const std::int64_t shift = times[static_cast<std::size_t>(k - 1)];
    const std::int64_t last_start = x.last() - shift - (k - 1);
    const Rational bound(1, k);
    std::int64_t next = x.base();
    for (const std::int64_t p : x.nonzero_positions()) {
      // Windows [i, i+k-1] containing p start in [p-k+1, p].
      std::int64_t i = std::max(next, p - k + 1);
      const std::int64_t stop = std::min(p, last_start);
      for (; i <= stop; ++i) {
        ++windows;
        for (std::int64_t d = 0; d < k; ++d) {
          const Symbol& a = x[i + d];
          const Symbol& b = x[i + shift + d];
          if (a == b) continue;
          Rational diff = abs_diff(a, b);
          if (!(diff < bound)) {
            CheckReport r = make_report("C3", Verdict::Fail);
            r.param("kmax", kmax);
            r.note("k", k).note("shift", shift).note("position", i + d);
            r.note("value", a.value()).note("shifted", b.value()).note("diff", diff);
            return r;
          }
        }
      }
      next = std::max(next, p + 1);
      if (next > last_start) break;
    }
  }
  CheckReport r = make_report("C3", Verdict::Pass);
  r.param("kmax", kmax);
  r.note("windows", windows);
  return r;
}

CheckReport verify_smallness(const Block& x, std::span<const std::int64_t> times, int jmax) {
  require_times(times, jmax, "jmax");
  const auto nz = x.nonzero_positions();
  std::int64_t checked = 0;
  std::int64_t tight = 0;
  std::optional<std::pair<int, std::int64_t>> first_tight;

  for (int j = 1; j <= jmax; ++j) {
    const std::int64_t span = times[static_cast<std::size_t>(j - 1)];
    const Rational slack(1, j + 1);
    // Sliding maximum over the nonzeros in (i, i+span]; both ends only move
    // right because candidates i are visited in increasing order.
    std::deque<std::size_t> window;
    std::size_t pushed = 0;
    for (std::size_t idx = 0; idx < nz.size(); ++idx) {
      const std::int64_t i = nz[idx];
      if (i + span > x.last()) break;
      const Symbol& a = x[i];
      if (a.value() < slack) continue;  // eps >= 0 settles these
      while (pushed < nz.size() && nz[pushed] <= i + span) {
        while (!window.empty() && x[nz[window.back()]] <= x[nz[pushed]]) window.pop_back();
        window.push_back(pushed++);
      }
      while (!window.empty() && nz[window.front()] <= i) window.pop_front();
      const Rational eps = window.empty() ? Rational{} : x[nz[window.front()]].value();
      const Rational limit = eps + slack;
      ++checked;
      const auto cmp = a.value() <=> limit;
      if (cmp > 0) {
        CheckReport r = make_report("C2PRIME", Verdict::Fail);
        r.param("jmax", jmax);
        r.note("j", j).note("position", i).note("value", a.value()).note("eps", eps);
        return r;
      }
      if (cmp == 0) {
        ++tight;
        if (!first_tight) first_tight = {j, i};
      }
    }
  }
  CheckReport r = make_report("C2PRIME", Verdict::Pass);
  r.param("jmax", jmax);
  r.note("checked", checked).note("tight", tight);
  if (first_tight) r.note("tight_j", first_tight->first).note("tight_position", first_tight->second);
  return r;
}

CheckReport verify_tails(const Block& x, int count) {
  if (count < 1 || count > x.length()) {
    throw PreconditionError("tail length " + std::to_string(count) + " outside [1, " +
                            std::to_string(x.length()) + "]");
  }
  const std::int64_t from = x.last() - count + 1;
  const bool pass = x.is_zero_on(from, x.last());
  CheckReport r = make_report("TAILS", pass ? Verdict::Pass : Verdict::Fail);
  r.param("count", count);
  if (!pass) {
    const auto nz = x.nonzero_positions();
    const std::int64_t p = *std::lower_bound(nz.begin(), nz.end(), from);
    r.note("position", p).note("value", x[p].value());
  }
  return r;
}

std::optional<LiteralSmallnessWitness> falsify_literal_smallness(const Block& x, int k) {
  if (k < 1) throw PreconditionError("k must be at least 1");
  const Rational slack(1, k);
  // Window a b_1 ... b_{k+1} occupies positions i .. i+k+1.
  for (const std::int64_t i : x.nonzero_positions()) {
    if (i + k + 1 > x.last()) break;
    if (x[i].value() <= slack) continue;
    Rational eps;
    for (std::int64_t d = 1; d <= k; ++d) {
      if (x[i + d].value() > eps) eps = x[i + d].value();
    }
    if (x[i].value() > eps + slack) {
      LiteralSmallnessWitness w;
      w.k = k;
      w.position = i;
      w.epsilon = eps;
      const auto first = x.symbols().begin() + (i - x.base());
      w.window.assign(first, first + k + 2);
      return w;
    }
  }
  return std::nullopt;
}

CheckReport literal_smallness_report(const Block& x, int k) {
  const auto w = falsify_literal_smallness(x, k);
  CheckReport r = make_report("C2_LITERAL_FALSIFIER", Verdict::Info);
  r.param("k", k);
  if (!w) {
    r.note("found", "no");
    return r;
  }
  r.note("found", "yes").note("position", w->position).note("eps", w->epsilon);
  r.note("window", join_symbols(w->window));
  return r;
}

}  // namespace tdlab::inverse
