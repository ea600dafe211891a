#include "tdlab/product.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tdlab/error.hpp"

namespace tdlab::product {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw ResourceCapError("length arithmetic overflows 64 bits");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceCapError("length arithmetic overflows 64 bits");
  return out;
}

std::int64_t round_up(std::int64_t value, std::int64_t multiple) {
  return checked_mul((value + multiple - 1) / multiple, multiple);
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  return checked_mul(a / std::gcd(a, b), b);
}

void require_k(const Thm2State& state, int k) {
  if (k < 1 || k > state.defined_times()) {
    throw PreconditionError("k=" + std::to_string(k) + " outside [1, " + std::to_string(state.defined_times()) +
                            "] at stage " + std::to_string(state.stage));
  }
}

std::int64_t nonzero_span(const Block& b) {
  const auto nz = b.nonzero_positions();
  return nz.empty() ? 0 : nz.back() - nz.front() + 1;
}

// Appends the r copies scaled 1/(r+1) .. r/(r+1) with `gap` zeros after each.
void append_rising(BlockBuilder& out, const Block& core, int r, std::int64_t gap) {
  for (int j = 1; j <= r; ++j) {
    out.append_scaled(Symbol(j, r + 1), core);
    out.append_zeros(gap);
  }
}

// Appends the r copies scaled r/(r+1) .. 1/(r+1) with `gap` zeros before each.
void append_falling(BlockBuilder& out, const Block& core, int r, std::int64_t gap) {
  for (int j = r; j >= 1; --j) {
    out.append_zeros(gap);
    out.append_scaled(Symbol(j, r + 1), core);
  }
}

Block build_side(const Block& core, int r, std::int64_t inner, std::int64_t outer, std::int64_t length) {
  BlockBuilder out(length);
  out.append_zeros(outer);
  append_rising(out, core, r, inner);
  out.append(core);
  append_falling(out, core, r, inner);
  out.append_zeros(outer);
  return std::move(out).finish(-(length - 1) / 2);
}

// The previous stage must reappear unchanged at the center.
bool center_matches(const Block& outer, const Block& inner) {
  return window(outer, inner.base(), inner.last()) == inner;
}

CheckReport rigidity_report(const char* id, const Block& b, std::int64_t shift, int k) {
  const Rational bound(1, k);
  // Only pairs with a nonzero member can exceed the bound.
  for (const std::int64_t p : b.nonzero_positions()) {
    for (const std::int64_t i : {p - shift, p}) {
      const Symbol& lhs = b.value_or_zero(i);
      const Symbol& rhs = b.value_or_zero(i + shift);
      if (lhs == rhs) continue;
      Rational diff = abs_diff(lhs, rhs);
      if (diff > bound) {
        CheckReport r = make_report(id, Verdict::Fail);
        r.param("k", k);
        r.note("shift", shift).note("position", i).note("value", lhs.value()).note("shifted", rhs.value());
        r.note("diff", diff);
        return r;
      }
    }
  }
  CheckReport r = make_report(id, Verdict::Pass);
  r.param("k", k);
  r.note("shift", shift);
  return r;
}

CheckReport sparseness_report(const char* id, const Block& b, std::int64_t len, int k) {
  const auto phase = sparse_phase(b, len);
  CheckReport r = make_report(id, phase ? Verdict::Pass : Verdict::Fail);
  r.param("k", k);
  r.note("block", len);
  if (phase) {
    r.note("phase", *phase);
    return r;
  }
  // Witness: the first pair of nonzeros that collide under phase 0.
  const auto nz = b.nonzero_positions();
  for (std::size_t i = 1; i < nz.size(); ++i) {
    const std::int64_t gap = floor_div(nz[i], len) - floor_div(nz[i - 1], len);
    if (gap == 1 || gap == 2) {
      r.note("phase", 0).note("position", nz[i - 1]).note("next", nz[i]);
      break;
    }
  }
  return r;
}

// Consecutive nonzeros within 2*len can be placed in two different blocks of
// one sliding triple.
std::optional<std::pair<std::int64_t, std::int64_t>> sliding_witness(const Block& b, std::int64_t len) {
  const auto nz = b.nonzero_positions();
  for (std::size_t i = 1; i < nz.size(); ++i) {
    if (nz[i] - nz[i - 1] <= 2 * len) return std::make_pair(nz[i - 1], nz[i]);
  }
  return std::nullopt;
}

CheckReport transitive_report(const Thm2State& st, int k) {
  const std::int64_t m = st.m(k);
  const std::int64_t n = st.n(k);
  const Rational bound(1, k);
  for (const auto& [name, block] : {std::pair<const char*, const Block*>{"x", &st.x}, {"y", &st.y}}) {
    const Block& b = *block;
    for (const std::int64_t p : b.nonzero_positions()) {
      for (const std::int64_t i : {p - n, p - m, p}) {
        const Symbol& here = b.value_or_zero(i);
        const Rational dm = abs_diff(here, b.value_or_zero(i + m));
        if (dm <= bound) continue;
        const Rational dn = abs_diff(here, b.value_or_zero(i + n));
        if (dn <= bound) continue;
        CheckReport r = make_report("TRANSITIVE_RIGIDITY", Verdict::Fail);
        r.param("k", k);
        r.note("side", name).note("position", i).note("diff_m", dm).note("diff_n", dn);
        return r;
      }
    }
  }
  CheckReport r = make_report("TRANSITIVE_RIGIDITY", Verdict::Pass);
  r.param("k", k);
  r.note("m", m).note("n", n);
  return r;
}

}  // namespace

std::int64_t Thm2State::max_time() const noexcept {
  std::int64_t best = 0;
  for (const auto v : m_times) best = std::max(best, v);
  for (const auto v : n_times) best = std::max(best, v);
  return best;
}

Thm2State initial_state(bool transitive) {
  Thm2State s;
  s.stage = 1;
  s.x = Block(0, {Symbol::one()});
  s.y = Block(0, {Symbol::one()});
  s.transitive = transitive;
  return s;
}

Thm2State build_stage(const Thm2State& state, const SpacerChoice& c, std::int64_t max_length) {
  const int r = state.stage;
  if (c.s < 0 || c.t < 0 || c.s_prime < 0 || c.t_prime < 0) {
    throw PreconditionError("spacer lengths must be non-negative");
  }
  if (c.s_prime <= c.s) {
    throw PreconditionError("spacers need s' > s, got s=" + std::to_string(c.s) +
                            " s'=" + std::to_string(c.s_prime));
  }
  if (c.t != c.t_prime + r * (c.s_prime - c.s)) {
    throw PreconditionError("length identity t = t' + r(s' - s) violated: t=" + std::to_string(c.t) +
                            " t'=" + std::to_string(c.t_prime) + " s=" + std::to_string(c.s) +
                            " s'=" + std::to_string(c.s_prime) + " r=" + std::to_string(r));
  }
  if (state.transitive && !state.interleaved) {
    throw PreconditionError("transitive variant: interleave stage " + std::to_string(r) + " before building");
  }

  const std::int64_t len = state.length();
  const std::int64_t copies_len = checked_mul(2 * r + 1, len);
  const std::int64_t new_len =
      checked_add(checked_add(checked_mul(2, c.t), copies_len), checked_mul(2 * r, c.s));
  if (new_len > max_length) {
    throw ResourceCapError("stage " + std::to_string(r + 1) + " would hold " + std::to_string(new_len) +
                           " symbols, above the cap of " + std::to_string(max_length));
  }

  Thm2State next;
  next.stage = r + 1;
  next.x = build_side(state.x, r, c.s, c.t, new_len);
  next.y = build_side(state.y, r, c.s_prime, c.t_prime, new_len);
  next.m_times = state.m_times;
  next.n_times = state.n_times;
  next.m_times.push_back(len + c.s);
  next.n_times.push_back(len + c.s_prime);
  next.spacers = state.spacers;
  next.spacers.push_back(c);
  next.interleaves = state.interleaves;
  next.transitive = state.transitive;
  next.interleaved = false;

  if (next.y.length() != next.x.length() || !center_matches(next.x, state.x) ||
      !center_matches(next.y, state.y)) {
    throw Error("internal: stage " + std::to_string(r + 1) + " broke length equality or center consistency");
  }
  return next;
}

Thm2State build_transitive_stage(const Thm2State& state, const InterleaveChoice& c, std::int64_t max_length) {
  if (state.interleaved) throw PreconditionError("stage " + std::to_string(state.stage) + " is already interleaved");
  const std::int64_t bound = state.zero_tail_bound();
  for (const auto& [name, v] : {std::pair<const char*, std::int64_t>{"a", c.a}, {"b", c.b}, {"c", c.c}, {"d", c.d}}) {
    if (v < bound) {
      throw PreconditionError(std::string("|") + name + "|=" + std::to_string(v) + " below the zero-tail bound " +
                              std::to_string(bound));
    }
  }
  if (c.b + c.a != c.d + c.c) {
    throw PreconditionError("interleave lengths differ: |b|+|a|=" + std::to_string(c.b + c.a) +
                            " but |d|+|c|=" + std::to_string(c.d + c.c));
  }
  if (c.a == c.c) {
    throw PreconditionError("|a| = |c| = " + std::to_string(c.a) + " makes interleaved copies collide");
  }

  const std::int64_t len = state.length();
  const std::int64_t new_len = checked_add(checked_mul(2, c.b + c.a), checked_mul(3, len));
  if (new_len > max_length) {
    throw ResourceCapError("interleaved stage would hold " + std::to_string(new_len) +
                           " symbols, above the cap of " + std::to_string(max_length));
  }
  const std::int64_t base = -(new_len - 1) / 2;

  BlockBuilder xb(new_len);
  xb.append_zeros(c.b).append(state.y).append_zeros(c.a).append(state.x).append_zeros(c.a).append(state.y);
  xb.append_zeros(c.b);
  BlockBuilder yb(new_len);
  yb.append_zeros(c.d).append(state.x).append_zeros(c.c).append(state.y).append_zeros(c.c).append(state.x);
  yb.append_zeros(c.d);

  Thm2State next = state;
  next.x = std::move(xb).finish(base);
  next.y = std::move(yb).finish(base);
  next.interleaves.push_back(c);
  next.interleaved = true;

  const CheckReport orth = verify(next, Condition::V);
  if (!orth.passed()) {
    throw PreconditionError("interleave breaks orthogonality at position " + orth.field("position"));
  }
  return next;
}

InterleaveChoice default_interleave(const Thm2State& state) {
  const std::int64_t g = std::max<std::int64_t>(state.zero_tail_bound(), 1);
  InterleaveChoice c;
  c.a = g;
  c.c = g + state.length();
  c.d = g;
  c.b = state.length() + g;
  return c;
}

SpacerChoice solve_spacers(const Thm2State& state, const SolverConfig& config) {
  const int r = state.stage;
  const std::int64_t len = state.length();
  const std::int64_t x_span = nonzero_span(state.x);

  std::int64_t n_lcm = 1;
  for (const auto v : state.n_times) n_lcm = checked_lcm(n_lcm, v);

  // Lower bounds, doubled on verifier failures.
  std::int64_t s_min = std::max<std::int64_t>(2 * state.max_time(), 1);
  std::int64_t n_min = 0;
  std::int64_t tp_min = 0;

  std::string failing = condition_id(Condition::I);
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    const std::int64_t m = round_up(checked_add(len, s_min), n_lcm);
    std::int64_t m_lcm = m;
    for (const auto v : state.m_times) m_lcm = checked_lcm(m_lcm, v);

    std::int64_t need = std::max({m + 1, checked_add(checked_mul(r, m), len), n_min});
    if (!state.transitive) {
      need = std::max({need, checked_mul(3, m), checked_add(checked_mul(2 * r, m), x_span)});
    }
    const std::int64_t n = round_up(need, m_lcm);

    SpacerChoice c;
    c.s = m - len;
    c.s_prime = n - len;
    c.t_prime = std::max(checked_mul(2, n), tp_min);
    c.t = checked_add(c.t_prime, checked_mul(r, c.s_prime - c.s));

    const Thm2State next = build_stage(state, c, config.max_length);
    const auto reports = verify_stage(next, next.defined_times());
    const auto bad = std::find_if(reports.begin(), reports.end(), [](const CheckReport& rep) { return !rep.passed(); });
    if (bad == reports.end()) return c;

    failing = bad->id + (bad->field("k").empty() ? "" : "(k=" + bad->field("k") + ")");
    const int k = bad->field("k").empty() ? 0 : std::stoi(bad->field("k"));
    if (bad->id == "III" && k < r) {
      s_min = checked_mul(2, s_min);
    } else if (bad->id == "III" || bad->id == "IV" || bad->id == "V") {
      n_min = checked_mul(2, n);
    } else {
      tp_min = checked_mul(2, c.t_prime);
    }
  }
  throw ResourceCapError("spacer solver hit its iteration cap of " + std::to_string(config.max_iterations) +
                         " at stage " + std::to_string(r) + "; unsatisfied condition: " + failing);
}

Thm2State build(int r, bool transitive, const SolverConfig& config, std::vector<std::string>* log) {
  if (r < 1) throw PreconditionError("stage must be at least 1");
  Thm2State state = initial_state(transitive);
  while (state.stage < r) {
    if (transitive) {
      const InterleaveChoice ic = default_interleave(state);
      state = build_transitive_stage(state, ic, config.max_length);
      if (log) log->push_back(interleave_log_line(state.stage, ic));
    }
    const SpacerChoice sc = solve_spacers(state, config);
    if (log) log->push_back(spacer_log_line(state.stage, sc));
    state = build_stage(state, sc, config.max_length);
  }
  return state;
}

std::string spacer_log_line(int r, const SpacerChoice& c) {
  return "SPACERS r=" + std::to_string(r) + " s=" + std::to_string(c.s) + " t=" + std::to_string(c.t) +
         " sp=" + std::to_string(c.s_prime) + " tp=" + std::to_string(c.t_prime);
}

std::string interleave_log_line(int r, const InterleaveChoice& c) {
  return "INTERLEAVE r=" + std::to_string(r) + " a=" + std::to_string(c.a) + " b=" + std::to_string(c.b) +
         " c=" + std::to_string(c.c) + " d=" + std::to_string(c.d);
}

const char* condition_id(Condition c) noexcept {
  switch (c) {
    case Condition::I: return "I";
    case Condition::II: return "II";
    case Condition::III: return "III";
    case Condition::IV: return "IV";
    case Condition::V: return "V";
    case Condition::Z: return "Z";
    case Condition::SlidingFalsifier: return "SLIDING_FALSIFIER";
    case Condition::TransitiveRigidity: return "TRANSITIVE_RIGIDITY";
  }
  return "?";
}

CheckReport verify(const Thm2State& st, Condition condition, int k) {
  switch (condition) {
    case Condition::I:
      require_k(st, k);
      return rigidity_report("I", st.x, st.m(k), k);
    case Condition::II:
      require_k(st, k);
      return rigidity_report("II", st.y, st.n(k), k);
    case Condition::III:
      require_k(st, k);
      return sparseness_report("III", st.x, st.n(k), k);
    case Condition::IV:
      require_k(st, k);
      return sparseness_report("IV", st.y, st.m(k), k);
    case Condition::V: {
      const Symbol one = Symbol::one();
      CheckReport r = make_report("V", Verdict::Pass);
      if (!(st.x.value_or_zero(0) == one) || !(st.y.value_or_zero(0) == one)) {
        r.verdict = Verdict::Fail;
        r.note("position", 0).note("x", st.x.value_or_zero(0).value()).note("y", st.y.value_or_zero(0).value());
        return r;
      }
      const std::int64_t hw = st.half_width();
      for (std::int64_t p = -hw; p <= hw; ++p) {
        if (p == 0) continue;
        if (!st.x[p].is_zero() && !st.y[p].is_zero()) {
          r.verdict = Verdict::Fail;
          r.note("position", p).note("x", st.x[p].value()).note("y", st.y[p].value());
          return r;
        }
      }
      r.note("indices", st.length());
      return r;
    }
    case Condition::Z: {
      const std::int64_t bound = st.zero_tail_bound();
      const std::int64_t shortest =
          std::min({st.x.leading_zeros(), st.x.trailing_zeros(), st.y.leading_zeros(), st.y.trailing_zeros()});
      CheckReport r = make_report("Z", shortest >= bound ? Verdict::Pass : Verdict::Fail);
      r.note("bound", bound).note("shortest", shortest);
      return r;
    }
    case Condition::SlidingFalsifier: {
      require_k(st, k);
      CheckReport r = make_report("SLIDING_FALSIFIER", Verdict::Info);
      r.param("k", k);
      const auto wx = sliding_witness(st.x, st.n(k));
      const auto wy = sliding_witness(st.y, st.m(k));
      r.note("found", (wx || wy) ? "yes" : "no");
      if (wx) r.note("x_offset", wx->first - st.n(k) + 1).note("x_first", wx->first).note("x_second", wx->second);
      if (wy) r.note("y_offset", wy->first - st.m(k) + 1).note("y_first", wy->first).note("y_second", wy->second);
      return r;
    }
    case Condition::TransitiveRigidity:
      require_k(st, k);
      return transitive_report(st, k);
  }
  throw PreconditionError("unknown condition");
}

std::vector<CheckReport> verify_stage(const Thm2State& st, int kmax) {
  if (kmax < 0 || kmax > st.defined_times()) {
    throw PreconditionError("kmax=" + std::to_string(kmax) + " outside [0, " + std::to_string(st.defined_times()) +
                            "]");
  }
  std::vector<CheckReport> out;
  out.push_back(verify(st, Condition::V));
  out.push_back(verify(st, Condition::Z));
  for (int k = 1; k <= kmax; ++k) {
    if (st.transitive) {
      out.push_back(verify(st, Condition::TransitiveRigidity, k));
      continue;
    }
    for (const Condition c : {Condition::I, Condition::II, Condition::III, Condition::IV, Condition::SlidingFalsifier}) {
      out.push_back(verify(st, c, k));
    }
  }
  sort_canonical(out);
  return out;
}

std::optional<std::int64_t> sparse_phase(const Block& b, std::int64_t len) {
  if (len < 1) throw PreconditionError("block length must be positive");
  const auto nz = b.nonzero_positions();
  // Block membership changes only where a boundary passes a nonzero, i.e. at
  // phases c = p+1 mod len; the smallest valid phase is among these and 0.
  std::vector<std::int64_t> candidates{0};
  for (const std::int64_t p : nz) candidates.push_back(((p + 1) % len + len) % len);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const std::int64_t c : candidates) {
    bool ok = true;
    for (std::size_t i = 1; i < nz.size() && ok; ++i) {
      const std::int64_t gap = floor_div(nz[i] - c, len) - floor_div(nz[i - 1] - c, len);
      ok = gap == 0 || gap >= 3;
    }
    if (ok) return c;
  }
  return std::nullopt;
}

}  // namespace tdlab::product
