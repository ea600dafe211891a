#include "tdlab/recurrence.hpp"

#include <algorithm>
#include <string>

#include "tdlab/error.hpp"

namespace tdlab::recurrence {

using product::Thm2State;

WindowPoint::WindowPoint(const Block& source, std::int64_t origin, std::int64_t radius, Sidedness sidedness)
    : source_{&source}, origin_{origin}, radius_{radius}, sidedness_{sidedness} {
  if (radius < 0) throw PreconditionError("window radius must be non-negative");
}

WindowPoint WindowPoint::two_sided(const Block& source, std::int64_t shift, std::int64_t radius) {
  return WindowPoint(source, shift, radius, Sidedness::TwoSided);
}

WindowPoint WindowPoint::one_sided(const Block& source, std::int64_t shift, std::int64_t radius) {
  return WindowPoint(source, source.base() + shift, radius, Sidedness::OneSided);
}

WindowPoint WindowPoint::shifted(std::int64_t n) const {
  return WindowPoint(*source_, origin_ + n, radius_, sidedness_);
}

const Symbol& WindowPoint::at(std::int64_t i) const {
  if (i < first_coordinate() || i > radius_) {
    throw RangeError("coordinate " + std::to_string(i) + " outside the window [" +
                     std::to_string(first_coordinate()) + ", " + std::to_string(radius_) + "]");
  }
  return source_->at(origin_ + i);
}

void WindowPoint::require_in_range() const {
  at(first_coordinate());
  at(radius_);
}

Rational tail_bound(std::int64_t radius) { return pow2_neg(static_cast<int>(radius + 1)); }

namespace {

void require_compatible(const WindowPoint& p, const WindowPoint& q) {
  if (p.radius() != q.radius() || p.sidedness() != q.sidedness()) {
    throw PreconditionError("window points differ in radius or sidedness");
  }
}

// Largest weighted difference, stopping early once it reaches `stop`.
Rational weighted_distance(const WindowPoint& p, const WindowPoint& q, const std::vector<Rational>& weights,
                           const Rational* stop) {
  Rational best;
  for (std::int64_t i = p.first_coordinate(); i <= p.radius(); ++i) {
    const Symbol& a = p.source()[p.origin() + i];
    const Symbol& b = q.source()[q.origin() + i];
    if (a == b) continue;
    Rational d = weights[static_cast<std::size_t>(i < 0 ? -i : i)] * abs_diff(a, b);
    if (d > best) {
      best = std::move(d);
      if (stop && best >= *stop) break;
    }
  }
  return best;
}

std::vector<Rational> weights_for(std::int64_t radius) {
  std::vector<Rational> w;
  w.reserve(static_cast<std::size_t>(radius + 1));
  for (std::int64_t i = 0; i <= radius; ++i) w.push_back(pow2_neg(static_cast<int>(i)));
  return w;
}

}  // namespace

Rational window_distance(const WindowPoint& p, const WindowPoint& q) {
  require_compatible(p, q);
  p.require_in_range();
  q.require_in_range();
  return weighted_distance(p, q, weights_for(p.radius()), nullptr);
}

std::vector<std::int64_t> epsilon_recurrence_times(const WindowPoint& p, const Rational& eps, std::int64_t horizon) {
  return epsilon_recurrence_times(std::span<const WindowPoint>(&p, 1), eps, horizon);
}

std::vector<std::int64_t> epsilon_recurrence_times(std::span<const WindowPoint> components, const Rational& eps,
                                                   std::int64_t horizon) {
  if (components.empty()) throw PreconditionError("a point needs at least one component");
  if (horizon < 1) throw PreconditionError("horizon must be at least 1");
  for (const WindowPoint& c : components) {
    require_compatible(c, components.front());
    c.require_in_range();
    c.shifted(horizon).require_in_range();
  }
  const auto weights = weights_for(components.front().radius());
  std::vector<std::int64_t> times;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    bool close = true;
    for (const WindowPoint& c : components) {
      if (weighted_distance(c.shifted(n), c, weights, &eps) >= eps) {
        close = false;
        break;
      }
    }
    if (close) times.push_back(n);
  }
  return times;
}

CheckReport pair_separation_check(const Thm2State& st, std::int64_t horizon) {
  const std::int64_t hw = st.half_width();
  if (horizon < 1 || horizon > hw) {
    throw PreconditionError("horizon " + std::to_string(horizon) + " outside [1, " + std::to_string(hw) + "]");
  }
  CheckReport r = make_report("PAIR_SEPARATION", Verdict::Pass);
  r.param("horizon", horizon);
  const Symbol one = Symbol::one();
  if (!(st.x[0] == one) || !(st.y[0] == one)) {
    r.verdict = Verdict::Fail;
    r.note("n", 0).note("x", st.x[0].value()).note("y", st.y[0].value());
    return r;
  }
  for (std::int64_t n = 1; n <= horizon; ++n) {
    for (const std::int64_t p : {n, -n}) {
      if (!st.x[p].is_zero() && !st.y[p].is_zero()) {
        r.verdict = Verdict::Fail;
        r.note("n", p).note("x", st.x[p].value()).note("y", st.y[p].value());
        return r;
      }
    }
  }
  return r;
}

const char* to_string(EscapeSide side) noexcept { return side == EscapeSide::XatN ? "XatN" : "YatM"; }

namespace {

struct CenterRange {
  std::int64_t first;
  std::int64_t last;
};

CenterRange centers_for(const Thm2State& st, std::int64_t w, std::int64_t time) {
  const std::int64_t hw = st.half_width();
  const CenterRange range{-hw + w, hw - w - 3 * time};
  if (range.first > range.last) {
    throw PreconditionError("no center keeps window radius " + std::to_string(w) + " and shift 3*" +
                            std::to_string(time) + " inside [-" + std::to_string(hw) + ", " + std::to_string(hw) +
                            "]");
  }
  return range;
}

void require_escape_params(const Thm2State& st, int k, std::int64_t w) {
  if (k < 1 || k > st.defined_times()) {
    throw PreconditionError("k=" + std::to_string(k) + " outside [1, " + std::to_string(st.defined_times()) + "]");
  }
  if (w < 0) throw PreconditionError("window radius must be non-negative");
}

unsigned zero_mask(const Block& b, std::int64_t j, std::int64_t w, std::int64_t time) {
  unsigned mask = 0;
  for (int r = 1; r <= 3; ++r) {
    if (b.is_zero_on(j - w + r * time, j + w + r * time)) mask |= 1u << (r - 1);
  }
  return mask;
}

int lowest_r(unsigned mask) { return mask == 0 ? 0 : __builtin_ctz(mask) + 1; }

bool returns_within(const Block& b, std::int64_t j, std::int64_t w, std::int64_t shift, const Rational& bound) {
  for (std::int64_t i = j - w; i <= j + w; ++i) {
    const Symbol& a = b[i];
    const Symbol& c = b[i + shift];
    if (!(a == c) && abs_diff(a, c) > bound) return false;
  }
  return true;
}

// Smallest r with the sequence `returning` within bound after r*time and
// `vanishing` identically 0 there. Sets `part` to "b" when no r vanishes,
// "a" when some r vanishes but none returns.
int omega_r(const Block& returning, const Block& vanishing, std::int64_t j, std::int64_t w, std::int64_t time,
            const Rational& bound, const char*& part) {
  const unsigned mask = zero_mask(vanishing, j, w, time);
  if (mask == 0) {
    part = "b";
    return 0;
  }
  for (int r = 1; r <= 3; ++r) {
    if ((mask >> (r - 1) & 1u) && returns_within(returning, j, w, r * time, bound)) return r;
  }
  part = "a";
  return 0;
}

}  // namespace

EscapeResult escape_witness(const Thm2State& st, int k, std::int64_t w, EscapeSide side) {
  require_escape_params(st, k, w);
  const bool x_side = side == EscapeSide::XatN;
  const std::int64_t time = x_side ? st.n(k) : st.m(k);
  if (w >= time) {
    throw PreconditionError("window radius " + std::to_string(w) + " reaches the scale " + std::to_string(time));
  }
  const Block& target = x_side ? st.x : st.y;
  const CenterRange range = centers_for(st, w, time);

  EscapeResult out;
  out.choices.reserve(static_cast<std::size_t>(range.last - range.first + 1));
  std::int64_t counts[3] = {0, 0, 0};
  for (std::int64_t j = range.first; j <= range.last; ++j) {
    const unsigned mask = zero_mask(target, j, w, time);
    if (mask == 0) {
      out.report = make_report("ESCAPE", Verdict::Fail);
      out.report.param("side", to_string(side)).param("k", k).param("w", w);
      out.report.note("time", time).note("center", j);
      return out;
    }
    const int r = lowest_r(mask);
    ++counts[r - 1];
    out.choices.push_back({j, r, mask});
  }
  out.report = make_report("ESCAPE", Verdict::Pass);
  out.report.param("side", to_string(side)).param("k", k).param("w", w);
  out.report.note("time", time).note("centers", static_cast<std::int64_t>(out.choices.size()));
  out.report.note("r1", counts[0]).note("r2", counts[1]).note("r3", counts[2]);
  return out;
}

OmegaResult cross_omega_witness(const Thm2State& st, int k, std::int64_t w) {
  require_escape_params(st, k, w);
  const std::int64_t m = st.m(k);
  const std::int64_t n = st.n(k);
  if (w >= std::min(m, n)) {
    throw PreconditionError("window radius " + std::to_string(w) + " reaches the scale " +
                            std::to_string(std::min(m, n)));
  }
  const CenterRange range = centers_for(st, w, std::max(m, n));
  const Rational bound(3, k);

  OmegaResult out;
  out.choices.reserve(static_cast<std::size_t>(range.last - range.first + 1));
  for (std::int64_t j = range.first; j <= range.last; ++j) {
    const char* part = "";
    const int rx = omega_r(st.x, st.y, j, w, m, bound, part);
    const int ry = rx == 0 ? 0 : omega_r(st.y, st.x, j, w, n, bound, part);
    if (rx == 0 || ry == 0) {
      out.report = make_report("CROSS_OMEGA", Verdict::Fail);
      out.report.param("k", k).param("w", w);
      out.report.note("center", j).note("side", rx == 0 ? "x" : "y").note("part", part);
      return out;
    }
    out.choices.push_back({j, rx, ry});
  }
  out.report = make_report("CROSS_OMEGA", Verdict::Pass);
  out.report.param("k", k).param("w", w);
  out.report.note("m", m).note("n", n).note("centers", static_cast<std::int64_t>(out.choices.size()));
  return out;
}

std::string witness_line(const std::string& kind, int k, std::int64_t center, int r) {
  return "WITNESS kind=" + kind + " k=" + std::to_string(k) + " center=" + std::to_string(center) +
         " r=" + std::to_string(r);
}

}  // namespace tdlab::recurrence
