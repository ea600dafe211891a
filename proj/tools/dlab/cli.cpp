#include "dlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "tdlab/error.hpp"
#include "tdlab/finite_oracle.hpp"
#include "tdlab/inverse.hpp"
#include "tdlab/product.hpp"
#include "tdlab/recurrence.hpp"
#include "tdlab/tdseq.hpp"

namespace dlab {

namespace {

using tdlab::CheckReport;

struct Limits {
  std::int64_t max_length = 100'000'000;
  int max_iterations = 32;
};

struct Options {
  Limits limits;

  int stage = 0;
  int kmax = 0;
  std::optional<int> jmax;
  std::optional<int> c1_kmax;
  bool transitive = false;
  std::string out;
  std::string out_x;
  std::string out_y;

  std::optional<std::int64_t> horizon;
  int k = 0;
  std::int64_t w = 0;
  std::string side = "both";
  std::string witness_out;

  int nmax = 0;
  int power_max = 4;
  bool permutations_only = false;
  int samples = 200;
  std::uint64_t seed = 1;
  std::string map;
  int point = 0;
};

int emit(std::vector<CheckReport> reports, std::ostream& out) {
  tdlab::sort_canonical(reports);
  bool failed = false;
  for (const auto& r : reports) {
    out << r.line() << '\n';
    failed = failed || !r.passed();
  }
  out.flush();
  return failed ? kAnyFail : kAllPass;
}

tdlab::product::SolverConfig solver_config(const Limits& limits) {
  return {limits.max_iterations, limits.max_length};
}

tdlab::product::Thm2State build_thm2(const Options& o, std::vector<std::string>* log = nullptr) {
  return tdlab::product::build(o.stage, o.transitive, solver_config(o.limits), log);
}

int thm1_build(const Options& o, std::ostream& out) {
  const auto state = tdlab::inverse::build(o.stage, o.limits.max_length);
  tdlab::save_tdseq(o.out, state.prefix);
  CheckReport r = tdlab::make_report("THM1_BUILD", tdlab::Verdict::Info);
  r.param("stage", o.stage).note("length", state.prefix.length());
  return emit({r}, out);
}

int thm1_verify(const Options& o, std::ostream& out) {
  using namespace tdlab::inverse;
  const auto state = build(o.stage, o.limits.max_length);
  const int jmax = o.jmax.value_or(o.kmax);
  std::vector<CheckReport> reports;
  reports.push_back(verify(state, Condition::C1, o.c1_kmax.value_or(o.kmax)));
  reports.push_back(verify(state, Condition::C3, o.kmax));
  reports.push_back(verify(state, Condition::C2Prime, jmax));
  reports.push_back(verify(state, Condition::Tails));
  for (int k = 1; k <= std::max(jmax, 3); ++k) reports.push_back(literal_smallness_report(state.prefix, k));
  return emit(std::move(reports), out);
}

int thm2_build(const Options& o, std::ostream& out) {
  std::vector<std::string> log;
  const auto state = build_thm2(o, &log);
  tdlab::save_tdseq(o.out_x, state.x);
  tdlab::save_tdseq(o.out_y, state.y);
  for (const auto& line : log) out << line << '\n';
  CheckReport r = tdlab::make_report("THM2_BUILD", tdlab::Verdict::Info);
  r.param("stage", o.stage).param("transitive", o.transitive ? "yes" : "no");
  r.note("length", state.length());
  return emit({r}, out);
}

int thm2_verify(const Options& o, std::ostream& out) {
  return emit(tdlab::product::verify_stage(build_thm2(o), o.kmax), out);
}

class WitnessFile {
 public:
  explicit WitnessFile(const std::string& path) : path_(path) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw tdlab::Error("cannot open '" + path + "' for writing");
  }

  bool enabled() const { return file_.is_open(); }
  void write(const std::string& line) { file_ << line << '\n'; }
  void close() {
    if (!enabled()) return;
    file_.close();
    if (!file_) throw tdlab::Error("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

int recur_pair_sep(const Options& o, std::ostream& out) {
  const auto state = build_thm2(o);
  return emit({tdlab::recurrence::pair_separation_check(state, o.horizon.value_or(state.half_width()))}, out);
}

int recur_escape(const Options& o, std::ostream& out) {
  using namespace tdlab::recurrence;
  const auto state = build_thm2(o);
  std::vector<EscapeSide> sides;
  if (o.side != "y") sides.push_back(EscapeSide::XatN);
  if (o.side != "x") sides.push_back(EscapeSide::YatM);
  std::vector<CheckReport> reports;
  WitnessFile witnesses(o.witness_out);
  for (const EscapeSide side : sides) {
    auto result = escape_witness(state, o.k, o.w, side);
    if (witnesses.enabled()) {
      const std::string kind = std::string("escape_") + to_string(side);
      for (const auto& c : result.choices) witnesses.write(witness_line(kind, o.k, c.center, c.r));
    }
    reports.push_back(std::move(result.report));
  }
  witnesses.close();
  return emit(std::move(reports), out);
}

int recur_omega(const Options& o, std::ostream& out) {
  using namespace tdlab::recurrence;
  const auto state = build_thm2(o);
  WitnessFile witnesses(o.witness_out);
  auto result = cross_omega_witness(state, o.k, o.w);
  if (witnesses.enabled()) {
    for (const auto& c : result.choices) {
      witnesses.write(witness_line("omega_x", o.k, c.center, c.r_x));
      witnesses.write(witness_line("omega_y", o.k, c.center, c.r_y));
    }
  }
  witnesses.close();
  return emit({std::move(result.report)}, out);
}

int oracle_sweep(const Options& o, std::ostream& out) {
  tdlab::oracle::SweepConfig cfg;
  cfg.nmax = o.nmax;
  cfg.power_max = o.power_max;
  cfg.permutations_only = o.permutations_only;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  return emit(tdlab::oracle::sweep(cfg), out);
}

std::string join_points(const std::vector<int>& points) {
  std::string s;
  for (const int p : points) s += (s.empty() ? "" : ",") + std::to_string(p);
  return s;
}

int oracle_lemma6(const Options& o, std::ostream& out) {
  using namespace tdlab::oracle;
  const auto sys = FiniteSystem::parse(o.map);
  const auto result = lemma6_relation(sys, o.point);
  CheckReport r = tdlab::make_report("ORACLE_LEMMA6", tdlab::Verdict::Pass);
  r.param("map", o.map).param("x", o.point).param("onto", sys.is_onto() ? "yes" : "no");
  r.note("orbit_set", join_points(result.orbit_set)).note("relation", result.relation.str());
  r.note("class", to_string(result.classification));
  return emit({r}, out);
}

void add_limits(CLI::App* cmd, Limits& limits) {
  cmd->add_option("--max-length", limits.max_length, "Refuse blocks longer than this")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iterations", limits.max_iterations, "Spacer solver iteration cap")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Builds and verifies the inverse and product constructions", "dlab"};
  app.require_subcommand(1);
  std::function<int(std::ostream&)> action;
  const auto bind = [&action](CLI::App* cmd, int (*fn)(const Options&, std::ostream&), const Options& opts) {
    cmd->callback([&action, fn, &opts] { action = [fn, &opts](std::ostream& s) { return fn(opts, s); }; });
  };

  auto* thm1 = app.add_subcommand("thm1", "Inverse-limit counterexample");
  thm1->require_subcommand(1);
  auto* t1b = thm1->add_subcommand("build", "Write stage M as TDSEQ");
  t1b->add_option("--stage", o.stage)->required()->check(CLI::PositiveNumber);
  t1b->add_option("--out", o.out)->required();
  add_limits(t1b, o.limits);
  bind(t1b, thm1_build, o);
  auto* t1v = thm1->add_subcommand("verify", "Check C1, C3, C2PRIME and TAILS on stage M");
  t1v->add_option("--stage", o.stage)->required()->check(CLI::Range(2, 64));
  t1v->add_option("--kmax", o.kmax)->required()->check(CLI::PositiveNumber);
  t1v->add_option("--jmax", o.jmax, "Defaults to kmax")->check(CLI::PositiveNumber);
  t1v->add_option("--c1-kmax", o.c1_kmax, "Zero-run bound, defaults to kmax")->check(CLI::PositiveNumber);
  add_limits(t1v, o.limits);
  bind(t1v, thm1_verify, o);

  auto* thm2 = app.add_subcommand("thm2", "Product counterexample");
  thm2->require_subcommand(1);
  auto* t2b = thm2->add_subcommand("build", "Write x and y of stage R as TDSEQ");
  t2b->add_option("--stage", o.stage)->required()->check(CLI::PositiveNumber);
  t2b->add_flag("--transitive", o.transitive);
  t2b->add_option("--out-x", o.out_x)->required();
  t2b->add_option("--out-y", o.out_y)->required();
  add_limits(t2b, o.limits);
  bind(t2b, thm2_build, o);
  auto* t2v = thm2->add_subcommand("verify", "Run every stage verifier for k <= kmax");
  t2v->add_option("--stage", o.stage)->required()->check(CLI::Range(2, 64));
  t2v->add_option("--kmax", o.kmax)->required()->check(CLI::PositiveNumber);
  t2v->add_flag("--transitive", o.transitive);
  add_limits(t2v, o.limits);
  bind(t2v, thm2_verify, o);

  auto* recur = app.add_subcommand("recur", "Recurrence checks on the product construction");
  recur->require_subcommand(1);
  auto* pair = recur->add_subcommand("pair-sep", "Check that the pair never returns");
  pair->add_option("--stage", o.stage)->required()->check(CLI::Range(2, 64));
  pair->add_option("--horizon", o.horizon, "Defaults to the half width")->check(CLI::PositiveNumber);
  add_limits(pair, o.limits);
  bind(pair, recur_pair_sep, o);
  auto* escape = recur->add_subcommand("escape", "Zero-window escape witnesses");
  escape->add_option("--stage", o.stage)->required()->check(CLI::Range(2, 64));
  escape->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
  escape->add_option("--w", o.w)->required()->check(CLI::NonNegativeNumber);
  escape->add_option("--side", o.side)->check(CLI::IsMember({"x", "y", "both"}));
  escape->add_option("--witness-out", o.witness_out);
  add_limits(escape, o.limits);
  bind(escape, recur_escape, o);
  auto* omega = recur->add_subcommand("omega", "Cross omega-limit witnesses");
  omega->add_option("--stage", o.stage)->required()->check(CLI::Range(2, 64));
  omega->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
  omega->add_option("--w", o.w)->required()->check(CLI::NonNegativeNumber);
  omega->add_option("--witness-out", o.witness_out);
  add_limits(omega, o.limits);
  bind(omega, recur_omega, o);

  auto* oracle = app.add_subcommand("oracle", "Finite-system ground truth");
  oracle->require_subcommand(1);
  auto* sweep = oracle->add_subcommand("sweep", "Exhaustive checks on every system up to nmax points");
  sweep->add_option("--nmax", o.nmax)->required()->check(CLI::Range(1, tdlab::oracle::kDefaultExhaustiveBound));
  sweep->add_flag("--permutations-only", o.permutations_only);
  sweep->add_option("--Nmax", o.power_max, "Largest power checked")->check(CLI::PositiveNumber);
  sweep->add_option("--samples", o.samples, "Draws per size above the exhaustive bounds")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", o.seed);
  bind(sweep, oracle_sweep, o);
  auto* lemma6 = oracle->add_subcommand("lemma6", "Collapse the forward orbit of a non-recurrent point");
  lemma6->add_option("--map", o.map)->required();
  lemma6->add_option("--point", o.point)->required()->check(CLI::NonNegativeNumber);
  bind(lemma6, oracle_lemma6, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAllPass : kConfigError;
  }

  try {
    return action(out);
  } catch (const tdlab::Error& e) {
    out.flush();
    err << "dlab: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace dlab
