#include "ladderlab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <limits>

#include <json.hpp>

#include "ladderlab/errors.hpp"
#include "ladderlab/fd_oracle.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/operator_chain.hpp"

namespace ladderlab {

using Vec = std::vector<double>;

const char* to_string(Metric m) {
  switch (m) {
    case Metric::relative_residual: return "relative_residual";
    case Metric::absolute_residual: return "absolute_residual";
    case Metric::relative_error: return "relative_error";
    case Metric::absolute_error: return "absolute_error";
    case Metric::overlap: return "overlap";
    case Metric::exact: return "exact";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::passed: return "passed";
    case Status::failed: return "failed";
    case Status::errored: return "errored";
    case Status::skipped: return "skipped";
  }
  return "?";
}

bool within(Metric metric, double value, double threshold) {
  if (!std::isfinite(value)) return false;
  if (metric == Metric::overlap) return value >= threshold;
  return value <= threshold;
}

Thresholds::Thresholds()
    : values_{{"absolute_floor", 1e-10},
              {"annihilation", 1e-5},
              {"coefficient_overlap", 0.999},
              {"commutator", 1e-5},
              {"commutator_dilation", 1e-4},
              {"eigen_residual", 1e-4},
              {"eigenstate_overlap", 0.9999},
              {"factorization", 1e-5},
              {"hermiticity", 1e-6},
              {"intertwining", 1e-5},
              {"ladder_coefficient", 1e-3},
              {"ladder_overlap", 0.9999},
              {"ladder_overlap_half_step", 0.999},
              {"path_independence", 0.99999},
              {"quadratic", 1e-5},
              {"refined_identity", 1e-5},
              {"refined_identity_dilation", 1e-4},
              {"spectrum_absolute", 1e-4},
              {"spectrum_coulomb_l0", 5e-3},
              {"spectrum_relative", 1e-4}} {}

double Thresholds::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw usage_error("unknown threshold '" + name + "'");
  return it->second;
}

void Thresholds::set(const std::string& name, double value) {
  auto it = values_.find(name);
  if (it == values_.end()) throw usage_error("unknown threshold '" + name + "'");
  if (!std::isfinite(value) || value < 0.0) throw usage_error("threshold '" + name + "' must be a non-negative number");
  it->second = value;
}

void Thresholds::set_from_string(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw usage_error("threshold must look like name=value, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) throw usage_error("bad threshold value '" + text + "'");
  set(name, v);
}

const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> groups = {
      "spectrum",  "refined_identity", "intertwining", "factorization", "commutators", "ladder",
      "quadratic", "ladder_coefficient", "annihilation", "eigenstates",   "hermiticity"};
  return groups;
}

bool SuiteConfig::is_default() const {
  return models == std::vector<std::string>{"oscillator", "morse", "coulomb"} && checks.empty() && grids.empty();
}

Summary summarize(const std::vector<CheckResult>& checks) {
  Summary s;
  s.total = checks.size();
  for (const auto& c : checks) {
    switch (c.status) {
      case Status::passed: ++s.passed; break;
      case Status::failed: ++s.failed; break;
      case Status::errored: ++s.errored; break;
      case Status::skipped: ++s.skipped; break;
    }
  }
  return s;
}

namespace {

struct Window2 {
  double lo;
  double hi;
  double sigma;
};

Window2 test_layout(const HierarchyModel& model, const Grid& grid) {
  const Window w = interior_window(grid);
  double lo = grid.x(w.begin);
  double hi = grid.x(w.end - 1);
  // Morse: bumps in the well. Coulomb: dilated images stay on the grid.
  Window2 fixed{0.0, 0.0, 0.0};
  if (model.family() == Family::morse) fixed = {1.0 / model.alpha(), 4.0 / model.alpha(), 1.0 / model.alpha()};
  if (model.family() == Family::coulomb) fixed = {5.0, 20.0, 3.0};
  if (fixed.sigma > 0.0 && fixed.lo >= lo && fixed.hi <= hi) return fixed;
  if (model.family() == Family::coulomb) hi = 0.5 * hi;
  return {lo, hi, (hi - lo) / 12.0};
}

}  // namespace

std::vector<Wavefunction> test_functions(const HierarchyModel& model, const Grid& grid) {
  const Window2 lay = test_layout(model, grid);
  const double sigma = std::max(lay.sigma, 10.0 * grid.spacing());
  const bool radial = grid.kind() == DomainKind::half_line;
  std::vector<Wavefunction> out;
  for (double pos : {0.35, 0.5, 0.65}) {
    const double c = lay.lo + pos * (lay.hi - lay.lo);
    out.push_back(Wavefunction::sample(grid, [&](double x) {
      const double g = std::exp(-(x - c) * (x - c) / (2.0 * sigma * sigma));
      return radial ? std::sqrt(x) * g : g;
    }));
  }
  return out;
}

namespace {

struct Context {
  HierarchyModel model;
  Grid grid;
  const Thresholds* th;
  std::vector<Wavefunction> tests;
  ApplyOptions opts;

  double t(const std::string& name) const { return th->get(name); }
  std::string prefix() const { return model.name() + "/"; }
};

struct Task {
  std::string id;
  std::string model;
  std::function<std::vector<CheckResult>()> run;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string label_id(const QuantumNumbers& q) { return "(" + q.n.str() + "," + q.l.str() + ")"; }

CheckResult make(const std::string& id, const std::string& model, std::optional<QuantumNumbers> q, int pair,
                 Metric metric, double value, double threshold, std::string note = {}) {
  CheckResult r;
  r.id = id;
  r.model = model;
  if (q) {
    r.n = q->n;
    r.l = q->l;
  }
  r.pair = pair;
  r.metric = metric;
  r.value = value;
  r.threshold = threshold;
  r.status = within(metric, value, threshold) ? Status::passed : Status::failed;
  r.note = std::move(note);
  return r;
}

CheckResult skipped(const std::string& id, const std::string& model, std::optional<QuantumNumbers> q, int pair,
                    Metric metric, double threshold, std::string note) {
  CheckResult r = make(id, model, q, pair, metric, std::numeric_limits<double>::quiet_NaN(), threshold, std::move(note));
  r.status = Status::skipped;
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec axpy(double s, const Vec& x, const Vec& y) {  // s x + y
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = s * x[i] + y[i];
  return out;
}

Vec hamiltonian(const Context& ctx, double l, const Wavefunction& f) {
  return apply_hamiltonian(ctx.model.potential_function(l), f, ctx.opts.policy).values;
}

Vec times_coefficient(const Grid& g, const Coefficient& c, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c(g.x(i)) * v[i];
  return out;
}

/// Worst relative residual of computed vs reference over the test functions.
/// Falls back to an absolute residual when the reference vanishes.
CheckResult residual_check(const Context& ctx, const std::string& id, std::optional<QuantumNumbers> q, int pair,
                           double threshold, const std::function<std::pair<Vec, Vec>(const Wavefunction&)>& sides,
                           std::string note = {}) {
  const Window w = interior_window(ctx.grid);
  double worst_rel = 0.0;
  double worst_abs = 0.0;
  bool absolute = false;
  for (const auto& f : ctx.tests) {
    const auto [computed, reference] = sides(f);
    const double num = window_distance(ctx.grid, computed, reference, w);
    const double den = window_norm(ctx.grid, reference, w);
    if (den < 1e-12) {
      absolute = true;
      worst_abs = std::max(worst_abs, num);
    } else {
      worst_rel = std::max(worst_rel, num / den);
    }
  }
  if (absolute) {
    return make(id, ctx.model.name(), q, pair, Metric::absolute_residual, worst_abs, ctx.t("absolute_floor"), note);
  }
  return make(id, ctx.model.name(), q, pair, Metric::relative_residual, worst_rel, threshold, note);
}

// ---------------------------------------------------------------- spectrum

std::vector<CheckResult> spectrum_checks(const Context& ctx, Rational l, int k) {
  const auto pairs = lowest_eigenpairs(assemble(ctx.model, l, ctx.grid), k);
  std::vector<CheckResult> out;
  for (int nu = 0; nu < k; ++nu) {
    const QuantumNumbers q{level_label(ctx.model, l, nu), l};
    const std::string id = ctx.prefix() + "spectrum/l=" + l.str() + "/n=" + q.n.str();
    if (!ctx.model.is_eigenlevel(q)) throw usage_error("requested more levels than the channel binds");
    const double formula = ctx.model.energy(q.n, q.l);
    const double oracle = pairs[static_cast<std::size_t>(nu)].value;
    const std::string note = "formula " + fmt(formula) + ", oracle " + fmt(oracle);
    if (ctx.model.family() == Family::morse) {
      out.push_back(make(id, ctx.model.name(), q, 0, Metric::absolute_error, std::abs(oracle - formula),
                         ctx.t("spectrum_absolute"), note));
    } else {
      const bool critical = ctx.model.family() == Family::coulomb && l.to_double() * l.to_double() < 0.25;
      out.push_back(make(id, ctx.model.name(), q, 0, Metric::relative_error, std::abs(oracle / formula - 1.0),
                         ctx.t(critical ? "spectrum_coulomb_l0" : "spectrum_relative"), note));
    }
  }
  return out;
}

// --------------------------------------------------------- refined identity

CheckResult refined_identity_check(const Context& ctx, int i, const QuantumNumbers& q, bool other_side) {
  const std::string id = ctx.prefix() + "refined_identity/i=" + std::to_string(i) + "/" + label_id(q) +
                         (other_side ? "/AB" : "/BA");
  const double threshold =
      ctx.t(ctx.model.family() == Family::coulomb ? "refined_identity_dilation" : "refined_identity");
  const QuantumNumbers at = other_side ? ctx.model.step_inverse(i, q) : q;
  if (ctx.model.family() == Family::coulomb && !(at.n > Rational(-1, 2))) {
    return skipped(id, ctx.model.name(), q, i, Metric::relative_residual, threshold,
                   "operators at " + at.str() + " are undefined (n <= -1/2)");
  }
  const RefinedPair p = ctx.model.refined_pair(i, at);
  const Coefficient h = ctx.model.h_factor(q);
  const double e = ctx.model.energy(q.n, q.l);
  return residual_check(ctx, id, q, i, threshold, [&](const Wavefunction& f) {
    const Vec hf = hamiltonian(ctx, q.l.to_double(), f);
    const Vec lhs = times_coefficient(ctx.grid, h, axpy(-e, f.values, hf));
    const Wavefunction prod = other_side ? apply(p.A, apply(p.B, f, ctx.opts), ctx.opts)
                                         : apply(p.B, apply(p.A, f, ctx.opts), ctx.opts);
    return std::make_pair(axpy(-p.phi, f.values, prod.values), lhs);
  });
}

// ----------------------------------------------- conventional factorization

struct ConventionalCase {
  Rational label;
  OscillatorCase oc;
  std::string tag;
};

std::vector<ConventionalCase> conventional_cases(const HierarchyModel& m) {
  switch (m.family()) {
    case Family::coulomb: return {{0, OscillatorCase::b, "l=0"}, {1, OscillatorCase::b, "l=1"},
                                  {2, OscillatorCase::b, "l=2"}, {3, OscillatorCase::b, "l=3"}};
    case Family::oscillator: return {{0, OscillatorCase::a, "case=a/l=0"}, {1, OscillatorCase::a, "case=a/l=1"},
                                     {0, OscillatorCase::b, "case=b/l=0"}, {1, OscillatorCase::b, "case=b/l=1"}};
    case Family::morse: return {{1, OscillatorCase::b, "lp=1"}, {2, OscillatorCase::b, "lp=2"}};
  }
  return {};
}

CheckResult intertwining_check(const Context& ctx, const ConventionalCase& cc) {
  const ConventionalPair p = ctx.model.conventional(cc.label, cc.oc);
  const double lo = p.lower_label.to_double();
  const double up = p.upper_label.to_double();
  return residual_check(ctx, ctx.prefix() + "intertwining/" + cc.tag, QuantumNumbers{0, p.lower_label}, 0,
                        ctx.t("intertwining"), [&](const Wavefunction& f) {
                          const Wavefunction xf = apply(p.x_plus, f, ctx.opts);
                          const Vec left = axpy(p.shift_lower, xf.values, hamiltonian(ctx, lo, xf));
                          Wavefunction hf(ctx.grid, axpy(p.shift_upper, f.values, hamiltonian(ctx, up, f)));
                          return std::make_pair(left, apply(p.x_plus, hf, ctx.opts).values);
                        });
}

CheckResult factorization_check(const Context& ctx, const ConventionalCase& cc, bool plus_first) {
  const ConventionalPair p = ctx.model.conventional(cc.label, cc.oc);
  const double label = (plus_first ? p.lower_label : p.upper_label).to_double();
  const double shift = plus_first ? p.shift_lower : p.shift_upper;
  const std::string id = ctx.prefix() + "factorization/" + cc.tag + (plus_first ? "/XpXm" : "/XmXp");
  return residual_check(ctx, id, QuantumNumbers{0, plus_first ? p.lower_label : p.upper_label}, 0,
                        ctx.t("factorization"), [&](const Wavefunction& f) {
                          const Wavefunction prod = plus_first ? apply(p.x_plus, apply(p.x_minus, f, ctx.opts), ctx.opts)
                                                               : apply(p.x_minus, apply(p.x_plus, f, ctx.opts), ctx.opts);
                          const Vec rhs = axpy(shift + p.q, f.values, hamiltonian(ctx, label, f));
                          return std::make_pair(prod.values, rhs);
                        },
                        "q = " + fmt(p.q));
}

// ------------------------------------------------------------- commutators

struct FreeOp {
  int i;
  Move m;
  std::string str() const { return std::string(m == Move::A ? "A" : "B") + std::to_string(i); }
};

Wavefunction free_apply(const Context& ctx, const FreeOp& op, const Wavefunction& f, QuantumNumbers& at) {
  const OperatorChain chain = ctx.model.move_chain(op.i, op.m, at);
  at = ctx.model.move_target(op.i, op.m, at);
  return apply(chain, f, ctx.opts);
}

CheckResult commutator_check(const Context& ctx, const FreeOp& x, const FreeOp& y, const QuantumNumbers& at,
                             bool identity) {
  const std::string id = ctx.prefix() + "commutators/[" + x.str() + "," + y.str() + "]/" + label_id(at);
  const double threshold = ctx.t(ctx.model.family() == Family::coulomb ? "commutator_dilation" : "commutator");
  const Window w = interior_window(ctx.grid);
  double worst = 0.0;
  for (const auto& f : ctx.tests) {
    QuantumNumbers p1 = at;
    const Wavefunction yf = free_apply(ctx, y, f, p1);
    const Wavefunction xyf = free_apply(ctx, x, yf, p1);
    QuantumNumbers p2 = at;
    const Wavefunction xf = free_apply(ctx, x, f, p2);
    const Wavefunction yxf = free_apply(ctx, y, xf, p2);
    if (!(p1 == p2)) throw numerical_error("commutator terms end on different labels");
    Vec c = sub(xyf.values, yxf.values);
    if (identity) c = sub(c, f.values);
    worst = std::max(worst, window_norm(ctx.grid, c, w) / window_norm(ctx.grid, f.values, w));
  }
  return make(id, ctx.model.name(), at, x.i == y.i ? x.i : 0, Metric::relative_residual, worst, threshold,
              identity ? "expected identity" : "expected zero");
}

std::vector<QuantumNumbers> label_points(const HierarchyModel& m) {
  std::vector<QuantumNumbers> pts = m.lattice(m.family() == Family::coulomb ? 3 : 4);
  if (m.family() == Family::coulomb) {
    const std::size_t base = pts.size();
    for (std::size_t k = 0; k < base; ++k) {
      pts.push_back(m.step(1, pts[k]));
      pts.push_back(m.step(2, pts[k]));
    }
  }
  return pts;
}

CheckResult label_check(const Context& ctx, const FreeOp& op) {
  const LabelShift table = ctx.model.label_shift(op.i, op.m);
  int mismatches = 0;
  const auto pts = label_points(ctx.model);
  for (const auto& p : pts) {
    const QuantumNumbers t = ctx.model.move_target(op.i, op.m, p);
    if (!(t.n - p.n == table.dn && t.l - p.l == table.dl)) ++mismatches;
    if (!(ctx.model.step_inverse(op.i, ctx.model.step(op.i, p)) == p)) ++mismatches;
    if (!(ctx.model.step(op.i, ctx.model.step_inverse(op.i, p)) == p)) ++mismatches;
  }
  return make(ctx.prefix() + "commutators/labels/" + op.str(), ctx.model.name(), std::nullopt, op.i, Metric::exact,
              mismatches, 0.0,
              "[N," + op.str() + "] = " + table.dn.str() + " " + op.str() + ", [L," + op.str() + "] = " + table.dl.str() +
                  " " + op.str() + " over " + std::to_string(pts.size()) + " labels");
}

// ------------------------------------------------------------ ladder action

bool half_step(const QuantumNumbers& q) { return !q.n.is_integer() || !q.l.is_integer(); }

/// Interior sup of the image over the sup of the whole input.
double relative_sup(const Grid& g, const Vec& image, const Vec& source) {
  return sup_norm(image, interior_window(g)) / sup_norm(source, {0, g.count()});
}

CheckResult ladder_check(const Context& ctx, const FreeOp& op, const QuantumNumbers& source) {
  const QuantumNumbers target = ctx.model.move_target(op.i, op.m, source);
  const std::string id = ctx.prefix() + "ladder/" + op.str() + "/" + label_id(source);
  const bool half = half_step(source) || half_step(target);
  const double threshold = ctx.t(half ? "ladder_overlap_half_step" : "ladder_overlap");
  const bool n_zero_level = ctx.model.family() == Family::morse && target.n == Rational(0) &&
                            (target.l - target.n).is_integer() && target.l >= Rational(0) &&
                            (target.l - target.n).num() % 2 == 0;
  if (n_zero_level || (ctx.model.is_eigenlevel(target) && !ctx.model.is_normalizable(target))) {
    return skipped(id, ctx.model.name(), source, op.i, Metric::overlap, threshold,
                   "target " + target.str() + " is not normalizable");
  }
  const Wavefunction psi = build_state(ctx.model, source, ctx.grid, ctx.opts);
  const Wavefunction image = apply(ctx.model.move_chain(op.i, op.m, source), psi, ctx.opts);
  if (!ctx.model.is_eigenlevel(target)) {
    return make(id, ctx.model.name(), source, op.i, Metric::relative_residual,
                relative_sup(ctx.grid, image.values, psi.values), ctx.t("annihilation"),
                "annihilation: " + target.str() + " is not a bound level");
  }
  const Eigenpair oracle = oracle_state(ctx.model, target, ctx.grid);
  const double ov = std::abs(window_cosine(ctx.grid, image.values, oracle.state.values,
                                           interior_window(ctx.grid, kOverlapBand)));
  return make(id, ctx.model.name(), source, op.i, Metric::overlap, ov, threshold, "target " + target.str());
}

// ---------------------------------------------------------------- quadratic

CheckResult quadratic_display_check(const Context& ctx, QuadraticKind kind, const QuantumNumbers& source) {
  const QuadraticOperator quad = ctx.model.quadratic(kind, source);
  const OperatorChain display = *ctx.model.displayed_quadratic(kind, source);
  const Coefficient h = ctx.model.h_factor(source);
  const double e = ctx.model.energy(source.n, source.l);
  const std::string id = ctx.prefix() + "quadratic/" + to_string(kind) + "/" + label_id(source) + "/display";
  return residual_check(ctx, id, source, 0, ctx.t("quadratic"), [&](const Wavefunction& f) {
    const Vec off_shell = times_coefficient(ctx.grid, h, axpy(-e, f.values, hamiltonian(ctx, source.l.to_double(), f)));
    const Vec reduced = sub(apply(quad.chain, f, ctx.opts).values, off_shell);
    return std::make_pair(reduced, apply(display, f, ctx.opts).values);
  }, quad.chain.name() + " minus h(H - E) against its first-order form");
}

struct Proportional {
  OperatorChain conventional;
  double expected;
  std::string name;
};

Proportional proportional_target(const HierarchyModel& m, QuadraticKind kind, const QuantumNumbers& source) {
  if (m.family() == Family::morse) {
    if (kind == QuadraticKind::raise_l) return {m.conventional(source.l / Rational(2)).x_minus, -1.0 / m.alpha(), "X-"};
    return {m.conventional((source.l - Rational(2)) / Rational(2)).x_plus, -1.0 / m.alpha(), "X+"};
  }
  const Rational l = kind == QuadraticKind::raise_l ? source.l : source.l - Rational(1);
  const double k = 2.0 * l.to_double() + 1.0;
  const double big_k = k * (2.0 * source.n.to_double() + 1.0) / 2.0;
  const ConventionalPair p = m.conventional(l);
  if (kind == QuadraticKind::raise_l) return {p.x_minus, -0.5 * big_k, "X-"};
  return {p.x_plus, -0.5 * big_k, "X+"};
}

std::vector<CheckResult> quadratic_proportional_checks(const Context& ctx, QuadraticKind kind,
                                                       const QuantumNumbers& source) {
  const QuadraticOperator quad = ctx.model.quadratic(kind, source);
  const Proportional target = proportional_target(ctx.model, kind, source);
  const Coefficient h = ctx.model.h_factor(source);
  const double e = ctx.model.energy(source.n, source.l);
  const Window w = interior_window(ctx.grid);
  double num = 0.0;
  double den = 0.0;
  std::vector<std::pair<Vec, Vec>> sides;
  for (const auto& f : ctx.tests) {
    const Vec off_shell = times_coefficient(ctx.grid, h, axpy(-e, f.values, hamiltonian(ctx, source.l.to_double(), f)));
    Vec reduced = sub(apply(quad.chain, f, ctx.opts).values, off_shell);
    Vec xf = apply(target.conventional, f, ctx.opts).values;
    num += window_inner(ctx.grid, reduced, xf, w);
    den += window_inner(ctx.grid, xf, xf, w);
    sides.emplace_back(std::move(reduced), std::move(xf));
  }
  const double lambda = num / den;
  double worst = 0.0;
  for (const auto& [reduced, xf] : sides) {
    Vec fit(xf.size());
    for (std::size_t i = 0; i < fit.size(); ++i) fit[i] = lambda * xf[i];
    worst = std::max(worst, window_distance(ctx.grid, reduced, fit, w) / window_norm(ctx.grid, fit, w));
  }
  const std::string base = ctx.prefix() + "quadratic/" + to_string(kind) + "/" + label_id(source);
  const std::string note = quad.chain.name() + " = " + fmt(lambda) + " * " + target.name + target.conventional.name().substr(2) +
                           " on eigenstates (expected " + fmt(target.expected) + ")";
  return {make(base + "/proportional", ctx.model.name(), source, 0, Metric::relative_residual, worst, ctx.t("quadratic"), note),
          make(base + "/constant", ctx.model.name(), source, 0, Metric::relative_error,
               std::abs(lambda / target.expected - 1.0), ctx.t("quadratic"), note)};
}

CheckResult quadratic_overlap_check(const Context& ctx, QuadraticKind kind, const QuantumNumbers& source) {
  const QuadraticOperator quad = ctx.model.quadratic(kind, source);
  const std::string id = ctx.prefix() + "quadratic/" + to_string(kind) + "/" + label_id(source) + "/overlap";
  const Wavefunction psi = build_state(ctx.model, source, ctx.grid, ctx.opts);
  const Wavefunction image = apply(quad.chain, psi, ctx.opts);
  const Eigenpair oracle = oracle_state(ctx.model, quad.target, ctx.grid);
  const double ov = std::abs(window_cosine(ctx.grid, image.values, oracle.state.values,
                                           interior_window(ctx.grid, kOverlapBand)));
  return make(id, ctx.model.name(), source, 0, Metric::overlap, ov, ctx.t("ladder_overlap"),
              quad.chain.name() + " to " + quad.target.str());
}

// ------------------------------------------------------ ladder coefficients

std::vector<CheckResult> coefficient_checks(const Context& ctx, const QuantumNumbers& source, OscillatorCase oc,
                                            const std::string& tag) {
  const LadderCoefficient lc = ladder_coefficient(ctx.model, source, ctx.grid, oc, kOverlapBand, ctx.opts);
  const std::string id = ctx.prefix() + "ladder_coefficient/" + tag + label_id(source);
  if (lc.annihilated) {
    return {make(id, ctx.model.name(), source, 0, Metric::absolute_error, lc.c, ctx.t("annihilation"),
                 "X- annihilates " + source.str() + ", predicted |c| = " + fmt(lc.predicted))};
  }
  const std::string note = "c = " + fmt(lc.c) + ", predicted |c| = " + fmt(lc.predicted) + ", target " + lc.target.str();
  return {make(id, ctx.model.name(), source, 0, Metric::relative_error, std::abs(std::abs(lc.c) / lc.predicted - 1.0),
               ctx.t("ladder_coefficient"), note),
          make(id + "/overlap", ctx.model.name(), source, 0, Metric::overlap, lc.overlap, ctx.t("coefficient_overlap"),
               note)};
}

// -------------------------------------------------------------- eigenstates

std::vector<CheckResult> eigenstate_checks(const Context& ctx, const QuantumNumbers& q) {
  const Wavefunction psi = build_state(ctx.model, q, ctx.grid, ctx.opts);
  const Eigenpair oracle = oracle_state(ctx.model, q, ctx.grid);
  const std::string base = ctx.prefix() + "eigenstates/" + label_id(q);
  const double ov = std::abs(window_cosine(ctx.grid, psi.values, oracle.state.values,
                                           interior_window(ctx.grid, kOverlapBand)));
  const bool half = half_step(q);
  return {make(base + "/residual", ctx.model.name(), q, 0, Metric::relative_residual, eigen_residual(ctx.model, psi),
               ctx.t("eigen_residual"), "E = " + fmt(ctx.model.energy(q.n, q.l))),
          make(base + "/oracle_overlap", ctx.model.name(), q, 0, Metric::overlap, ov,
               ctx.t(half ? "ladder_overlap_half_step" : "eigenstate_overlap"),
               "oracle E = " + fmt(oracle.value))};
}

CheckResult path_independence_check(const Context& ctx) {
  const QuantumNumbers target{2, 0};
  Wavefunction ground = ground_state(ctx.model, 0, ctx.grid);
  LadderPath a{{0, 0}, {{1, Move::A}, {2, Move::A}}, target};
  LadderPath b{{0, 0}, {{2, Move::A}, {1, Move::A}}, target};
  const Wavefunction pa = walk(ctx.model, a, ground, ctx.opts);
  const Wavefunction pb = walk(ctx.model, b, ground, ctx.opts);
  const double ov = std::abs(window_cosine(ctx.grid, pa.values, pb.values, interior_window(ctx.grid, kOverlapBand)));
  return make(ctx.prefix() + "eigenstates/path_independence/(2,0)", ctx.model.name(), target, 0, Metric::overlap, ov,
              ctx.t("path_independence"), "A1 then A2 against A2 then A1");
}

// -------------------------------------------------------------- hermiticity

CheckResult hermiticity_check(const Context& ctx, int i) {
  const Window w = interior_window(ctx.grid);
  const double lo = ctx.grid.x(w.begin);
  const double hi = ctx.grid.x(w.end - 1);
  auto bump = [&](double a, double b, double k) {
    return Wavefunction::sample(ctx.grid, [=](double x) {
      const double u = (2.0 * x - a - b) / (b - a);
      if (std::abs(u) >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - u * u)) * std::cos(k * x);
    });
  };
  const Wavefunction f = bump(lo + 0.1 * (hi - lo), lo + 0.6 * (hi - lo), 1.3);
  const Wavefunction g = bump(lo + 0.3 * (hi - lo), lo + 0.8 * (hi - lo), 0.7);
  const QuantumNumbers at{2, 0};
  const RefinedPair p = ctx.model.refined_pair(i, at);
  const double lhs = inner_product(apply(p.A, f, ctx.opts), g);
  const double rhs = -inner_product(f, apply(p.B, g, ctx.opts));
  return make(ctx.prefix() + "hermiticity/i=" + std::to_string(i), ctx.model.name(), at, i, Metric::absolute_error,
              std::abs(lhs - rhs) / (norm(f) * norm(g)), ctx.t("hermiticity"), "<A f, g> against <f, -B g>");
}

// ----------------------------------------------------------- task catalogue

void add_model_tasks(const std::shared_ptr<const Context>& ctx, const std::set<std::string>& groups,
                     std::vector<Task>& tasks) {
  const HierarchyModel& m = ctx->model;
  const std::string name = m.name();
  auto want = [&](const std::string& g) { return groups.empty() || groups.count(g) > 0; };
  auto add = [&](std::string id, std::function<std::vector<CheckResult>()> fn) {
    tasks.push_back({std::move(id), name, std::move(fn)});
  };
  auto add1 = [&](std::string id, std::function<CheckResult()> fn) {
    add(std::move(id), [fn] { return std::vector<CheckResult>{fn()}; });
  };
  const Family fam = m.family();

  if (want("spectrum")) {
    std::vector<std::pair<Rational, int>> channels;
    if (fam == Family::oscillator) channels = {{0, 3}, {1, 3}, {2, 3}, {3, 3}};
    if (fam == Family::morse) channels = {{3, 2}, {4, 2}, {5, 3}};
    if (fam == Family::coulomb) channels = {{0, 2}, {kHalf, 2}, {1, 2}, {2, 2}};
    for (auto [l, k] : channels) {
      add(ctx->prefix() + "spectrum/l=" + l.str(), [ctx, l = l, k = k] { return spectrum_checks(*ctx, l, k); });
    }
  }

  if (want("refined_identity")) {
    std::vector<QuantumNumbers> pts;
    if (fam == Family::oscillator) pts = {{0, 0}, {1, 1}, {2, 0}, {2, 2}};
    if (fam == Family::morse) pts = {{1, 1}, {2, 2}, {3, 3}, {1, 3}};
    if (fam == Family::coulomb) pts = {{0, 0}, {1, 0}, {1, 1}, {2, 1}};
    for (int i : {1, 2})
      for (const auto& q : pts)
        for (bool other : {false, true}) {
          add1(ctx->prefix() + "refined_identity/" + std::to_string(i) + q.str() + (other ? "AB" : "BA"),
               [ctx, i, q, other] { return refined_identity_check(*ctx, i, q, other); });
        }
  }

  if (want("intertwining")) {
    for (const auto& cc : conventional_cases(m)) {
      add1(ctx->prefix() + "intertwining/" + cc.tag, [ctx, cc] { return intertwining_check(*ctx, cc); });
    }
  }

  if (want("factorization")) {
    for (const auto& cc : conventional_cases(m))
      for (bool plus_first : {true, false}) {
        add1(ctx->prefix() + "factorization/" + cc.tag + (plus_first ? "+" : "-"),
             [ctx, cc, plus_first] { return factorization_check(*ctx, cc, plus_first); });
      }
  }

  if (want("commutators")) {
    std::vector<QuantumNumbers> pts;
    if (fam == Family::oscillator) pts = {{2, 0}, {3, 1}};
    if (fam == Family::morse) pts = {{3, 3}, {2, 4}};
    if (fam == Family::coulomb) pts = {{1, 0}, {2, 1}};
    for (int i : {1, 2})
      for (const auto& q : pts) {
        add1(ctx->prefix() + "commutators/id" + std::to_string(i) + q.str(),
             [ctx, i, q] { return commutator_check(*ctx, {i, Move::A}, {i, Move::B}, q, true); });
      }
    const std::vector<std::pair<FreeOp, FreeOp>> cross = {{{1, Move::A}, {2, Move::B}},
                                                          {{1, Move::A}, {2, Move::A}},
                                                          {{1, Move::B}, {2, Move::B}},
                                                          {{2, Move::A}, {1, Move::B}}};
    for (const auto& [x, y] : cross) {
      add1(ctx->prefix() + "commutators/" + x.str() + y.str(),
           [ctx, x = x, y = y, q = pts[0]] { return commutator_check(*ctx, x, y, q, false); });
    }
    for (int i : {1, 2})
      for (Move mv : {Move::A, Move::B}) {
        const FreeOp op{i, mv};
        add1(ctx->prefix() + "commutators/labels/" + op.str(), [ctx, op] { return label_check(*ctx, op); });
      }
  }

  if (want("ladder")) {
    std::vector<std::pair<FreeOp, QuantumNumbers>> cases;
    if (fam == Family::oscillator) {
      cases = {{{1, Move::A}, {0, 0}}, {{2, Move::A}, {0, 0}}, {{1, Move::A}, {1, 1}}, {{2, Move::A}, {1, 1}},
               {{1, Move::B}, {2, 2}}, {{2, Move::B}, {2, 0}}, {{1, Move::B}, {1, 1}}, {{2, Move::B}, {1, 1}},
               {{1, Move::B}, {0, 0}}};
    }
    if (fam == Family::morse) {
      cases = {{{1, Move::A}, {1, 1}}, {{2, Move::A}, {3, 3}}, {{1, Move::B}, {2, 2}}, {{2, Move::B}, {1, 3}},
               {{1, Move::A}, {2, 2}}, {{2, Move::A}, {1, 1}}, {{2, Move::B}, {2, 2}}};
    }
    if (fam == Family::coulomb) {
      const QuantumNumbers hh{kHalf, kHalf};
      cases = {{{1, Move::A}, {0, 0}}, {{2, Move::A}, {0, 0}}, {{1, Move::A}, {1, 0}}, {{2, Move::A}, hh},
               {{1, Move::A}, hh},     {{1, Move::B}, {1, 1}}, {{2, Move::B}, {1, 0}}, {{1, Move::B}, {1, 0}}};
    }
    for (const auto& [op, q] : cases) {
      add1(ctx->prefix() + "ladder/" + op.str() + q.str(), [ctx, op = op, q = q] { return ladder_check(*ctx, op, q); });
    }
  }

  if (want("quadratic")) {
    std::vector<std::pair<QuadraticKind, QuantumNumbers>> display;
    std::vector<std::pair<QuadraticKind, QuantumNumbers>> overlap;
    if (fam == Family::morse) {
      display = {{QuadraticKind::raise_l, {2, 2}}, {QuadraticKind::raise_l, {2, 4}},
                 {QuadraticKind::lower_l, {2, 4}}, {QuadraticKind::lower_l, {2, 6}}};
      overlap = {{QuadraticKind::raise_n, {1, 3}}, {QuadraticKind::lower_n, {3, 3}},
                 {QuadraticKind::raise_l, {2, 2}}, {QuadraticKind::lower_l, {2, 4}}};
    }
    if (fam == Family::coulomb) {
      display = {{QuadraticKind::raise_l, {1, 0}}, {QuadraticKind::raise_l, {1, 1}}, {QuadraticKind::raise_l, {2, 1}},
                 {QuadraticKind::lower_l, {1, 1}}, {QuadraticKind::lower_l, {2, 2}}, {QuadraticKind::lower_l, {2, 1}}};
      overlap = {{QuadraticKind::raise_n, {0, 0}}, {QuadraticKind::lower_n, {2, 1}},
                 {QuadraticKind::raise_l, {1, 0}}, {QuadraticKind::lower_l, {1, 1}}};
    }
    if (fam == Family::oscillator) {
      overlap = {{QuadraticKind::raise_n, {0, 0}}, {QuadraticKind::lower_n, {2, 0}},
                 {QuadraticKind::energy_preserving, {2, 0}}, {QuadraticKind::lower_l, {2, 2}}};
    }
    for (const auto& [kind, q] : display) {
      add1(ctx->prefix() + "quadratic/d" + to_string(kind) + q.str(),
           [ctx, kind = kind, q = q] { return quadratic_display_check(*ctx, kind, q); });
      add(ctx->prefix() + "quadratic/p" + to_string(kind) + q.str(),
          [ctx, kind = kind, q = q] { return quadratic_proportional_checks(*ctx, kind, q); });
    }
    for (const auto& [kind, q] : overlap) {
      add1(ctx->prefix() + "quadratic/o" + to_string(kind) + q.str(),
           [ctx, kind = kind, q = q] { return quadratic_overlap_check(*ctx, kind, q); });
    }
  }

  if (want("ladder_coefficient")) {
    std::vector<std::tuple<QuantumNumbers, OscillatorCase, std::string>> cases;
    if (fam == Family::coulomb) {
      cases = {{{0, 0}, OscillatorCase::b, ""}, {{1, 0}, OscillatorCase::b, ""}, {{2, 0}, OscillatorCase::b, ""},
               {{2, 1}, OscillatorCase::b, ""}};
    }
    if (fam == Family::oscillator) {
      cases = {{{1, -1}, OscillatorCase::a, "case=a/"}, {{0, 0}, OscillatorCase::a, "case=a/"},
               {{2, 0}, OscillatorCase::b, "case=b/"}, {{0, 0}, OscillatorCase::b, "case=b/"}};
    }
    if (fam == Family::morse) {
      cases = {{{2, 2}, OscillatorCase::b, ""}, {{2, 4}, OscillatorCase::b, ""}};
    }
    for (const auto& [q, oc, tag] : cases) {
      add(ctx->prefix() + "ladder_coefficient/" + tag + q.str(),
          [ctx, q = q, oc = oc, tag = tag] { return coefficient_checks(*ctx, q, oc, tag); });
    }
  }

  if (want("annihilation")) {
    const int first = fam == Family::morse ? 1 : 0;
    for (int l = first; l <= 3; ++l) {
      add1(ctx->prefix() + "annihilation/l=" + std::to_string(l), [ctx, l] {
        const Grid& g = ctx->grid;
        const Grid fine = Grid::build(g.kind(), g.x_min(), g.x_max(), 2 * g.count() - 1);
        const Wavefunction psi = ground_state(ctx->model, l, fine);
        const OperatorChain x = ground_annihilator(ctx->model, l);
        const Wavefunction image = apply(x, psi, ctx->opts);
        return make(ctx->prefix() + "annihilation/l=" + std::to_string(l), ctx->model.name(), *psi.labels, 0,
                    Metric::relative_residual, relative_sup(fine, image.values, psi.values),
                    ctx->t("annihilation"),
                    x.name() + " on the closed-form ground state, " + std::to_string(fine.count()) + " points");
      });
    }
  }

  if (want("eigenstates")) {
    std::vector<QuantumNumbers> states;
    if (fam == Family::oscillator) states = m.lattice(4);
    if (fam == Family::morse) states = m.lattice(5);
    if (fam == Family::coulomb) {
      states = m.lattice(2);
      states.push_back({kHalf, kHalf});
      states.push_back({Rational(3, 2), kHalf});
    }
    for (const auto& q : states) {
      add(ctx->prefix() + "eigenstates/" + q.str(), [ctx, q] { return eigenstate_checks(*ctx, q); });
    }
    if (fam == Family::oscillator) {
      add1(ctx->prefix() + "eigenstates/path", [ctx] { return path_independence_check(*ctx); });
    }
  }

  if (want("hermiticity") && fam == Family::oscillator) {
    for (int i : {1, 2}) add1(ctx->prefix() + "hermiticity/" + std::to_string(i), [ctx, i] { return hermiticity_check(*ctx, i); });
  }
}

std::string default_timestamp() {
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long secs = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && secs >= 0) {
      const std::time_t t = static_cast<std::time_t>(secs);
      std::tm tm{};
      gmtime_r(&t, &tm);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
      return buf;
    }
  }
  return "1970-01-01T00:00:00Z";
}

CheckResult coverage_check(const std::vector<CheckResult>& checks) {
  // Every identity family must be exercised at least once.
  const std::vector<std::string> required = {
      "spectrum",         "refined_identity", "intertwining", "factorization", "commutators/[",
      "commutators/labels", "ladder/",        "quadratic",    "ladder_coefficient", "annihilation",
      "eigenstates",      "hermiticity"};
  int missing = 0;
  std::string absent;
  for (const auto& key : required) {
    const bool found = std::any_of(checks.begin(), checks.end(),
                                   [&](const CheckResult& c) { return c.id.find("/" + key) != std::string::npos; });
    if (!found) {
      ++missing;
      absent += " " + key;
    }
  }
  for (const char* model : {"oscillator", "morse", "coulomb"}) {
    const bool found = std::any_of(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.model == model; });
    if (!found) {
      ++missing;
      absent += std::string(" ") + model;
    }
  }
  return make("suite/coverage", "suite", std::nullopt, 0, Metric::exact, missing, 0.0,
              missing ? "missing:" + absent : "all identity groups exercised for all three families");
}

}  // namespace

VerificationReport run_suite(const SuiteConfig& config) {
  for (const auto& g : config.checks) {
    if (std::find(check_groups().begin(), check_groups().end(), g) == check_groups().end()) {
      throw usage_error("unknown check group '" + g + "'");
    }
  }
  VerificationReport report;
  report.suite = config.suite;
  report.timestamp = config.timestamp.empty() ? default_timestamp() : config.timestamp;

  std::vector<Task> tasks;
  for (const auto& name : config.models) {
    const HierarchyModel model = HierarchyModel::from_name(name, config.alpha);
    auto it = config.grids.find(name);
    const GridSpec spec = it != config.grids.end() ? it->second : model.default_grid_spec();
    const Grid grid = Grid::build(model.domain_kind(), spec.x_min, spec.x_max, spec.count);
    report.grids.emplace(name, grid);
    ApplyOptions opts;
    opts.policy = ExecPolicy::serial;
    auto ctx = std::make_shared<const Context>(Context{model, grid, &config.thresholds, test_functions(model, grid), opts});
    add_model_tasks(ctx, config.checks, tasks);
  }

  std::vector<std::vector<CheckResult>> results(tasks.size());
  const auto count = static_cast<std::ptrdiff_t>(tasks.size());
  const bool par = run_parallel(config.policy, 1 << 20) && count > 1;
#pragma omp parallel for schedule(dynamic) if (par) num_threads(max_threads())
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const Task& task = tasks[static_cast<std::size_t>(k)];
    try {
      results[static_cast<std::size_t>(k)] = task.run();
    } catch (const std::exception& e) {
      CheckResult r;
      r.id = task.id;
      r.model = task.model;
      r.metric = Metric::exact;
      r.value = std::numeric_limits<double>::quiet_NaN();
      r.status = Status::errored;
      r.note = e.what();
      results[static_cast<std::size_t>(k)] = {r};
    }
  }
  for (auto& batch : results)
    for (auto& r : batch) report.checks.push_back(std::move(r));
  if (config.is_default()) report.checks.push_back(coverage_check(report.checks));
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  report.summary = summarize(report.checks);
  return report;
}

std::string to_json(const VerificationReport& report, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["suite"] = report.suite;
  j["timestamp"] = report.timestamp;
  ordered_json grids = ordered_json::object();
  for (const auto& [name, g] : report.grids) {
    grids[name] = {{"domain", to_string(g.kind())}, {"x_min", g.x_min()}, {"x_max", g.x_max()},
                   {"count", g.count()}, {"spacing", g.spacing()}};
  }
  j["grid"] = grids;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json e;
    e["id"] = c.id;
    e["model"] = c.model;
    e["n"] = c.n ? ordered_json(c.n->str()) : ordered_json(nullptr);
    e["l"] = c.l ? ordered_json(c.l->str()) : ordered_json(nullptr);
    e["pair"] = c.pair == 0 ? ordered_json(nullptr) : ordered_json(c.pair);
    e["metric"] = to_string(c.metric);
    e["value"] = std::isfinite(c.value) ? ordered_json(c.value) : ordered_json(nullptr);
    e["threshold"] = c.threshold;
    e["passed"] = c.passed();
    e["status"] = to_string(c.status);
    e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  j["checks"] = checks;
  j["summary"] = {{"total", report.summary.total},
                  {"passed", report.summary.passed},
                  {"failed", report.summary.failed},
                  {"errored", report.summary.errored},
                  {"skipped", report.summary.skipped}};
  return j.dump(indent);
}

}  // namespace ladderlab
