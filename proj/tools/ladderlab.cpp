// ladderlab: spectra, ladder-built states, verification suites and lattice
// diagrams for the oscillator, Morse and 2D Coulomb hierarchies.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "ladderlab/errors.hpp"
#include "ladderlab/fd_oracle.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/verifier.hpp"

using namespace ladderlab;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kNumerical = 3 };

struct GridFlags {
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<std::size_t> points;

  void add(CLI::App* app) {
    app->add_option("--x-min", x_min, "Left end of the grid");
    app->add_option("--x-max", x_max, "Right end of the grid");
    app->add_option("--points", points, "Number of grid points");
  }
  bool any() const { return x_min || x_max || points; }
  GridSpec resolve(const HierarchyModel& m) const {
    GridSpec s = m.default_grid_spec();
    if (x_min) s.x_min = *x_min;
    if (x_max) s.x_max = *x_max;
    if (points) s.count = *points;
    return s;
  }
  Grid build(const HierarchyModel& m) const {
    const GridSpec s = resolve(m);
    return Grid::build(m.domain_kind(), s.x_min, s.x_max, s.count);
  }
};

Rational parse_label(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw usage_error(std::string("bad value for ") + what + ": '" + text + "'");
  }
}

std::string sparkline(const Wavefunction& f, std::size_t width = 64) {
  static const char* bars[] = {" ", "▁", "▂", "▃", "▄", "▅", "▆", "▇", "█"};
  double peak = 0.0;
  for (double v : f.values) peak = std::max(peak, std::abs(v));
  std::string out;
  const std::size_t n = f.values.size();
  for (std::size_t c = 0; c < width; ++c) {
    const std::size_t lo = c * n / width;
    const std::size_t hi = std::max(lo + 1, (c + 1) * n / width);
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(f.values[i]));
    const int level = peak > 0.0 ? static_cast<int>(std::lround(8.0 * m / peak)) : 0;
    out += bars[level];
  }
  return out;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string model = "oscillator";
  double alpha = 1.0;
  std::string l = "0";
  int k = 3;
  GridFlags grid;
  std::string csv;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const HierarchyModel m = HierarchyModel::from_name(a.model, a.alpha);
  const Rational l = parse_label(a.l, "--l");
  if (a.k < 1 || a.k > 12) throw usage_error("--k must lie in 1..12");
  if (!m.has_ground_state(l)) throw usage_error("no bound states at l=" + l.str() + " for " + m.name());
  if (m.domain_kind() == DomainKind::half_line && l < Rational(0)) {
    throw usage_error("use |l| on the half-line; the barrier depends on l^2 only");
  }
  std::vector<Rational> ns;
  for (int nu = 0; nu < a.k; ++nu) {
    const Rational n = level_label(m, l, nu);
    if (!m.is_eigenlevel({n, l}) || !m.is_normalizable({n, l})) {
      throw usage_error("channel l=" + l.str() + " has only " + std::to_string(nu) + " bound level(s)");
    }
    ns.push_back(n);
  }
  const Grid grid = a.grid.build(m);
  const auto pairs = lowest_eigenpairs(assemble(m, l, grid), a.k);

  std::ostringstream table;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-6s %22s %22s %12s\n", "n", "E_formula", "E_oracle", "rel_error");
  table << buf;
  std::ostringstream csv;
  csv << "n,E_formula,E_oracle,rel_error\n";
  for (int nu = 0; nu < a.k; ++nu) {
    const double ef = m.energy(ns[nu], l);
    const double eo = pairs[nu].value;
    const double rel = std::abs(eo / ef - 1.0);
    std::snprintf(buf, sizeof buf, "%-6s %22.15g %22.15g %12.3e\n", ns[nu].str().c_str(), ef, eo, rel);
    table << buf;
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g\n", ns[nu].str().c_str(), ef, eo, rel);
    csv << buf;
  }
  std::cout << table.str();
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) throw usage_error("cannot open '" + a.csv + "' for writing");
    out << csv.str();
  }
  return kOk;
}

// ------------------------------------------------------------------ state

struct StateArgs {
  std::string model = "oscillator";
  double alpha = 1.0;
  std::string n = "0";
  std::string l = "0";
  GridFlags grid;
  std::string output;
  bool spark = false;
};

int cmd_state(const StateArgs& a) {
  const HierarchyModel m = HierarchyModel::from_name(a.model, a.alpha);
  const QuantumNumbers q{parse_label(a.n, "--n"), parse_label(a.l, "--l")};
  if (!m.is_eigenlevel(q) || !m.is_normalizable(q)) {
    std::string rule = m.family() == Family::morse        ? "0 < n <= l with l - n even"
                       : m.family() == Family::oscillator ? "n - |l| even and >= 0"
                                                          : "n - |l| a non-negative integer";
    throw usage_error(q.str() + " is not on the " + m.name() + " lattice (" + rule + " required)");
  }
  const Grid grid = a.grid.build(m);
  const Wavefunction psi = build_state(m, q, grid);
  const double residual = eigen_residual(m, psi);
  char buf[128];
  std::snprintf(buf, sizeof buf, "state %s E=%.15g eigen_residual=%.3e\n", q.str().c_str(), m.energy(q.n, q.l), residual);
  if (a.output.empty()) {
    write_csv(std::cout, psi);
    std::cerr << buf;
    if (a.spark) std::cerr << sparkline(psi) << "\n";
  } else {
    std::ofstream out(a.output);
    if (!out) throw usage_error("cannot open '" + a.output + "' for writing");
    write_csv(out, psi);
    std::cout << buf;
    if (a.spark) std::cout << sparkline(psi) << "\n";
  }
  return kOk;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  bool all = false;
  std::vector<std::string> models;
  std::vector<std::string> checks;
  std::vector<std::string> thresholds;
  double alpha = 1.0;
  GridFlags grid;
  std::string output;
  std::string timestamp;
  bool serial = false;
  bool quiet = false;
};

int cmd_verify(const VerifyArgs& a) {
  SuiteConfig cfg;
  if (!a.models.empty() && !a.all) {
    cfg.models.clear();
    for (const auto& name : a.models) {
      HierarchyModel::from_name(name);
      if (std::find(cfg.models.begin(), cfg.models.end(), name) == cfg.models.end()) cfg.models.push_back(name);
    }
  }
  if (!a.all) cfg.checks.insert(a.checks.begin(), a.checks.end());
  if (a.alpha != 1.0) {
    if (!(a.alpha > 0.0) || !std::isfinite(a.alpha)) throw usage_error("--alpha must be positive");
    cfg.alpha = a.alpha;
  }
  if (a.grid.any()) {
    if (cfg.models.size() != 1) throw usage_error("grid flags need exactly one --model");
    const HierarchyModel m = HierarchyModel::from_name(cfg.models[0], cfg.alpha);
    cfg.grids[cfg.models[0]] = a.grid.resolve(m);
  }
  for (const auto& t : a.thresholds) cfg.thresholds.set_from_string(t);
  cfg.timestamp = a.timestamp;
  if (a.serial) cfg.policy = ExecPolicy::serial;
  if (!cfg.is_default() || !a.thresholds.empty() || a.alpha != 1.0) cfg.suite = "custom";

  const VerificationReport report = run_suite(cfg);
  if (!a.output.empty()) {
    std::ofstream out(a.output, std::ios::binary);
    if (!out) throw usage_error("cannot open '" + a.output + "' for writing");
    out << to_json(report) << "\n";
  }
  if (!a.quiet) {
    for (const auto& c : report.checks) {
      if (c.status == Status::failed || c.status == Status::errored) {
        std::printf("%-8s %-58s %-18s value=%.3e threshold=%.3e %s\n", to_string(c.status), c.id.c_str(),
                    to_string(c.metric), c.value, c.threshold, c.note.c_str());
      }
    }
  }
  const Summary& s = report.summary;
  std::printf("%zu passed / %zu failed", s.passed, s.failed + s.errored);
  if (s.errored) std::printf(" (%zu errored)", s.errored);
  if (s.skipped) std::printf(", %zu skipped", s.skipped);
  std::printf("\n");
  return report.all_passed() ? kOk : kFailed;
}

// ---------------------------------------------------------------- lattice

struct LatticeArgs {
  std::string model = "oscillator";
  int n_max = 3;
};

int cmd_lattice(const LatticeArgs& a) {
  const HierarchyModel m = HierarchyModel::from_name(a.model);
  if (a.n_max < 0 || a.n_max > 12) throw usage_error("--n-max must lie in 0..12");
  std::set<QuantumNumbers> physical;
  for (const auto& q : m.lattice(a.n_max)) physical.insert(q);
  std::set<QuantumNumbers> half;
  if (m.family() == Family::coulomb) {
    for (const auto& p : physical)
      for (int i : {1, 2}) {
        const QuantumNumbers s = m.step(i, p);
        if (s.n <= Rational(a.n_max) && m.is_eigenlevel(s) && !physical.count(s)) half.insert(s);
      }
  }
  std::set<QuantumNumbers> shown = physical;
  shown.insert(half.begin(), half.end());

  const Rational unit = half.empty() ? Rational(1) : kHalf;
  Rational l_lo = shown.begin()->l;
  Rational l_hi = l_lo;
  Rational n_lo = shown.begin()->n;
  Rational n_hi = n_lo;
  for (const auto& q : shown) {
    l_lo = std::min(l_lo, q.l);
    l_hi = std::max(l_hi, q.l);
    n_lo = std::min(n_lo, q.n);
    n_hi = std::max(n_hi, q.n);
  }
  std::printf("%s lattice, n <= %d   o physical level", m.name().c_str(), a.n_max);
  if (!half.empty()) std::printf("   * half-step level");
  std::printf("\n\n");
  int width = 3;
  for (Rational l = l_lo; l <= l_hi; l += unit) width = std::max(width, static_cast<int>(l.str().size()) + 1);
  for (Rational n = n_hi; n >= n_lo; n -= unit) {
    std::printf("n=%-5s", n.str().c_str());
    for (Rational l = l_lo; l <= l_hi; l += unit) {
      const QuantumNumbers q{n, l};
      std::printf("%*c%*s", width / 2 + 1, physical.count(q) ? 'o' : half.count(q) ? '*' : '.', width - width / 2 - 1, "");
    }
    std::printf("\n");
  }
  std::printf("%7s", "l=");
  for (Rational l = l_lo; l <= l_hi; l += unit) {
    const std::string s = l.str();
    const int pad = width / 2 + 1 - static_cast<int>(s.size() + 1) / 2;
    std::printf("%*s%-*s", pad, "", width - pad, s.c_str());
  }
  std::printf("\n\nsteps:");
  for (int i : {1, 2}) {
    const QuantumNumbers d = m.step(i, {0, 0});
    std::printf("  A%d %+g,%+g  B%d %+g,%+g", i, d.n.to_double(), d.l.to_double(), i, -d.n.to_double(),
                -d.l.to_double());
  }
  std::printf("\n\narrows:\n");
  for (const auto& p : shown) {
    std::string line;
    for (int i : {1, 2}) {
      for (Move mv : {Move::A, Move::B}) {
        const QuantumNumbers t = m.move_target(i, mv, p);
        if (shown.count(t)) line += std::string("  ") + (mv == Move::A ? "A" : "B") + std::to_string(i) + "->" + t.str();
      }
    }
    std::printf("  %-10s%s\n", p.str().c_str(), line.c_str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ladder operators of the refined factorization: spectra, states, verification"};
  app.require_subcommand(1);

  SpectrumArgs sp;
  auto* spectrum = app.add_subcommand("spectrum", "Oracle eigenvalues against the closed formulas");
  spectrum->add_option("--model", sp.model, "oscillator | morse | coulomb")->required();
  spectrum->add_option("--alpha", sp.alpha, "Morse range parameter");
  spectrum->add_option("--l", sp.l, "Channel label (integer, p/q or decimal)");
  spectrum->add_option("--k", sp.k, "Number of levels");
  spectrum->add_option("--csv", sp.csv, "Also write the table as CSV");
  sp.grid.add(spectrum);

  StateArgs st;
  auto* state = app.add_subcommand("state", "Ladder-built normalized state as x,psi CSV");
  state->add_option("--model", st.model, "oscillator | morse | coulomb")->required();
  state->add_option("--alpha", st.alpha, "Morse range parameter");
  state->add_option("--n", st.n, "n label");
  state->add_option("--l", st.l, "l label");
  state->add_option("-o,--output", st.output, "CSV path (stdout if omitted)");
  state->add_flag("--sparkline", st.spark, "Print an ASCII profile of |psi|");
  st.grid.add(state);

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->set_config("--config", "", "Flat key=value file mirroring the flags");
  verify->add_flag("--all", vf.all, "Every check for every model (the default)");
  verify->add_option("--model", vf.models, "Restrict to these models");
  verify->add_option("--check", vf.checks, "Restrict to these check groups");
  verify->add_option("--threshold", vf.thresholds, "Override a threshold, name=value");
  verify->add_option("--alpha", vf.alpha, "Morse range parameter");
  verify->add_option("-o,--output", vf.output, "JSON report path");
  verify->add_option("--timestamp", vf.timestamp, "Report timestamp (default SOURCE_DATE_EPOCH or the epoch)");
  verify->add_flag("--serial", vf.serial, "Run checks on one thread");
  verify->add_flag("--quiet", vf.quiet, "Only print the summary line");
  vf.grid.add(verify);

  LatticeArgs la;
  auto* lattice = app.add_subcommand("lattice", "Diagram of lattice points and ladder arrows");
  lattice->add_option("--model", la.model, "oscillator | morse | coulomb")->required();
  lattice->add_option("--n-max", la.n_max, "Largest n shown (<= 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(sp);
    if (*state) return cmd_state(st);
    if (*verify) return cmd_verify(vf);
    if (*lattice) return cmd_lattice(la);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
