#include "ladderlab/ladder.hpp"

#include <cmath>

#include "ladderlab/errors.hpp"
#include "ladderlab/fd_oracle.hpp"

namespace ladderlab {

Wavefunction ground_state(const HierarchyModel& model, Rational l, const Grid& grid) {
  if (grid.kind() != model.domain_kind()) throw usage_error(model.name() + " needs a " + to_string(model.domain_kind()) + " grid");
  if (!model.has_ground_state(l)) throw usage_error("the " + model.name() + " channel l = " + l.str() + " has no bound ground state");
  const Rational ch = model.channel(l);
  const double p = ch.to_double() + 0.5;
  std::vector<double> logs(grid.count());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double x = grid.x(i);
    switch (model.family()) {
      case Family::oscillator: logs[i] = p * std::log(x) - 0.5 * x * x; break;
      case Family::coulomb: logs[i] = p * std::log(x) - x / p; break;
      case Family::morse: {
        const double a = model.alpha();
        logs[i] = 0.5 * ch.to_double() * a * x - 0.5 * std::exp(a * x);
        break;
      }
    }
  }
  double peak = logs[0];
  for (double v : logs) peak = std::max(peak, v);
  std::vector<double> values(logs.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::exp(logs[i] - peak);
  Wavefunction psi = normalize(Wavefunction(grid, std::move(values)));
  psi.labels = QuantumNumbers{model.family() == Family::morse ? l : ch, l};
  psi.hierarchy = model.name();
  return psi;
}

OperatorChain ground_annihilator(const HierarchyModel& model, Rational l) {
  if (!model.has_ground_state(l)) throw usage_error("the " + model.name() + " channel l = " + l.str() + " has no bound ground state");
  switch (model.family()) {
    case Family::oscillator: return model.conventional(l.abs(), OscillatorCase::b).x_minus;
    case Family::coulomb: return model.conventional(l.abs()).x_minus;
    case Family::morse: return model.conventional((l - Rational(2)) / Rational(2)).x_plus;
  }
  throw usage_error("unknown family");
}

LadderPath canonical_path(const HierarchyModel& model, const QuantumNumbers& target) {
  if (!model.is_eigenlevel(target)) {
    throw usage_error(target.str() + " is not on the " + model.name() + " lattice");
  }
  if (!model.is_normalizable(target)) throw usage_error(target.str() + " is not normalizable");
  // Ground state of channel m = (n + l)/2, then A2 moves, each trading one
  // unit of l for one of n (Morse: n down, l up).
  const Rational m = (target.n + target.l) / Rational(2);
  if (!model.has_ground_state(m)) {
    throw usage_error("no ladder path to " + target.str() + ": channel l = " + m.str() + " has no ground state");
  }
  LadderPath path;
  path.start = {m, m};
  path.end = target;
  const Rational span = model.family() == Family::morse ? target.l - target.n : target.n - target.l;
  const Rational per_move = model.family() == Family::coulomb ? Rational(1) : Rational(2);
  const auto moves = (span / per_move).to_integer();
  for (std::int64_t k = 0; k < moves; ++k) path.moves.push_back({2, Move::A});
  return path;
}

namespace {

// u = psi / r^p is smooth at the origin, but the one-sided stencil at the
// first sample disagrees with the centered ones at O(h^2), and dividing by
// r^p turns that into a kink that the next move differentiates. The first
// kOriginSamples values of u are re-extrapolated from a quadratic fitted on
// the following 3 kOriginSamples.
constexpr std::size_t kOriginSamples = 6;

void smooth_origin(Wavefunction& psi, double p) {
  const std::size_t k0 = kOriginSamples;
  const std::size_t k1 = 4 * kOriginSamples;
  if (psi.values.size() < 2 * k1) return;
  double m[3][4] = {};
  for (std::size_t i = k0; i < k1; ++i) {
    const double r = psi.grid.x(i);
    const double basis[3] = {1.0, r, r * r};
    const double u = psi.values[i] / std::pow(r, p);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) m[a][b] += basis[a] * basis[b];
      m[a][3] += basis[a] * u;
    }
  }
  for (int c = 0; c < 3; ++c) {
    for (int r = c + 1; r < 3; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  double coef[3];
  for (int r = 2; r >= 0; --r) {
    double v = m[r][3];
    for (int k = r + 1; k < 3; ++k) v -= m[r][k] * coef[k];
    coef[r] = v / m[r][r];
  }
  for (std::size_t i = 0; i < k0; ++i) {
    const double r = psi.grid.x(i);
    psi.values[i] = std::pow(r, p) * (coef[0] + r * (coef[1] + r * coef[2]));
  }
}

}  // namespace

Gauge state_gauge(const HierarchyModel& model, Rational l) {
  if (model.family() == Family::morse) {
    const double a = model.alpha();
    return {[a](double x) { return std::exp(-0.5 * std::exp(a * x)); },
            [a](double x) { return -0.5 * a * std::exp(a * x); }};
  }
  return power_gauge(model.channel(l).to_double() + 0.5);
}

Wavefunction walk(const HierarchyModel& model, const LadderPath& path, const Wavefunction& start,
                  const ApplyOptions& opts) {
  Wavefunction psi = start;
  QuantumNumbers at = path.start;
  for (const LadderStep& s : path.moves) {
    const double before = norm(psi);
    const OperatorChain op = model.move_chain(s.pair, s.move, at);
    const QuantumNumbers to = model.move_target(s.pair, s.move, at);
    Wavefunction next = apply_gauged(op, psi, state_gauge(model, at.l), state_gauge(model, to.l), opts);
    at = to;
    if (psi.grid.kind() == DomainKind::half_line) smooth_origin(next, model.channel(at.l).to_double() + 0.5);
    if (!(norm(next) >= 1e-12 * before)) {
      throw numerical_error("ladder step annihilated the state on the way to " + at.str());
    }
    psi = normalize(next);
    psi.labels = at;
    psi.hierarchy = model.name();
  }
  if (!(at == path.end)) throw numerical_error("ladder path does not end at " + path.end.str());
  return psi;
}

Wavefunction build_state(const HierarchyModel& model, const QuantumNumbers& q, const Grid& grid,
                         const ApplyOptions& opts) {
  const LadderPath path = canonical_path(model, q);
  Wavefunction ground = ground_state(model, path.start.l, grid);
  ground.labels = path.start;
  return walk(model, path, ground, opts);
}

double eigen_residual(const HierarchyModel& model, const Wavefunction& psi) {
  if (!psi.labels) throw usage_error("eigen_residual needs a labelled state");
  const QuantumNumbers q = *psi.labels;
  const Wavefunction hpsi = apply_hamiltonian(model.potential_function(q.l.to_double()), psi);
  const double e = model.energy(q.n, q.l);
  std::vector<double> r(psi.values.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = hpsi.values[i] - e * psi.values[i];
  const Window w = interior_window(psi.grid);
  return window_norm(psi.grid, r, w) / window_norm(psi.grid, psi.values, w);
}

LadderCoefficient ladder_coefficient(const HierarchyModel& model, const QuantumNumbers& source, const Grid& grid,
                                     OscillatorCase oc, double overlap_band, const ApplyOptions& opts) {
  Rational label = source.l;
  if (model.family() == Family::morse) {
    if (!(source.l / Rational(2)).is_integer()) throw usage_error("Morse ladder coefficients act on even labels");
    label = source.l / Rational(2);
  }
  const ConventionalPair pair = model.conventional(label, oc);
  Wavefunction psi = build_state(model, source, grid, opts);
  const Wavefunction image = apply(pair.x_minus, psi, opts);

  LadderCoefficient out{};
  out.source = source;
  out.target = source + pair.minus_delta;
  const double radicand = model.energy(source.n, source.l) + pair.shift_lower + pair.q;
  out.predicted = std::sqrt(std::max(0.0, radicand));

  if (!model.is_eigenlevel(out.target) || !model.is_normalizable(out.target)) {
    out.annihilated = true;
    out.c = window_norm(grid, image.values, interior_window(grid));
    out.overlap = 1.0;
    return out;
  }
  const Eigenpair target = oracle_state(model, out.target, grid);
  out.c = inner_product(image, target.state);
  out.overlap = std::abs(window_cosine(grid, image.values, target.state.values, interior_window(grid, overlap_band)));
  out.annihilated = false;
  return out;
}

}  // namespace ladderlab
