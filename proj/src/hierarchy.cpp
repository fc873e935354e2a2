#include "ladderlab/hierarchy.hpp"

#include <cmath>

#include "ladderlab/errors.hpp"

namespace ladderlab {

const char* to_string(Family f) {
  switch (f) {
    case Family::oscillator: return "oscillator";
    case Family::morse: return "morse";
    case Family::coulomb: return "coulomb";
  }
  return "?";
}

const char* to_string(QuadraticKind k) {
  switch (k) {
    case QuadraticKind::raise_n: return "raise_n";
    case QuadraticKind::lower_n: return "lower_n";
    case QuadraticKind::raise_l: return "raise_l";
    case QuadraticKind::lower_l: return "lower_l";
    case QuadraticKind::energy_preserving: return "energy_preserving";
  }
  return "?";
}

QuadraticKind quadratic_kind_from_name(const std::string& name) {
  for (auto k : {QuadraticKind::raise_n, QuadraticKind::lower_n, QuadraticKind::raise_l,
                 QuadraticKind::lower_l, QuadraticKind::energy_preserving}) {
    if (name == to_string(k)) return k;
  }
  throw usage_error("unknown quadratic kind '" + name + "'");
}

HierarchyModel HierarchyModel::oscillator() { return HierarchyModel(Family::oscillator, 1.0); }

HierarchyModel HierarchyModel::morse(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw usage_error("Morse alpha must be positive");
  return HierarchyModel(Family::morse, alpha);
}

HierarchyModel HierarchyModel::coulomb() { return HierarchyModel(Family::coulomb, 1.0); }

HierarchyModel HierarchyModel::from_name(const std::string& name, double alpha) {
  if (name == "oscillator") return oscillator();
  if (name == "morse") return morse(alpha);
  if (name == "coulomb") return coulomb();
  throw usage_error("unknown model '" + name + "' (expected oscillator, morse or coulomb)");
}

DomainKind HierarchyModel::domain_kind() const {
  return family_ == Family::morse ? DomainKind::full_line : DomainKind::half_line;
}

GridSpec HierarchyModel::default_grid_spec() const {
  switch (family_) {
    case Family::oscillator: return {1e-4, 12.0, 4001};
    case Family::morse: return {-12.0, 6.0, 4001};
    case Family::coulomb: return {1e-5, 60.0, 8001};
  }
  return {};
}

Grid HierarchyModel::default_grid() const {
  const GridSpec s = default_grid_spec();
  return Grid::build(domain_kind(), s.x_min, s.x_max, s.count);
}

double HierarchyModel::potential(double l, double x) const {
  if (domain_kind() == DomainKind::half_line && !(x > 0.0)) {
    throw usage_error("potential evaluated at r <= 0 on the half-line");
  }
  const double barrier = (2.0 * l + 1.0) * (2.0 * l - 1.0) / (4.0 * x * x);
  switch (family_) {
    case Family::oscillator: return x * x + barrier;
    case Family::coulomb: return barrier - 2.0 / x;
    case Family::morse: {
      const double y = std::exp(alpha_ * x);
      return 0.25 * alpha_ * alpha_ * (y * y - 2.0 * (l + 1.0) * y);
    }
  }
  return 0.0;
}

Coefficient HierarchyModel::potential_function(double l) const {
  const HierarchyModel self = *this;
  return [self, l](double x) { return self.potential(l, x); };
}

double HierarchyModel::regular_potential(double l, double x) const {
  switch (family_) {
    case Family::oscillator: return x * x;
    case Family::coulomb: return -2.0 / x;
    case Family::morse: return potential(l, x);
  }
  return 0.0;
}

double HierarchyModel::energy(Rational n, Rational) const {
  const double nn = n.to_double();
  switch (family_) {
    case Family::oscillator: return 2.0 * nn + 2.0;
    case Family::morse: return -0.25 * alpha_ * alpha_ * nn * nn;
    case Family::coulomb: {
      const double d = nn + 0.5;
      return -1.0 / (d * d);
    }
  }
  return 0.0;
}

std::vector<QuantumNumbers> HierarchyModel::lattice(int n_max) const {
  if (n_max < 0) throw usage_error("n_max must be non-negative");
  std::vector<QuantumNumbers> out;
  switch (family_) {
    case Family::oscillator:
      for (int n = 0; n <= n_max; ++n)
        for (int l = n % 2; l <= n; l += 2) out.push_back({n, l});
      break;
    case Family::morse:
      for (int n = 1; n <= n_max; ++n)
        for (int l = n; l <= n_max; l += 2) out.push_back({n, l});
      break;
    case Family::coulomb:
      for (int n = 0; n <= n_max; ++n)
        for (int l = 0; l <= n; ++l) out.push_back({n, l});
      break;
  }
  return out;
}

bool HierarchyModel::is_eigenlevel(const QuantumNumbers& q) const {
  switch (family_) {
    case Family::oscillator: {
      const Rational k = q.n - q.l.abs();
      return k.is_integer() && k >= Rational(0) && k.num() % 2 == 0;
    }
    case Family::coulomb: {
      const Rational k = q.n - q.l.abs();
      return k.is_integer() && k >= Rational(0);
    }
    case Family::morse: {
      const Rational k = q.l - q.n;
      return k.is_integer() && k >= Rational(0) && k.num() % 2 == 0 && q.n > Rational(0);
    }
  }
  return false;
}

bool HierarchyModel::is_physical(const QuantumNumbers& q) const {
  if (!q.n.is_integer() || !q.l.is_integer()) return false;
  if (family_ == Family::coulomb && q.l < Rational(0)) return false;
  return is_eigenlevel(q);
}

bool HierarchyModel::is_normalizable(const QuantumNumbers& q) const {
  if (family_ == Family::morse) return q.n > Rational(0);
  return true;
}

bool HierarchyModel::has_ground_state(Rational l) const {
  if (family_ == Family::morse) return l > Rational(0);
  return true;
}

Rational HierarchyModel::channel(Rational l) const { return family_ == Family::morse ? l : l.abs(); }

void HierarchyModel::require_index(int i) const {
  if (i != 1 && i != 2) throw usage_error("pair index must be 1 or 2");
}

void HierarchyModel::require_coulomb_index(const QuantumNumbers& q) const {
  if (family_ == Family::coulomb && !(q.n > Rational(-1, 2))) {
    throw usage_error("Coulomb operators need n > -1/2, got n = " + q.n.str());
  }
}

QuantumNumbers HierarchyModel::delta(int i) const {
  require_index(i);
  const int s = i == 1 ? 1 : -1;
  switch (family_) {
    case Family::oscillator: return {1, s};
    case Family::morse: return {s, 1};
    case Family::coulomb: return {kHalf, Rational(s, 2)};
  }
  return {};
}

QuantumNumbers HierarchyModel::step(int i, const QuantumNumbers& q) const { return q + delta(i); }

QuantumNumbers HierarchyModel::step_inverse(int i, const QuantumNumbers& q) const { return q - delta(i); }

double HierarchyModel::phi(int i, const QuantumNumbers& q) const {
  require_index(i);
  const double n = q.n.to_double();
  const double l = q.l.to_double();
  switch (family_) {
    case Family::oscillator: return i == 1 ? -(n + l + 2.0) / 2.0 : -(n - l + 2.0) / 2.0;
    case Family::morse: return i == 1 ? -(l + n + 2.0) / 2.0 : -(l - n + 2.0) / 2.0;
    case Family::coulomb: return i == 1 ? -(l + n + 1.0) : l - n - 1.0;
  }
  return 0.0;
}

Coefficient HierarchyModel::h_factor(const QuantumNumbers& q) const {
  switch (family_) {
    case Family::oscillator: return [](double) { return -0.25; };
    case Family::morse: {
      const double a = alpha_;
      return [a](double x) { return -std::exp(-a * x) / (a * a); };
    }
    case Family::coulomb: {
      const double n = q.n.to_double();
      return [n](double r) { return -(2.0 * n + 1.0) * r / 4.0; };
    }
  }
  return {};
}

namespace {

std::string op_name(const char* base, int i, const QuantumNumbers& q) {
  return std::string(base) + std::to_string(i) + q.str();
}

}  // namespace

OperatorChain HierarchyModel::A(int i, const QuantumNumbers& q) const {
  require_index(i);
  require_coulomb_index(q);
  const double n = q.n.to_double();
  const double l = q.l.to_double();
  const std::string name = op_name("A", i, q);
  switch (family_) {
    case Family::oscillator: {
      auto half = [](double) { return 0.5; };
      if (i == 1) return OperatorChain(name, {Differential{half, [l](double r) { return -0.5 * (r + (l + 0.5) / r); }}});
      return OperatorChain(name, {Differential{half, [l](double r) { return 0.5 * (-r + (l - 0.5) / r); }}});
    }
    case Family::morse: {
      const double a = alpha_;
      const double s = i == 1 ? -1.0 : 1.0;
      return OperatorChain(name, {Differential{[a](double x) { return std::exp(-0.5 * a * x) / a; },
                                               [a, n, s](double x) {
                                                 return -0.5 * std::exp(0.5 * a * x) + s * 0.5 * n * std::exp(-0.5 * a * x);
                                               }}});
    }
    case Family::coulomb: {
      const double c = (2.0 * n + 2.0) / (2.0 * n + 1.0);
      const double k = 2.0 * n + 1.0;
      const double scale = std::sqrt(c) * std::sqrt(k);
      const double t = i == 1 ? -(2.0 * l + 1.0) / 4.0 : (2.0 * l - 1.0) / 4.0;
      return OperatorChain(name, {Dilation{1.0 / c}, Scalar{[scale](double) { return scale; }},
                                  Differential{[](double r) { return 0.5 * std::sqrt(r); },
                                               [k, t](double r) { return -std::sqrt(r) / k + t / std::sqrt(r); }}});
    }
  }
  throw usage_error("unknown family");
}

OperatorChain HierarchyModel::B(int i, const QuantumNumbers& q) const {
  require_index(i);
  require_coulomb_index(q);
  const double n = q.n.to_double();
  const double l = q.l.to_double();
  const std::string name = op_name("B", i, q);
  switch (family_) {
    case Family::oscillator: {
      auto half = [](double) { return 0.5; };
      if (i == 1) return OperatorChain(name, {Differential{half, [l](double r) { return 0.5 * (r + (l + 0.5) / r); }}});
      return OperatorChain(name, {Differential{half, [l](double r) { return 0.5 * (r - (l - 0.5) / r); }}});
    }
    case Family::morse: {
      const double a = alpha_;
      const double m = i == 1 ? (n + 1.0) / 2.0 : -(n - 1.0) / 2.0;
      return OperatorChain(name, {Differential{[a](double x) { return std::exp(-0.5 * a * x) / a; },
                                               [a, m](double x) {
                                                 return 0.5 * std::exp(0.5 * a * x) + m * std::exp(-0.5 * a * x);
                                               }}});
    }
    case Family::coulomb: {
      const double c = (2.0 * n + 2.0) / (2.0 * n + 1.0);
      const double k = 2.0 * n + 1.0;
      const double scale = std::sqrt(k) / std::sqrt(c);
      const double t = i == 1 ? l / 2.0 : -l / 2.0;
      return OperatorChain(name, {Differential{[](double r) { return 0.5 * std::sqrt(r); },
                                               [k, t](double r) { return std::sqrt(r) / k + t / std::sqrt(r); }},
                                  Scalar{[scale](double) { return scale; }}, Dilation{c}});
    }
  }
  throw usage_error("unknown family");
}

RefinedPair HierarchyModel::refined_pair(int i, const QuantumNumbers& q) const {
  return RefinedPair{i, A(i, q), B(i, q), phi(i, q), step(i, q)};
}

OperatorChain HierarchyModel::move_chain(int i, Move m, const QuantumNumbers& at) const {
  return m == Move::A ? A(i, at) : B(i, step_inverse(i, at));
}

QuantumNumbers HierarchyModel::move_target(int i, Move m, const QuantumNumbers& at) const {
  return m == Move::A ? step(i, at) : step_inverse(i, at);
}

LabelShift HierarchyModel::label_shift(int i, Move m) const {
  require_index(i);
  const int sign = i == 1 ? -1 : 1;  // (-1)^i
  switch (family_) {
    case Family::oscillator:
      // [N,B] = -B, [L,B] = (-1)^i B;  [N,A] = A, [L,A] = -(-1)^i A
      return m == Move::B ? LabelShift{-1, sign} : LabelShift{1, -sign};
    case Family::morse:
      // [L,B] = -B, [N,B] = (-1)^i B;  [L,A] = A, [N,A] = -(-1)^i A
      return m == Move::B ? LabelShift{sign, -1} : LabelShift{-sign, 1};
    case Family::coulomb:
      // [N,B] = -B/2, [L,B] = (-1)^i B/2;  [N,A] = A/2, [L,A] = -(-1)^i A/2
      return m == Move::B ? LabelShift{Rational(-1, 2), Rational(sign, 2)}
                          : LabelShift{Rational(1, 2), Rational(-sign, 2)};
  }
  return {};
}

ConventionalPair HierarchyModel::conventional(Rational label, OscillatorCase c) const {
  const double l = label.to_double();
  switch (family_) {
    case Family::coulomb: {
      if (2.0 * l + 1.0 == 0.0) throw usage_error("Coulomb factorization undefined at l = -1/2");
      const double k = 2.0 * l + 1.0;
      Coefficient w = [k](double r) { return -k / (2.0 * r) + 2.0 / k; };
      return ConventionalPair{OperatorChain("X+" + label.str(), {Differential{[](double) { return -1.0; }, w}}),
                              OperatorChain("X-" + label.str(), {Differential{[](double) { return 1.0; }, w}}),
                              4.0 / (k * k), label, label + Rational(1), 0.0, 0.0, {0, 1}};
    }
    case Family::oscillator: {
      if (c == OscillatorCase::a) {
        Coefficient w = [l](double r) { return -r - (l + 0.5) / r; };
        return ConventionalPair{OperatorChain("X+" + label.str(), {Differential{[](double) { return -1.0; }, w}}),
                                OperatorChain("X-" + label.str(), {Differential{[](double) { return 1.0; }, w}}),
                                4.0 * l + 2.0, label, label + Rational(1), -2.0 * l, -2.0 * (l + 1.0), {1, 1}};
      }
      Coefficient w = [l](double r) { return r - (l + 0.5) / r; };
      return ConventionalPair{OperatorChain("Z+" + label.str(), {Differential{[](double) { return -1.0; }, w}}),
                              OperatorChain("Z-" + label.str(), {Differential{[](double) { return 1.0; }, w}}),
                              -4.0 * l - 2.0, label, label + Rational(1), 2.0 * l, 2.0 * (l + 1.0), {-1, 1}};
    }
    case Family::morse: {
      const double a = alpha_;
      Coefficient w = [a, l](double x) { return -0.5 * a * (std::exp(a * x) - (2.0 * l + 2.0)); };
      return ConventionalPair{OperatorChain("X+" + label.str(), {Differential{[](double) { return -1.0; }, w}}),
                              OperatorChain("X-" + label.str(), {Differential{[](double) { return 1.0; }, w}}),
                              a * a * (l + 1.0) * (l + 1.0), label * Rational(2), label * Rational(2) + Rational(2),
                              0.0, 0.0, {0, 2}};
    }
  }
  throw usage_error("unknown family");
}

QuadraticOperator HierarchyModel::quadratic(QuadraticKind kind, const QuantumNumbers& source) const {
  struct Step {
    int i;
    Move m;
  };
  Step inner{};
  Step outer{};
  if (kind == QuadraticKind::energy_preserving) kind = QuadraticKind::raise_l;
  switch (family_) {
    case Family::oscillator:
      switch (kind) {
        case QuadraticKind::raise_n: inner = {2, Move::A}, outer = {1, Move::A}; break;
        case QuadraticKind::lower_n: inner = {2, Move::B}, outer = {1, Move::B}; break;
        case QuadraticKind::raise_l: inner = {2, Move::B}, outer = {1, Move::A}; break;
        default: inner = {1, Move::B}, outer = {2, Move::A}; break;
      }
      break;
    case Family::morse:
      switch (kind) {
        case QuadraticKind::raise_n: inner = {2, Move::B}, outer = {1, Move::A}; break;
        case QuadraticKind::lower_n: inner = {1, Move::B}, outer = {2, Move::A}; break;
        case QuadraticKind::raise_l: inner = {2, Move::A}, outer = {1, Move::A}; break;
        default: inner = {2, Move::B}, outer = {1, Move::B}; break;
      }
      break;
    case Family::coulomb:
      switch (kind) {
        case QuadraticKind::raise_n: inner = {2, Move::A}, outer = {1, Move::A}; break;
        case QuadraticKind::lower_n: inner = {2, Move::B}, outer = {1, Move::B}; break;
        case QuadraticKind::raise_l: inner = {1, Move::A}, outer = {2, Move::B}; break;
        default: inner = {2, Move::A}, outer = {1, Move::B}; break;
      }
      break;
  }
  const QuantumNumbers mid = move_target(inner.i, inner.m, source);
  const QuantumNumbers target = move_target(outer.i, outer.m, mid);
  OperatorChain chain = compose(move_chain(outer.i, outer.m, mid), move_chain(inner.i, inner.m, source));
  return QuadraticOperator{kind, std::move(chain), source, target};
}

std::optional<OperatorChain> HierarchyModel::displayed_quadratic(QuadraticKind kind,
                                                                 const QuantumNumbers& source) const {
  if (kind == QuadraticKind::energy_preserving) kind = QuadraticKind::raise_l;
  const double n = source.n.to_double();
  const double ls = source.l.to_double();
  if (family_ == Family::morse) {
    const double a = alpha_;
    if (kind == QuadraticKind::raise_l) {
      return OperatorChain("A1A2" + source.str(), {Differential{[a](double) { return -1.0 / a; },
                                                               [a, ls](double x) { return 0.5 * (std::exp(a * x) - (ls + 2.0)); }}});
    }
    if (kind == QuadraticKind::lower_l) {
      return OperatorChain("B1B2" + source.str(), {Differential{[a](double) { return 1.0 / a; },
                                                               [a, ls](double x) { return 0.5 * (std::exp(a * x) - ls); }}});
    }
  }
  if (family_ == Family::coulomb) {
    if (kind == QuadraticKind::raise_l) {
      const double k = 2.0 * ls + 1.0;
      const double K = k * (2.0 * n + 1.0) / 2.0;
      return OperatorChain("B2A1" + source.str(), {Differential{[K](double) { return -0.5 * K; },
                                                               [K, k](double r) { return K * (k / (4.0 * r) - 1.0 / k); }}});
    }
    if (kind == QuadraticKind::lower_l) {
      const double k = 2.0 * (ls - 1.0) + 1.0;
      const double K = k * (2.0 * n + 1.0) / 2.0;
      return OperatorChain("B1A2" + source.str(), {Differential{[K](double) { return 0.5 * K; },
                                                               [K, k](double r) { return K * (k / (4.0 * r) - 1.0 / k); }}});
    }
  }
  return std::nullopt;
}

}  // namespace ladderlab
