#include "ladderlab/fd_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ladderlab/errors.hpp"

namespace ladderlab {

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                 0.4786286704993665, 0.2369268850561891};

// int_0^t V(r) r dr
double weighted_integral(const HierarchyModel& model, double l, double t) {
  double sum = 0.0;
  for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
    const double r = 0.5 * t * (kGaussNodes[k] + 1.0);
    sum += kGaussWeights[k] * model.regular_potential(l, r) * r;
  }
  return 0.5 * t * sum;
}

void require_domain(const HierarchyModel& model, const Grid& grid) {
  if (grid.kind() != model.domain_kind()) {
    throw usage_error(model.name() + " needs a " + to_string(model.domain_kind()) + " grid");
  }
}

// Tridiagonal LU with partial pivoting (LAPACK gttrf layout) and solve.
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<std::size_t> ipiv;
};

TridiagonalLU factor_shifted(const TridiagonalOperator& t, double shift) {
  const std::size_t m = t.diagonal.size();
  TridiagonalLU lu;
  lu.d.resize(m);
  lu.dl = t.off_diagonal;
  lu.du = t.off_diagonal;
  lu.du2.assign(m > 2 ? m - 2 : 0, 0.0);
  lu.ipiv.resize(m);
  for (std::size_t i = 0; i < m; ++i) lu.d[i] = t.diagonal[i] - shift;

  double scale = 0.0;
  for (double v : t.diagonal) scale = std::max(scale, std::abs(v));
  for (double v : t.off_diagonal) scale = std::max(scale, std::abs(v));
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);

  for (std::size_t i = 0; i < m; ++i) lu.ipiv[i] = i;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (std::abs(lu.d[i]) >= std::abs(lu.dl[i])) {
      if (lu.d[i] == 0.0) lu.d[i] = tiny;
      const double fact = lu.dl[i] / lu.d[i];
      lu.dl[i] = fact;
      lu.d[i + 1] -= fact * lu.du[i];
    } else {
      const double fact = lu.d[i] / lu.dl[i];
      lu.d[i] = lu.dl[i];
      lu.dl[i] = fact;
      const double temp = lu.du[i];
      lu.du[i] = lu.d[i + 1];
      lu.d[i + 1] = temp - fact * lu.d[i + 1];
      if (i + 2 < m) {
        lu.du2[i] = lu.du[i + 1];
        lu.du[i + 1] = -fact * lu.du[i + 1];
      }
      lu.ipiv[i] = i + 1;
    }
  }
  if (lu.d[m - 1] == 0.0) lu.d[m - 1] = tiny;
  return lu;
}

void solve(const TridiagonalLU& lu, std::vector<double>& b) {
  const std::size_t m = b.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (lu.ipiv[i] == i) {
      b[i + 1] -= lu.dl[i] * b[i];
    } else {
      const double temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - lu.dl[i] * b[i];
    }
  }
  b[m - 1] /= lu.d[m - 1];
  if (m > 1) b[m - 2] = (b[m - 2] - lu.du[m - 2] * b[m - 1]) / lu.d[m - 2];
  for (std::size_t k = m - 2; k-- > 0;) {
    b[k] = (b[k] - lu.du[k] * b[k + 1] - lu.du2[k] * b[k + 2]) / lu.d[k];
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void unit(std::vector<double>& v) {
  const double n = std::sqrt(dot(v, v));
  if (!(n > 0.0) || !std::isfinite(n)) throw numerical_error("inverse iteration produced a zero vector");
  for (double& x : v) x /= n;
}

}  // namespace

TridiagonalOperator assemble_with_potential(const Grid& grid, const Coefficient& potential) {
  const std::size_t m = grid.count() - 2;
  const double h = grid.spacing();
  TridiagonalOperator t{std::vector<double>(m), std::vector<double>(m - 1, -1.0 / (h * h)), grid, Rational(0),
                        "custom", Scheme::standard};
  for (std::size_t j = 0; j < m; ++j) {
    const double v = potential(grid.x(j + 1));
    if (!std::isfinite(v)) throw numerical_error("potential is not finite on the grid");
    t.diagonal[j] = 2.0 / (h * h) + v;
  }
  return t;
}

TridiagonalOperator assemble(const HierarchyModel& model, Rational l, const Grid& grid, Scheme scheme) {
  require_domain(model, grid);
  const double ld = l.to_double();
  if (scheme == Scheme::automatic) {
    scheme = (grid.kind() == DomainKind::half_line && ld * ld < 0.25) ? Scheme::radial_flux : Scheme::standard;
  }
  if (scheme == Scheme::radial_flux && grid.kind() != DomainKind::half_line) {
    throw usage_error("the radial flux scheme needs a half-line grid");
  }
  if (scheme == Scheme::standard) {
    TridiagonalOperator t = assemble_with_potential(grid, model.potential_function(ld));
    t.l = l;
    t.model = model.name();
    return t;
  }

  const std::size_t m = grid.count() - 2;
  const double h = grid.spacing();
  std::vector<double> r(m), mass(m), stiff(m, 0.0), face(m - 1);
  for (std::size_t j = 0; j < m; ++j) r[j] = grid.x(j + 1);
  for (std::size_t j = 0; j + 1 < m; ++j) face[j] = 0.5 * (r[j] + r[j + 1]);
  for (std::size_t j = 0; j < m; ++j) {
    const double left = j == 0 ? 0.0 : face[j - 1];
    const double right = j + 1 < m ? face[j] : r[j] + 0.5 * h;
    stiff[j] = (left + right) / h;
    mass[j] = r[j] * h;
  }
  const double top = r[0] + 0.5 * h;
  mass[0] = 0.5 * top * top;

  TridiagonalOperator t{std::vector<double>(m), std::vector<double>(m - 1), grid, l, model.name(), scheme};
  const double l2 = ld * ld;
  for (std::size_t j = 0; j < m; ++j) {
    const double pot = j == 0 ? l2 * mass[0] / (r[0] * r[0]) + weighted_integral(model, ld, top)
                              : (l2 / (r[j] * r[j]) + model.regular_potential(ld, r[j])) * r[j] * h;
    t.diagonal[j] = (stiff[j] + pot) / mass[j];
  }
  for (std::size_t j = 0; j + 1 < m; ++j) t.off_diagonal[j] = -face[j] / (h * std::sqrt(mass[j] * mass[j + 1]));
  for (double v : t.diagonal) {
    if (!std::isfinite(v)) throw numerical_error("potential is not finite on the grid");
  }
  return t;
}

std::size_t sturm_count(const TridiagonalOperator& t, double lambda) {
  const std::size_t m = t.diagonal.size();
  std::size_t count = 0;
  double q = t.diagonal[0] - lambda;
  const double guard = std::numeric_limits<double>::min();
  for (std::size_t j = 0;; ++j) {
    if (q == 0.0) q = -guard;
    if (q < 0.0) ++count;
    if (j + 1 == m) break;
    q = t.diagonal[j + 1] - lambda - t.off_diagonal[j] * t.off_diagonal[j] / q;
  }
  return count;
}

std::vector<Eigenpair> lowest_eigenpairs(const TridiagonalOperator& t, int k) {
  if (k < 1 || k > 12) throw usage_error("lowest_eigenpairs supports 1 <= k <= 12");
  const std::size_t m = t.diagonal.size();
  if (static_cast<std::size_t>(k) > m) throw usage_error("more eigenpairs requested than grid nodes");

  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (std::size_t j = 0; j < m; ++j) {
    const double rad = (j > 0 ? std::abs(t.off_diagonal[j - 1]) : 0.0) + (j + 1 < m ? std::abs(t.off_diagonal[j]) : 0.0);
    lo = std::min(lo, t.diagonal[j] - rad);
    hi = std::max(hi, t.diagonal[j] + rad);
  }

  std::vector<double> values(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    double a = lo;
    double b = hi;
    int iter = 0;
    while (b - a > 1e-12 && iter < 200) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (sturm_count(t, mid) > static_cast<std::size_t>(i)) b = mid;
      else a = mid;
      ++iter;
    }
    values[static_cast<std::size_t>(i)] = 0.5 * (a + b);
  }

  const double h = t.grid.spacing();
  std::vector<std::vector<double>> vectors;
  std::vector<Eigenpair> out;
  for (int i = 0; i < k; ++i) {
    const double lambda = values[static_cast<std::size_t>(i)];
    const TridiagonalLU lu = factor_shifted(t, lambda);
    std::vector<double> x(m);
    for (std::size_t j = 0; j < m; ++j) x[j] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(j) + 0.1 * i);
    unit(x);
    bool converged = false;
    for (int sweep = 0; sweep < 50 && !converged; ++sweep) {
      std::vector<double> y = x;
      solve(lu, y);
      for (const auto& prev : vectors) {
        const double c = dot(prev, y);
        for (std::size_t j = 0; j < m; ++j) y[j] -= c * prev[j];
      }
      unit(y);
      const double agreement = std::abs(dot(x, y));
      x = std::move(y);
      converged = sweep > 0 && 1.0 - agreement < 1e-14;
    }
    if (!converged) throw numerical_error("inverse iteration did not converge");
    vectors.push_back(x);

    std::vector<double> full(t.grid.count(), 0.0);
    const double s = 1.0 / std::sqrt(h);
    for (std::size_t j = 0; j < m; ++j) full[j + 1] = x[j] * s;
    Wavefunction psi = normalize(Wavefunction(t.grid, std::move(full)));
    psi.hierarchy = t.model;
    out.push_back({lambda, std::move(psi)});
  }
  return out;
}

int level_index(const HierarchyModel& model, const QuantumNumbers& q) {
  if (!model.is_eigenlevel(q)) throw usage_error(q.str() + " is not a bound level of the " + model.name() + " hierarchy");
  Rational k = model.family() == Family::morse ? q.l - q.n : q.n - q.l.abs();
  if (model.family() != Family::coulomb) k = k / Rational(2);
  return static_cast<int>(k.to_integer());
}

Rational level_label(const HierarchyModel& model, Rational l, int nu) {
  switch (model.family()) {
    case Family::oscillator: return l.abs() + Rational(2 * nu);
    case Family::coulomb: return l.abs() + Rational(nu);
    case Family::morse: return l - Rational(2 * nu);
  }
  return {};
}

Eigenpair oracle_state(const HierarchyModel& model, const QuantumNumbers& q, const Grid& grid) {
  const int nu = level_index(model, q);
  if (!model.is_normalizable(q)) throw usage_error(q.str() + " is not normalizable");
  if (nu > 10) throw usage_error("oracle states are limited to the 11 lowest levels of a channel");
  const Rational l = model.channel(q.l);
  const double target = model.energy(q.n, q.l);

  double spacing = std::numeric_limits<double>::infinity();
  for (int nb : {nu - 1, nu + 1}) {
    if (nb < 0) continue;
    const QuantumNumbers other{level_label(model, l, nb), l};
    if (model.is_eigenlevel(other)) spacing = std::min(spacing, std::abs(model.energy(other.n, other.l) - target));
  }
  if (model.family() == Family::morse) spacing = std::min(spacing, std::abs(target));

  auto pairs = lowest_eigenpairs(assemble(model, l, grid), nu + 2 <= 12 ? nu + 2 : 12);
  std::size_t best = 0;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (std::abs(pairs[i].value - target) < std::abs(pairs[best].value - target)) best = i;
  }
  if (std::abs(pairs[best].value - target) > 0.1 * spacing) {
    throw numerical_error("no oracle level near E = " + std::to_string(target) + " for " + q.str() +
                          " (grid too coarse or box too small)");
  }
  Eigenpair out = std::move(pairs[best]);
  out.state.labels = q;
  out.state.hierarchy = model.name();
  return out;
}

}  // namespace ladderlab
