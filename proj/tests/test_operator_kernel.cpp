#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "ladderlab/errors.hpp"
#include "ladderlab/hierarchy.hpp"
#include "ladderlab/kernels.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/operator_chain.hpp"

using namespace ladderlab;

namespace {

double interior_max_error(const Grid& g, const std::vector<double>& v, double (*exact)(double)) {
  const Window w = interior_window(g);
  double m = 0.0;
  for (std::size_t i = w.begin; i < w.end; ++i) m = std::max(m, std::abs(v[i] - exact(g.x(i))));
  return m;
}

double gauss(double x) { return std::exp(-0.5 * x * x); }
double gauss_prime(double x) { return -x * std::exp(-0.5 * x * x); }

Wavefunction bump(const Grid& g, double c, double s, bool radial) {
  return Wavefunction::sample(g, [=](double x) {
    const double e = std::exp(-(x - c) * (x - c) / (2.0 * s * s));
    return radial ? std::sqrt(x) * e : e;
  });
}

double rel_window(const Grid& g, const std::vector<double>& a, const std::vector<double>& b) {
  const Window w = interior_window(g);
  return window_distance(g, a, b, w) / window_norm(g, b, w);
}

ApplyOptions serial_opts() {
  ApplyOptions o;
  o.policy = ExecPolicy::serial;
  return o;
}

}  // namespace

TEST_CASE("scalar one is the identity") {
  const Grid g = Grid::build(DomainKind::full_line, -5.0, 5.0, 501);
  const Wavefunction f = bump(g, 0.3, 0.8, false);
  const OperatorChain one("one", {Scalar{[](double) { return 1.0; }}});
  CHECK(apply(one, f).values == f.values);
}

TEST_CASE("derivative of a Gaussian is second order") {
  const OperatorChain d("d", {Differential{[](double) { return 1.0; }, [](double) { return 0.0; }}});
  // central difference error h^2/6 f3, f3 = (3x - x^3) exp(-x^2/2)
  double f3 = 0.0;
  for (double x = -8.0; x <= 8.0; x += 1e-4) f3 = std::max(f3, std::abs((3.0 * x - x * x * x) * gauss(x)));
  double prev = 0.0;
  for (std::size_t n : {401u, 801u, 1601u}) {
    const Grid g = Grid::build(DomainKind::full_line, -8.0, 8.0, n);
    const double err = interior_max_error(g, apply(d, Wavefunction::sample(g, gauss)).values, gauss_prime);
    const double h = g.spacing();
    CHECK(err <= 1.01 * f3 / 6.0 * h * h);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.02));
    prev = err;
  }
}

TEST_CASE("one-sided boundary stencils are exact on quadratics") {
  const Grid g = Grid::build(DomainKind::full_line, 0.0, 1.0, 17);
  const Wavefunction f = Wavefunction::sample(g, [](double x) { return 3.0 * x * x - x + 2.0; });
  std::vector<double> out(g.count());
  kernels::serial::derivative(g, f.values.data(), out.data());
  CHECK(out.front() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(out.back() == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(out[8] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("oscillator ground state is annihilated by its lowering operator") {
  // d/dr + r - 1/(2r) kills r^{1/2} exp(-r^2/2)
  const auto m = HierarchyModel::oscillator();
  const Grid g = Grid::build(DomainKind::half_line, 1e-4, 12.0, 16001);
  const Wavefunction psi = Wavefunction::sample(g, [](double r) { return std::sqrt(r) * std::exp(-0.5 * r * r); });
  const OperatorChain by_hand("w", {Differential{[](double) { return 1.0; }, [](double r) { return r - 0.5 / r; }}});
  const OperatorChain z = m.conventional(Rational(0), OscillatorCase::b).x_minus;
  const Window w = interior_window(g);
  const Window all{0, g.count()};
  CHECK(sup_norm(apply(by_hand, psi).values, w) / sup_norm(psi.values, all) <= 1e-6);
  CHECK(sup_norm(apply(z, psi).values, w) / sup_norm(psi.values, all) <= 1e-6);
}

TEST_CASE("dilation") {
  const Grid g = Grid::build(DomainKind::half_line, 1e-4, 12.0, 4001);
  const Wavefunction f = Wavefunction::sample(g, [](double r) { return std::exp(-r * r); });

  SUBCASE("mu = 1 is the identity") {
    const Wavefunction same = dilate(f, 1.0);
    for (std::size_t i = 0; i < f.values.size(); ++i) REQUIRE(same.values[i] == doctest::Approx(f.values[i]).epsilon(1e-14));
  }
  SUBCASE("exp(-r^2) at mu = 2") {
    const Wavefunction d = dilate(f, 2.0);
    const double err = interior_max_error(g, d.values, [](double r) { return std::exp(-4.0 * r * r); });
    CHECK(err <= 1e-8);
  }
  SUBCASE("composition D(mu) D(nu) = D(mu nu)") {
    const Wavefunction ab = dilate(dilate(f, 1.5), 0.8);
    const Wavefunction c = dilate(f, 1.2);
    const Window w = interior_window(g);
    CHECK(window_distance(g, ab.values, c.values, w) <= 1e-8);
  }
  SUBCASE("norm scales as mu^{-1/2}") {
    const Wavefunction psi = Wavefunction::sample(g, [](double r) { return r * std::exp(-0.5 * r * r); });
    for (double mu : {0.5, 0.8, 1.5, 2.0}) {
      const double ratio = std::pow(norm(dilate(psi, mu)), 2) * mu / std::pow(norm(psi), 2);
      CHECK(std::abs(ratio - 1.0) <= 1e-6);
    }
  }
  SUBCASE("rejects non-positive mu and runaway targets") {
    CHECK_THROWS_AS(dilate(f, 0.0), usage_error);
    CHECK_THROWS_AS(dilate(f, -1.0), usage_error);
    CHECK_THROWS_AS(dilate(f, 5.0), numerical_error);
    CHECK_THROWS_AS(dilate(f, 2.5), numerical_error);
    const Wavefunction flat = Wavefunction::sample(g, [](double) { return 1.0; });
    CHECK_THROWS_AS(dilate(flat, 1.5), numerical_error);
  }
}

TEST_CASE("commutator_apply of an operator with itself vanishes") {
  const auto m = HierarchyModel::oscillator();
  const Grid g = m.default_grid();
  const OperatorChain a = m.A(1, {2, 0});
  const Wavefunction c = commutator_apply(a, a, bump(g, 6.0, 0.9, true));
  for (double y : c.values) REQUIRE(y == 0.0);
}

TEST_CASE("oscillator commutators on a bump") {
  const auto m = HierarchyModel::oscillator();
  const Grid g = m.default_grid();
  const QuantumNumbers at{2, 0};
  const Wavefunction f = bump(g, 6.0, 0.9, true);
  const Window w = interior_window(g);
  auto two = [&](int i, Move mi, int j, Move mj) {
    const QuantumNumbers mid = m.move_target(j, mj, at);
    return apply(m.move_chain(i, mi, mid), apply(m.move_chain(j, mj, at), f));
  };
  SUBCASE("[A1,B1] = 1") {
    const Wavefunction ab = two(1, Move::A, 1, Move::B);
    const Wavefunction ba = two(1, Move::B, 1, Move::A);
    std::vector<double> r(f.values.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = ab.values[i] - ba.values[i] - f.values[i];
    CHECK(window_norm(g, r, w) / window_norm(g, f.values, w) <= 1e-5);
  }
  SUBCASE("[A1,B2] = 0") {
    const Wavefunction ab = two(1, Move::A, 2, Move::B);
    const Wavefunction ba = two(2, Move::B, 1, Move::A);
    std::vector<double> r(f.values.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = ab.values[i] - ba.values[i];
    CHECK(window_norm(g, r, w) / window_norm(g, f.values, w) <= 1e-5);
  }
}

TEST_CASE("composition is associative bit for bit") {
  const auto m = HierarchyModel::coulomb();
  const Grid g = m.default_grid();
  const Wavefunction f = bump(g, 12.0, 3.0, true);
  const OperatorChain p = m.A(1, {1, 0});
  const OperatorChain q = m.B(2, {1, 1});
  const ApplyOptions o = serial_opts();
  CHECK(apply(compose(p, q), f, o).values == apply(p, apply(q, f, o), o).values);
}

TEST_CASE("oscillator hermiticity on compactly supported functions") {
  const auto m = HierarchyModel::oscillator();
  const Grid g = m.default_grid();
  auto smooth = [&](double a, double b, double k) {
    return Wavefunction::sample(g, [=](double x) {
      const double u = (2.0 * x - a - b) / (b - a);
      return std::abs(u) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - u * u)) * std::sin(k * x + 0.4);
    });
  };
  const Wavefunction f = smooth(1.5, 7.0, 1.1);
  const Wavefunction h = smooth(3.0, 9.5, 0.6);
  for (int i : {1, 2}) {
    const RefinedPair p = m.refined_pair(i, {3, 1});
    const double lhs = inner_product(apply(p.A, f), h);
    const double rhs = -inner_product(f, apply(p.B, h));
    CHECK(std::abs(lhs - rhs) <= 1e-6 * norm(f) * norm(h));
  }
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  const Grid g = Grid::build(DomainKind::half_line, 1e-3, 20.0, 100001);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d;
  std::vector<double> f(g.count()), v(g.count()), a(g.count()), b(g.count());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = std::exp(-0.1 * g.x(i)) * (1.0 + 0.01 * d(rng));
    v[i] = d(rng);
    a[i] = d(rng);
    b[i] = d(rng);
  }
  std::vector<double> s(f.size()), p(f.size());

  kernels::serial::derivative(g, f.data(), s.data());
  kernels::omp::derivative(g, f.data(), p.data());
  CHECK(s == p);

  kernels::serial::hamiltonian(g, f.data(), v.data(), s.data());
  kernels::omp::hamiltonian(g, f.data(), v.data(), p.data());
  CHECK(s == p);

  kernels::serial::affine(f.size(), a.data(), v.data(), b.data(), f.data(), s.data());
  kernels::omp::affine(f.size(), a.data(), v.data(), b.data(), f.data(), p.data());
  CHECK(s == p);

  kernels::ResamplePlan plan{f.data(), f.size(), g.x_min(), g.x_max(), g.spacing(), {}, {}};
  kernels::serial::dilate(g, plan, 0.7, s.data());
  kernels::omp::dilate(g, plan, 0.7, p.data());
  CHECK(s == p);
}

TEST_CASE("operator application is independent of the execution policy") {
  const auto m = HierarchyModel::coulomb();
  const Grid g = m.default_grid();
  const Wavefunction f = bump(g, 12.0, 3.0, true);
  ApplyOptions par;
  par.policy = ExecPolicy::parallel;
  const QuadraticOperator q = m.quadratic(QuadraticKind::raise_l, {2, 1});
  CHECK(apply(q.chain, f, serial_opts()).values == apply(q.chain, f, par).values);
  CHECK(apply_hamiltonian(m.potential_function(1.0), f, ExecPolicy::serial).values ==
        apply_hamiltonian(m.potential_function(1.0), f, ExecPolicy::parallel).values);
}

TEST_CASE("gauged application represents the same operator") {
  const auto m = HierarchyModel::oscillator();
  const Grid g = m.default_grid();
  const Wavefunction f = bump(g, 6.0, 0.9, true);
  const OperatorChain a = m.A(1, {2, 0});

  SUBCASE("trivial gauge reproduces apply") {
    const Gauge one{[](double) { return 1.0; }, [](double) { return 0.0; }};
    const Wavefunction x = apply_gauged(a, f, one, one);
    const Wavefunction y = apply(a, f);
    for (std::size_t i = 0; i < f.values.size(); ++i) REQUIRE(x.values[i] == doctest::Approx(y.values[i]).epsilon(1e-13));
  }
  SUBCASE("power gauge agrees to discretization error") {
    const Wavefunction x = apply_gauged(a, f, power_gauge(0.5), power_gauge(1.5));
    CHECK(rel_window(g, x.values, apply(a, f).values) <= 1e-5);
  }
  SUBCASE("power gauge is exact where the function is the gauge times a low polynomial") {
    // f = r^{3/2} (1 + r), A1 at (2,0) = (d/dr - r - 1/(2r))/2 mapped analytically
    const Wavefunction p = Wavefunction::sample(g, [](double r) { return std::pow(r, 1.5) * (1.0 + r); });
    auto exact = [](double r) {
      const double f = std::pow(r, 1.5) * (1.0 + r);
      const double df = 1.5 * std::sqrt(r) + 2.5 * std::pow(r, 1.5);
      return 0.5 * (df - r * f - 0.5 * f / r);
    };
    const Wavefunction x = apply_gauged(a, p, power_gauge(1.5), power_gauge(1.5));
    const Window w{1, g.count() - 1};
    double worst = 0.0;
    for (std::size_t i = w.begin; i < w.end; ++i) worst = std::max(worst, std::abs(x.values[i] - exact(g.x(i))) / (1.0 + std::abs(exact(g.x(i)))));
    CHECK(worst <= 1e-10);
  }
}
