#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ladderlab/errors.hpp"
#include "ladderlab/fd_oracle.hpp"
#include "ladderlab/grid.hpp"
#include "ladderlab/hierarchy.hpp"

using namespace ladderlab;

TEST_CASE("build_grid spacing and preconditions") {
  const Grid g = Grid::build(DomainKind::half_line, 1e-4, 12.0, 4001);
  CHECK(g.spacing() == doctest::Approx(2.99993e-3).epsilon(1e-6));
  CHECK(g.x(0) == 1e-4);
  CHECK(g.x(4000) == 12.0);

  const Grid f = Grid::build(DomainKind::full_line, -8.0, 6.0, 16);
  CHECK(f.spacing() == doctest::Approx(14.0 / 15.0));

  CHECK_THROWS_AS(Grid::build(DomainKind::half_line, -1.0, 5.0, 100), usage_error);
  CHECK_THROWS_AS(Grid::build(DomainKind::half_line, 0.0, 5.0, 100), usage_error);
  CHECK_THROWS_AS(Grid::build(DomainKind::full_line, -1.0, 5.0, 15), usage_error);
  CHECK_THROWS_AS(Grid::build(DomainKind::full_line, 5.0, 5.0, 100), usage_error);
  CHECK_THROWS_AS(Grid::build(DomainKind::full_line, 0.0, INFINITY, 100), usage_error);
}

TEST_CASE("wavefunction invariants") {
  const Grid g = Grid::build(DomainKind::full_line, -1.0, 1.0, 16);
  CHECK_THROWS_AS(Wavefunction(g, std::vector<double>(15, 0.0)), usage_error);
  std::vector<double> bad(16, 0.0);
  bad[3] = NAN;
  CHECK_THROWS_AS(Wavefunction(g, bad), numerical_error);
}

TEST_CASE("inner product of zero and grid mismatch") {
  const Grid g = Grid::build(DomainKind::full_line, -4.0, 4.0, 201);
  const Wavefunction zero = Wavefunction::sample(g, [](double) { return 0.0; });
  const Wavefunction bump = Wavefunction::sample(g, [](double x) { return std::exp(-x * x); });
  CHECK(inner_product(zero, bump) == 0.0);
  const Grid h = Grid::build(DomainKind::full_line, -4.0, 4.0, 202);
  const Wavefunction other = Wavefunction::sample(h, [](double x) { return x; });
  CHECK_THROWS_AS(inner_product(bump, other), usage_error);
}

TEST_CASE("trapezoid quadrature of a Gaussian") {
  const Grid g = Grid::build(DomainKind::full_line, -8.0, 8.0, 4001);
  const Wavefunction f = Wavefunction::sample(g, [](double x) { return std::exp(-0.5 * x * x); });
  // <f,f> = integral of exp(-x^2) = sqrt(pi)
  const double rel = std::abs(inner_product(f, f) / std::sqrt(std::numbers::pi) - 1.0);
  CHECK(rel <= 1e-10);
}

TEST_CASE("analytic oscillator ground state has unit norm") {
  // integral of 2 r exp(-r^2) over (0, inf) is 1
  const Grid g = Grid::build(DomainKind::half_line, 1e-4, 12.0, 4001);
  const Wavefunction psi =
      Wavefunction::sample(g, [](double r) { return std::sqrt(2.0 * r) * std::exp(-0.5 * r * r); });
  // trapezoid error from Euler-Maclaurin: h^2/12 (f'(b) - f'(a)), f = 2 r exp(-r^2)
  const double a = g.x_min();
  const double h = g.spacing();
  auto fp = [](double r) { return (2.0 - 4.0 * r * r) * std::exp(-r * r); };
  const double exact = std::exp(-a * a) - std::exp(-144.0);
  const double predicted = exact + h * h / 12.0 * (fp(12.0) - fp(a));
  CHECK(std::abs(inner_product(psi, psi) - predicted) <= 1e-10);
  CHECK(std::abs(inner_product(psi, psi) - 1.0) <= 2e-6);
}

TEST_CASE("oracle eigenvectors are orthogonal") {
  const auto m = HierarchyModel::oscillator();
  const auto pairs = lowest_eigenpairs(assemble(m, Rational(1), m.default_grid()), 3);
  CHECK(std::abs(inner_product(pairs[0].state, pairs[1].state)) <= 1e-8);
  CHECK(std::abs(inner_product(pairs[1].state, pairs[2].state)) <= 1e-8);
}

TEST_CASE("normalize: scale, sign and idempotence") {
  const Grid g = Grid::build(DomainKind::full_line, -6.0, 6.0, 1201);
  const Wavefunction f = Wavefunction::sample(g, [](double x) { return (1.0 + 0.3 * x) * std::exp(-x * x / 3.0); });
  const Wavefunction psi = normalize(f);
  CHECK(std::abs(inner_product(psi, psi) - 1.0) <= 1e-12);

  Wavefunction tripled = psi;
  for (double& y : tripled.values) y *= 3.0;
  Wavefunction flipped = psi;
  for (double& y : flipped.values) y = -y;
  const Wavefunction a = normalize(tripled);
  const Wavefunction b = normalize(flipped);
  const Wavefunction c = normalize(psi);
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    REQUIRE(a.values[i] == doctest::Approx(psi.values[i]).epsilon(1e-14));
    REQUIRE(b.values[i] == doctest::Approx(psi.values[i]).epsilon(1e-14));
    REQUIRE(c.values[i] == doctest::Approx(psi.values[i]).epsilon(1e-14));
  }
  std::size_t peak = 0;
  for (std::size_t i = 0; i < b.values.size(); ++i)
    if (std::abs(b.values[i]) > std::abs(b.values[peak])) peak = i;
  CHECK(b.values[peak] > 0.0);

  const Wavefunction zero = Wavefunction::sample(g, [](double) { return 0.0; });
  CHECK_THROWS_AS(normalize(zero), numerical_error);
}

TEST_CASE("property: inner product is symmetric and bilinear") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  const Grid g = Grid::build(DomainKind::half_line, 0.01, 5.0, 257);
  for (int trial = 0; trial < 20; ++trial) {
    Wavefunction f = Wavefunction::sample(g, [&](double) { return d(rng); });
    Wavefunction h = Wavefunction::sample(g, [&](double) { return d(rng); });
    Wavefunction k = Wavefunction::sample(g, [&](double) { return d(rng); });
    const double s = d(rng);
    Wavefunction mix = f;
    for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] = s * f.values[i] + h.values[i];
    CHECK(inner_product(f, h) == inner_product(h, f));
    const double lhs = inner_product(mix, k);
    const double rhs = s * inner_product(f, k) + inner_product(h, k);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("property: normalize is idempotent on random input") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid g = Grid::build(DomainKind::full_line, -1.0, 1.0, 300);
  for (int trial = 0; trial < 20; ++trial) {
    const Wavefunction once = normalize(Wavefunction::sample(g, [&](double) { return u(rng); }));
    const Wavefunction twice = normalize(once);
    CHECK(std::abs(inner_product(twice, twice) - 1.0) <= 1e-12);
    for (std::size_t i = 0; i < once.values.size(); ++i) REQUIRE(std::abs(once.values[i] - twice.values[i]) <= 1e-15);
  }
}

TEST_CASE("interior window drops 5% at each end") {
  const Grid g = Grid::build(DomainKind::full_line, 0.0, 1.0, 1000);
  const Window w = interior_window(g);
  CHECK(w.begin == 50);
  CHECK(w.end == 950);
  CHECK_THROWS_AS(interior_window(g, 0.5), usage_error);
}

TEST_CASE("csv export: header, one row per point, round-trip precision") {
  const Grid g = Grid::build(DomainKind::half_line, 1e-4, 12.0, 4001);
  const Wavefunction f = Wavefunction::sample(g, [](double r) { return std::sin(r) / 3.0; });
  std::ostringstream out;
  write_csv(out, f);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,psi");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    CHECK(std::stod(line.substr(0, comma)) == g.x(rows));
    CHECK(std::stod(line.substr(comma + 1)) == f.values[rows]);
    ++rows;
  }
  CHECK(rows == 4001);
}
