#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ladderlab/errors.hpp"
#include "ladderlab/fd_oracle.hpp"
#include "ladderlab/ladder.hpp"
#include "oracles.hpp"

using namespace ladderlab;

namespace {

std::vector<QuantumNumbers> physical_states(const HierarchyModel& m) {
  switch (m.family()) {
    case Family::oscillator: return m.lattice(4);
    case Family::morse: return m.lattice(5);
    case Family::coulomb: return m.lattice(3);
  }
  return {};
}

/// X- psi_source projected on the target, both taken from the closed forms.
double brute_force_c(const HierarchyModel& m, const ConventionalPair& p, QuantumNumbers s, QuantumNumbers t,
                     const Grid& g) {
  const Wavefunction src = normalize(oracles::laguerre_state(m, s.n.to_integer(), s.l.to_integer(), g));
  const Wavefunction dst = normalize(oracles::laguerre_state(m, t.n.to_integer(), t.l.to_integer(), g));
  return std::abs(inner_product(apply(p.x_minus, src), dst));
}

}  // namespace

TEST_CASE("closed-form ground states") {
  SUBCASE("oscillator l = 0") {
    const auto m = HierarchyModel::oscillator();
    const Grid g = m.default_grid();
    const Wavefunction psi = ground_state(m, 0, g);
    REQUIRE(psi.labels);
    CHECK(*psi.labels == QuantumNumbers{0, 0});
    const Wavefunction ref =
        normalize(Wavefunction::sample(g, [](double r) { return std::sqrt(2.0 * r) * std::exp(-0.5 * r * r); }));
    for (std::size_t i = 0; i < g.count(); i += 97) REQUIRE(psi.values[i] == doctest::Approx(ref.values[i]).epsilon(1e-12));
    CHECK(eigen_residual(m, psi) <= 1e-4);
  }
  SUBCASE("Coulomb l = 0") {
    const auto m = HierarchyModel::coulomb();
    const Grid g = m.default_grid();
    const Wavefunction psi = ground_state(m, 0, g);
    const Wavefunction ref = Wavefunction::sample(g, [](double r) { return std::sqrt(r) * std::exp(-2.0 * r); });
    CHECK(oracles::overlap(psi, ref) >= 1.0 - 1e-12);
    CHECK(std::abs(oracle_state(m, {0, 0}, g).value + 4.0) <= 4.0 * 5e-3);
  }
  SUBCASE("Morse l = 1") {
    const auto m = HierarchyModel::morse();
    const Grid g = m.default_grid();
    const Wavefunction psi = ground_state(m, 1, g);
    const Wavefunction ref = Wavefunction::sample(g, [](double x) { return std::exp(0.5 * x - 0.5 * std::exp(x)); });
    CHECK(oracles::overlap(psi, ref) >= 1.0 - 1e-12);
    CHECK(m.energy(1, 1) == doctest::Approx(-0.25));
    CHECK(eigen_residual(m, psi) <= 1e-4);
  }
  SUBCASE("Morse l = 0 has no bound ground state") {
    const auto m = HierarchyModel::morse();
    CHECK_THROWS_AS(ground_state(m, 0, m.default_grid()), usage_error);
    CHECK_THROWS_AS(ground_annihilator(m, 0), usage_error);
  }
  SUBCASE("grid must match the domain") {
    CHECK_THROWS_AS(ground_state(HierarchyModel::oscillator(), 0, HierarchyModel::morse().default_grid()), usage_error);
  }
}

TEST_CASE("ground states are annihilated") {
  for (const auto& m : {HierarchyModel::oscillator(), HierarchyModel::morse(), HierarchyModel::coulomb()}) {
    const Grid& d = m.default_grid();
    const Grid g = Grid::build(d.kind(), d.x_min(), d.x_max(), 2 * d.count() - 1);
    for (int l = m.family() == Family::morse ? 1 : 0; l <= 3; ++l) {
      INFO(m.name(), " l=", l);
      const Wavefunction psi = ground_state(m, l, g);
      const Wavefunction image = apply(ground_annihilator(m, l), psi);
      CHECK(sup_norm(image.values, interior_window(g)) / sup_norm(psi.values, {0, g.count()}) <= 1e-5);
    }
  }
}

TEST_CASE("canonical paths") {
  const auto osc = HierarchyModel::oscillator();
  const LadderPath p = canonical_path(osc, {4, 0});
  CHECK(p.start == QuantumNumbers{2, 2});
  CHECK(p.end == QuantumNumbers{4, 0});
  CHECK(p.moves.size() == 2);

  const auto coul = HierarchyModel::coulomb();
  const LadderPath zero = canonical_path(coul, {1, 1});
  CHECK(zero.start == QuantumNumbers{1, 1});
  CHECK(zero.moves.empty());

  const auto morse = HierarchyModel::morse();
  const LadderPath m13 = canonical_path(morse, {1, 3});
  CHECK(m13.start == QuantumNumbers{2, 2});
  CHECK(m13.moves.size() == 1);
  CHECK_THROWS_AS(canonical_path(morse, {5, 3}), usage_error);
  CHECK_THROWS_AS(canonical_path(morse, {0, 2}), usage_error);
  CHECK_THROWS_AS(canonical_path(osc, {1, 0}), usage_error);
}

TEST_CASE("built states") {
  SUBCASE("oscillator (2,0)") {
    const auto m = HierarchyModel::oscillator();
    const Wavefunction psi = build_state(m, {2, 0}, m.default_grid());
    CHECK(eigen_residual(m, psi) <= 1e-4);
    CHECK(m.energy(2, 0) == 6.0);
  }
  SUBCASE("Coulomb (1,1) is the ground state") {
    const auto m = HierarchyModel::coulomb();
    const Grid g = m.default_grid();
    const Wavefunction a = build_state(m, {1, 1}, g);
    const Wavefunction b = ground_state(m, 1, g);
    CHECK(a.values == b.values);
  }
  SUBCASE("Morse (1,3)") {
    const auto m = HierarchyModel::morse();
    const Wavefunction psi = build_state(m, {1, 3}, m.default_grid());
    CHECK(eigen_residual(m, psi) <= 1e-4);
    CHECK(m.energy(1, 3) == doctest::Approx(-0.25));
  }
}

TEST_CASE("property: every built physical state is an eigenfunction") {
  for (const auto& m : {HierarchyModel::oscillator(), HierarchyModel::morse(), HierarchyModel::coulomb()}) {
    const Grid g = m.default_grid();
    for (const auto& q : physical_states(m)) {
      INFO(m.name(), " ", q.str());
      const Wavefunction psi = build_state(m, q, g);
      REQUIRE(psi.labels);
      CHECK(*psi.labels == q);
      CHECK(std::abs(inner_product(psi, psi) - 1.0) <= 1e-12);
      CHECK(eigen_residual(m, psi) <= 1e-4);
      const Wavefunction ref = oracles::laguerre_state(m, q.n.to_integer(), q.l.to_integer(), g);
      CHECK(oracles::overlap(psi, ref) >= 0.9999);
    }
  }
}

TEST_CASE("Coulomb half-step state at (1/2,1/2)") {
  const auto m = HierarchyModel::coulomb();
  const Grid g = m.default_grid();
  const LadderPath path{{0, 0}, {{1, Move::A}}, {kHalf, kHalf}};
  const Wavefunction psi = walk(m, path, ground_state(m, 0, g));
  CHECK(eigen_residual(m, psi) <= 1e-4);
  const Eigenpair e = oracle_state(m, {kHalf, kHalf}, g);
  CHECK(std::abs(e.value + 1.0) <= 1e-4);
  CHECK(std::abs(window_cosine(g, psi.values, e.state.values, interior_window(g, kOverlapBand))) >= 0.999);
}

TEST_CASE("path independence of oscillator (2,0)") {
  const auto m = HierarchyModel::oscillator();
  const Grid g = m.default_grid();
  const Wavefunction ground = ground_state(m, 0, g);
  const Wavefunction a = walk(m, {{0, 0}, {{1, Move::A}, {2, Move::A}}, {2, 0}}, ground);
  const Wavefunction b = walk(m, {{0, 0}, {{2, Move::A}, {1, Move::A}}, {2, 0}}, ground);
  CHECK(std::abs(inner_product(a, b)) >= 0.99999);
}

TEST_CASE("walks reject annihilated and mislabelled paths") {
  const auto m = HierarchyModel::oscillator();
  const Grid g = m.default_grid();
  const Wavefunction ground = ground_state(m, 0, g);
  CHECK_THROWS_AS(walk(m, {{0, 0}, {{1, Move::A}}, {2, 0}}, ground), numerical_error);
  const Wavefunction unlabeled(g, ground.values);
  CHECK_THROWS_AS(eigen_residual(m, unlabeled), usage_error);
}

TEST_CASE("build_state is independent of the execution policy") {
  const auto m = HierarchyModel::coulomb();
  ApplyOptions s;
  s.policy = ExecPolicy::serial;
  ApplyOptions p;
  p.policy = ExecPolicy::parallel;
  CHECK(build_state(m, {3, 1}, m.default_grid(), s).values == build_state(m, {3, 1}, m.default_grid(), p).values);
}

TEST_CASE("Coulomb ladder coefficients") {
  const auto m = HierarchyModel::coulomb();
  const Grid g = m.default_grid();
  SUBCASE("X-_0 annihilates the ground state") {
    const LadderCoefficient c = ladder_coefficient(m, {0, 0}, g);
    CHECK(c.annihilated);
    CHECK(std::abs(c.c) <= 1e-6 * c.predicted + 1e-6);
  }
  SUBCASE("|c| = sqrt(q(n) - q(l))") {
    const double expected[] = {std::sqrt(4.0 - 4.0 / 9.0), std::sqrt(4.0 - 4.0 / 25.0)};
    for (int n : {1, 2}) {
      const LadderCoefficient c = ladder_coefficient(m, {n, 0}, g);
      CHECK(c.target == QuantumNumbers{n, 1});
      CHECK(std::abs(std::abs(c.c) / expected[n - 1] - 1.0) <= 1e-3);
      CHECK(c.predicted == doctest::Approx(expected[n - 1]).epsilon(1e-12));
      const double brute = brute_force_c(m, m.conventional(Rational(0)), {n, 0}, {n, 1}, g);
      CHECK(std::abs(brute / std::abs(c.c) - 1.0) <= 1e-3);
    }
  }
}

TEST_CASE("oscillator case (a) ladder coefficient") {
  const auto m = HierarchyModel::oscillator();
  const Grid g = m.default_grid();
  const LadderCoefficient c = ladder_coefficient(m, {1, -1}, g, OscillatorCase::a);
  CHECK(c.target == QuantumNumbers{2, 0});
  CHECK(c.overlap >= 0.999);
  CHECK(std::abs(std::abs(c.c) / c.predicted - 1.0) <= 1e-3);
  // closed forms: psi^{-1} := psi^{1}
  const double brute = brute_force_c(m, m.conventional(Rational(-1), OscillatorCase::a), {1, 1}, {2, 0}, g);
  CHECK(std::abs(brute / std::abs(c.c) - 1.0) <= 1e-3);
}
