#pragma once

// Closed-form bound states from associated Laguerre polynomials, used as
// independent references for the solver and the ladder construction.

#include <cmath>

#include "ladderlab/grid.hpp"
#include "ladderlab/hierarchy.hpp"

namespace oracles {

using namespace ladderlab;

/// Unnormalized psi_n^l sampled on the grid; l >= 0 and integer labels.
inline Wavefunction laguerre_state(const HierarchyModel& m, int n, int l, const Grid& g) {
  switch (m.family()) {
    case Family::oscillator: {
      const unsigned nu = static_cast<unsigned>((n - l) / 2);
      return Wavefunction::sample(g, [=](double r) {
        return std::pow(r, l + 0.5) * std::exp(-0.5 * r * r) * std::assoc_laguerre(nu, l, r * r);
      });
    }
    case Family::coulomb: {
      const unsigned nu = static_cast<unsigned>(n - l);
      const double kappa = 1.0 / (n + 0.5);
      return Wavefunction::sample(g, [=](double r) {
        return std::pow(r, l + 0.5) * std::exp(-kappa * r) * std::assoc_laguerre(nu, 2 * l, 2.0 * kappa * r);
      });
    }
    case Family::morse: {
      const unsigned nu = static_cast<unsigned>((l - n) / 2);
      const double a = m.alpha();
      return Wavefunction::sample(g, [=](double x) {
        const double y = std::exp(a * x);
        return std::pow(y, 0.5 * n) * std::exp(-0.5 * y) * std::assoc_laguerre(nu, n, y);
      });
    }
  }
  return Wavefunction::sample(g, [](double) { return 0.0; });
}

/// |cosine| over the whole grid.
inline double overlap(const Wavefunction& a, const Wavefunction& b) {
  return std::abs(inner_product(a, b)) / (norm(a) * norm(b));
}

}  // namespace oracles
