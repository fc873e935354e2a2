#pragma once

#include <vector>

#include "ladderlab/grid.hpp"
#include "ladderlab/hierarchy.hpp"
#include "ladderlab/operator_chain.hpp"

namespace ladderlab {

/// Normalized closed-form lowest state of channel l, labelled (n0, l):
///   oscillator  r^{|l|+1/2} exp(-r^2/2)
///   Coulomb     r^{|l|+1/2} exp(-r/(|l|+1/2))
///   Morse       exp(l a x/2 - exp(a x)/2),  l > 0
Wavefunction ground_state(const HierarchyModel& model, Rational l, const Grid& grid);

/// First-order operator that annihilates ground_state(model, l).
OperatorChain ground_annihilator(const HierarchyModel& model, Rational l);

struct LadderStep {
  int pair;
  Move move;
};

struct LadderPath {
  QuantumNumbers start;
  std::vector<LadderStep> moves;
  QuantumNumbers end;
};

/// Starts at the closed-form ground state (m, m), m = (n + l)/2, which is what
/// A1 moves from the lowest channel reach, then applies A2 until (n, l).
/// The shortest path from any ground state: repeated differencing amplifies
/// rounding by roughly 1/(h k) per move.
LadderPath canonical_path(const HierarchyModel& model, const QuantumNumbers& target);

/// Factor shared by every bound state of channel l: r^{|l|+1/2} on the
/// half-line, exp(-e^{a x}/2) for Morse.
Gauge state_gauge(const HierarchyModel& model, Rational l);

/// Applies the moves of `path` to `start` through apply_gauged, normalizing
/// after each one.
Wavefunction walk(const HierarchyModel& model, const LadderPath& path, const Wavefunction& start,
                  const ApplyOptions& opts = {});

/// Builds the normalized state (n, l) along the canonical path.
Wavefunction build_state(const HierarchyModel& model, const QuantumNumbers& q, const Grid& grid,
                         const ApplyOptions& opts = {});

/// ||(H^l - E) psi|| / ||psi|| on the interior window.
double eigen_residual(const HierarchyModel& model, const Wavefunction& psi);

struct LadderCoefficient {
  QuantumNumbers source;
  QuantumNumbers target;
  double c;          // <X- psi_source, psi_target>
  double predicted;  // sqrt(E_source + shift_lower + q), the expected |c|
  double overlap;    // |cosine| of image and target on the overlap window, 1 when annihilated
  bool annihilated;
};

/// Measures X- psi_source = c psi_target for the conventional pair acting on
/// the channel of `source` (Morse: source.l must be even, l' = source.l/2).
LadderCoefficient ladder_coefficient(const HierarchyModel& model, const QuantumNumbers& source, const Grid& grid,
                                     OscillatorCase c = OscillatorCase::a, double overlap_band = kOverlapBand,
                                     const ApplyOptions& opts = {});

}  // namespace ladderlab
