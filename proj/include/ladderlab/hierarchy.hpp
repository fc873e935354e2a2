#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ladderlab/grid.hpp"
#include "ladderlab/operator_chain.hpp"
#include "ladderlab/rational.hpp"

namespace ladderlab {

enum class Family { oscillator, morse, coulomb };
enum class OscillatorCase { a, b };
enum class Move { A, B };
enum class QuadraticKind { raise_n, lower_n, raise_l, lower_l, energy_preserving };

const char* to_string(Family f);
const char* to_string(QuadraticKind k);
QuadraticKind quadratic_kind_from_name(const std::string& name);

/// A^i and B^i at one lattice point. A maps (n,l) to `step`; B maps `step`
/// back to (n,l).
struct RefinedPair {
  int index;
  OperatorChain A;
  OperatorChain B;
  double phi;
  QuantumNumbers step;
};

/// X+ X- = H^{lower} + shift_lower + q and X- X+ = H^{upper} + shift_upper + q.
/// X- carries a state labelled (n,l) to (n,l) + minus_delta.
struct ConventionalPair {
  OperatorChain x_plus;
  OperatorChain x_minus;
  double q;
  Rational lower_label;
  Rational upper_label;
  double shift_lower;
  double shift_upper;
  QuantumNumbers minus_delta;
};

struct QuadraticOperator {
  QuadraticKind kind;
  OperatorChain chain;
  QuantumNumbers source;
  QuantumNumbers target;
};

/// Label shifts read off the [N, .] and [L, .] tables for one free-index
/// operator: applying it changes (n, l) by exactly (dn, dl).
struct LabelShift {
  Rational dn;
  Rational dl;
};

struct GridSpec {
  double x_min;
  double x_max;
  std::size_t count;
};

class HierarchyModel {
 public:
  static HierarchyModel oscillator();
  static HierarchyModel morse(double alpha = 1.0);
  static HierarchyModel coulomb();
  /// "oscillator", "morse", "coulomb"
  static HierarchyModel from_name(const std::string& name, double alpha = 1.0);

  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  std::string name() const { return to_string(family_); }
  DomainKind domain_kind() const;
  GridSpec default_grid_spec() const;
  Grid default_grid() const;

  double potential(double l, double x) const;
  Coefficient potential_function(double l) const;
  /// Potential without the (l^2 - 1/4)/r^2 barrier on the half-line; the
  /// whole potential on the full line.
  double regular_potential(double l, double x) const;

  double energy(Rational n, Rational l) const;

  std::vector<QuantumNumbers> lattice(int n_max) const;
  bool is_physical(const QuantumNumbers& q) const;
  /// (n, l) labels a bound level of H^l, physical or not.
  bool is_eigenlevel(const QuantumNumbers& q) const;
  bool is_normalizable(const QuantumNumbers& q) const;
  bool has_ground_state(Rational l) const;
  /// Label under which closed forms and the oracle treat this channel
  /// (the centrifugal barrier is even in l for the half-line families).
  Rational channel(Rational l) const;

  QuantumNumbers step(int i, const QuantumNumbers& q) const;
  QuantumNumbers step_inverse(int i, const QuantumNumbers& q) const;
  double phi(int i, const QuantumNumbers& q) const;
  Coefficient h_factor(const QuantumNumbers& q) const;

  OperatorChain A(int i, const QuantumNumbers& q) const;
  OperatorChain B(int i, const QuantumNumbers& q) const;
  RefinedPair refined_pair(int i, const QuantumNumbers& q) const;

  /// Free-index action: the operator acting on a state labelled `at`, and
  /// where it sends the label.
  OperatorChain move_chain(int i, Move m, const QuantumNumbers& at) const;
  QuantumNumbers move_target(int i, Move m, const QuantumNumbers& at) const;

  /// Commutator table coefficients as tabulated for this family.
  LabelShift label_shift(int i, Move m) const;

  /// Oscillator: case selects (a) or (b). Morse: `l` is the half label l',
  /// acting between hierarchy labels 2l' and 2l'+2.
  ConventionalPair conventional(Rational l, OscillatorCase c = OscillatorCase::b) const;

  QuadraticOperator quadratic(QuadraticKind kind, const QuantumNumbers& source) const;
  /// Closed first-order form of a quadratic operator on eigenstates of the
  /// source channel, where one is known.
  std::optional<OperatorChain> displayed_quadratic(QuadraticKind kind, const QuantumNumbers& source) const;

 private:
  HierarchyModel(Family f, double alpha) : family_(f), alpha_(alpha) {}
  void require_index(int i) const;
  void require_coulomb_index(const QuantumNumbers& q) const;
  QuantumNumbers delta(int i) const;

  Family family_;
  double alpha_;
};

}  // namespace ladderlab
