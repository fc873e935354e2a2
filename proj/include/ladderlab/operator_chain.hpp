#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ladderlab/grid.hpp"
#include "ladderlab/parallel.hpp"

namespace ladderlab {

using Coefficient = std::function<double(double)>;

/// a(x) d/dx + b(x)
struct Differential {
  Coefficient a;
  Coefficient b;
};

/// multiplication by c(x)
struct Scalar {
  Coefficient c;
};

/// psi(x) -> psi(mu x)
struct Dilation {
  double mu;
};

using OperatorAtom = std::variant<Differential, Scalar, Dilation>;

/// Atoms act right to left: the last atom listed is applied first.
class OperatorChain {
 public:
  OperatorChain(std::string name, std::vector<OperatorAtom> atoms);

  const std::string& name() const { return name_; }
  const std::vector<OperatorAtom>& atoms() const { return atoms_; }
  std::size_t differential_count() const;

 private:
  std::string name_;
  std::vector<OperatorAtom> atoms_;
};

/// outer after inner.
OperatorChain compose(const OperatorChain& outer, const OperatorChain& inner, std::string name = {});

struct ApplyOptions {
  /// Dilation targets may reach margin * x_max on the half-line (or the span
  /// scaled by margin on the full line) before the call is rejected.
  double extrapolation_margin = 2.0;
  /// Right tails whose last sample is below this fraction of the peak are
  /// extended by zero when they are not decaying.
  double negligible_tail = 1e-8;
  ExecPolicy policy = ExecPolicy::automatic;
};

Wavefunction apply(const OperatorAtom& atom, const Wavefunction& f, const ApplyOptions& opts = {});
Wavefunction apply(const OperatorChain& op, const Wavefunction& f, const ApplyOptions& opts = {});
Wavefunction dilate(const Wavefunction& f, double mu, const ApplyOptions& opts = {});

/// Known factor g of the functions an operator acts on: f = g u.
struct Gauge {
  Coefficient value;
  Coefficient log_derivative;  // g'/g
};

/// r^p
Gauge power_gauge(double p);

/// Same operator, with differences taken of the smoother u = f / g:
///   a f' + b f = g (a u' + (a g'/g + b) u),   D(mu) f = g(x) [g(mu x)/g(x)] u(mu x).
/// The gauge switches from `in` to `out` right after the last Differential
/// atom, so `out` should describe the image.
Wavefunction apply_gauged(const OperatorChain& op, const Wavefunction& f, const Gauge& in, const Gauge& out,
                          const ApplyOptions& opts = {});

/// (p q - q p) f
Wavefunction commutator_apply(const OperatorChain& p, const OperatorChain& q, const Wavefunction& f,
                              const ApplyOptions& opts = {});

/// -f'' + V f on the grid, with V sampled from `potential`.
Wavefunction apply_hamiltonian(const Coefficient& potential, const Wavefunction& f,
                               ExecPolicy policy = ExecPolicy::automatic);

}  // namespace ladderlab
