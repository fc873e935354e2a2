#pragma once

#include <string>
#include <vector>

#include "ladderlab/grid.hpp"
#include "ladderlab/hierarchy.hpp"
#include "ladderlab/operator_chain.hpp"

namespace ladderlab {

/// standard: 3-point Laplacian on psi with Dirichlet ends.
/// radial_flux: symmetric flux form on R = psi / sqrt(r), used on the
/// half-line when l^2 < 1/4 where the 3-point stencil converges only
/// logarithmically.
enum class Scheme { standard, radial_flux, automatic };

/// Symmetric tridiagonal matrix over the interior nodes 1..count-2.
struct TridiagonalOperator {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
  Grid grid;
  Rational l;
  std::string model;
  Scheme scheme;
};

TridiagonalOperator assemble(const HierarchyModel& model, Rational l, const Grid& grid,
                             Scheme scheme = Scheme::automatic);
/// Standard stencil with an arbitrary potential (test hook).
TridiagonalOperator assemble_with_potential(const Grid& grid, const Coefficient& potential);

/// Number of eigenvalues strictly below lambda.
std::size_t sturm_count(const TridiagonalOperator& t, double lambda);

struct Eigenpair {
  double value;
  Wavefunction state;
};

/// The k lowest eigenpairs, 1 <= k <= 12. Eigenvalues by Sturm bisection,
/// eigenvectors by inverse iteration; states have zero endpoints, unit norm
/// and the sign convention of normalize().
std::vector<Eigenpair> lowest_eigenpairs(const TridiagonalOperator& t, int k);

/// Level index of (n, l) within its channel, counting from the ground state.
int level_index(const HierarchyModel& model, const QuantumNumbers& q);
/// Formula label n of the level with index nu in channel l.
Rational level_label(const HierarchyModel& model, Rational l, int nu);

/// The oracle eigenpair closest to energy(n, l); throws numerical_error if it
/// is further than 10% of the local level spacing.
Eigenpair oracle_state(const HierarchyModel& model, const QuantumNumbers& q, const Grid& grid);

}  // namespace ladderlab
