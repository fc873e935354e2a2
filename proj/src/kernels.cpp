#include "ladderlab/kernels.hpp"

#include <omp.h>

namespace ladderlab::kernels {

namespace serial {

void derivative(const Grid& grid, const double* f, double* out) {
  const std::size_t n = grid.count();
  const double inv_2h = 0.5 / grid.spacing();
  for (std::size_t i = 0; i < n; ++i) out[i] = derivative_at(f, n, i, inv_2h);
}

void hamiltonian(const Grid& grid, const double* f, const double* v, double* out) {
  const std::size_t n = grid.count();
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  for (std::size_t i = 0; i < n; ++i) out[i] = hamiltonian_at(f, v, n, i, inv_h2);
}

void affine(std::size_t n, const double* a, const double* df, const double* b, const double* f,
            double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = affine_at(a, df, b, f, i);
}

void dilate(const Grid& grid, const ResamplePlan& plan, double mu, double* out) {
  const std::size_t n = grid.count();
  for (std::size_t i = 0; i < n; ++i) out[i] = resample_at(plan, mu * grid.x(i));
}

}  // namespace serial

namespace omp {

void derivative(const Grid& grid, const double* f, double* out) {
  const auto n = static_cast<std::ptrdiff_t>(grid.count());
  const double inv_2h = 0.5 / grid.spacing();
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = derivative_at(f, static_cast<std::size_t>(n), static_cast<std::size_t>(i), inv_2h);
  }
}

void hamiltonian(const Grid& grid, const double* f, const double* v, double* out) {
  const auto n = static_cast<std::ptrdiff_t>(grid.count());
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = hamiltonian_at(f, v, static_cast<std::size_t>(n), static_cast<std::size_t>(i), inv_h2);
  }
}

void affine(std::size_t n, const double* a, const double* df, const double* b, const double* f,
            double* out) {
  const auto m = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::ptrdiff_t i = 0; i < m; ++i) out[i] = affine_at(a, df, b, f, static_cast<std::size_t>(i));
}

void dilate(const Grid& grid, const ResamplePlan& plan, double mu, double* out) {
  const auto n = static_cast<std::ptrdiff_t>(grid.count());
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = resample_at(plan, mu * grid.x(static_cast<std::size_t>(i)));
  }
}

}  // namespace omp

void derivative(const Grid& grid, const double* f, double* out, ExecPolicy policy) {
  if (run_parallel(policy, grid.count())) omp::derivative(grid, f, out);
  else serial::derivative(grid, f, out);
}

void hamiltonian(const Grid& grid, const double* f, const double* v, double* out, ExecPolicy policy) {
  if (run_parallel(policy, grid.count())) omp::hamiltonian(grid, f, v, out);
  else serial::hamiltonian(grid, f, v, out);
}

void affine(std::size_t n, const double* a, const double* df, const double* b, const double* f,
            double* out, ExecPolicy policy) {
  if (run_parallel(policy, n)) omp::affine(n, a, df, b, f, out);
  else serial::affine(n, a, df, b, f, out);
}

void dilate(const Grid& grid, const ResamplePlan& plan, double mu, double* out, ExecPolicy policy) {
  if (run_parallel(policy, grid.count())) omp::dilate(grid, plan, mu, out);
  else serial::dilate(grid, plan, mu, out);
}

}  // namespace ladderlab::kernels
