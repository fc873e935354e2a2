#pragma once

// Grid kernels. Every kernel has a per-index body shared by a serial loop
// (the reference) and an OpenMP loop, so the two agree bit for bit.

#include <array>
#include <cmath>
#include <cstddef>

#include "ladderlab/grid.hpp"
#include "ladderlab/parallel.hpp"

namespace ladderlab::kernels {

/// First derivative: 3-point centered inside, one-sided second order at the ends.
inline double derivative_at(const double* f, std::size_t n, std::size_t i, double inv_2h) {
  if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv_2h;
  if (i == n - 1) return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv_2h;
  return (f[i + 1] - f[i - 1]) * inv_2h;
}

/// -f'' + V f with the 3-point Laplacian, 4-point one-sided at the ends.
inline double hamiltonian_at(const double* f, const double* v, std::size_t n, std::size_t i,
                             double inv_h2) {
  double d2;
  if (i == 0) {
    d2 = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv_h2;
  } else if (i == n - 1) {
    d2 = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv_h2;
  } else {
    d2 = (f[i - 1] - 2.0 * f[i] + f[i + 1]) * inv_h2;
  }
  return -d2 + v[i] * f[i];
}

inline double affine_at(const double* a, const double* df, const double* b, const double* f,
                        std::size_t i) {
  return a[i] * df[i] + b[i] * f[i];
}

/// Tail model used when a resampling target falls outside the grid.
struct Tail {
  enum class Mode { zero, exponential } mode = Mode::zero;
  double anchor = 0.0;  // grid end the tail hangs off
  double value = 0.0;   // sample at the anchor
  double kappa = 0.0;   // decay rate away from the anchor
};

struct ResamplePlan {
  const double* f = nullptr;
  std::size_t n = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double h = 0.0;
  Tail left;
  Tail right;
};

/// Points in the centred Lagrange stencil used for resampling.
inline constexpr std::ptrdiff_t kResamplePoints = 8;

/// 1 / prod_{m != j} (j - m) for the resampling stencil.
inline constexpr std::array<double, kResamplePoints> kLagrangeDenominators = [] {
  std::array<double, kResamplePoints> w{};
  for (std::ptrdiff_t j = 0; j < kResamplePoints; ++j) {
    double d = 1.0;
    for (std::ptrdiff_t m = 0; m < kResamplePoints; ++m)
      if (m != j) d *= static_cast<double>(j - m);
    w[static_cast<std::size_t>(j)] = 1.0 / d;
  }
  return w;
}();

/// Lagrange interpolation through samples s..s+kResamplePoints-1.
inline double lagrange(const ResamplePlan& p, std::size_t s, double t) {
  const double u = (t - (p.x_min + static_cast<double>(s) * p.h)) / p.h;
  constexpr std::size_t k = kResamplePoints;
  std::array<double, k> left{};
  double acc = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    left[j] = acc;
    acc *= u - static_cast<double>(j);
  }
  double right = 1.0;
  double sum = 0.0;
  for (std::size_t j = k; j-- > 0;) {
    sum += left[j] * right * kLagrangeDenominators[j] * p.f[s + j];
    right *= u - static_cast<double>(j);
  }
  return sum;
}

inline double tail_at(const Tail& tail, double t) {
  if (tail.mode == Tail::Mode::zero) return 0.0;
  return tail.value * std::exp(-tail.kappa * std::abs(t - tail.anchor));
}

inline double resample_at(const ResamplePlan& p, double t) {
  if (t > p.x_max) return tail_at(p.right, t);
  if (t < p.x_min) {
    if (p.x_min - t <= p.h) return lagrange(p, 0, t);
    return tail_at(p.left, t);
  }
  const double pos = (t - p.x_min) / p.h;
  auto j = static_cast<std::ptrdiff_t>(std::floor(pos));
  std::ptrdiff_t s = j - (kResamplePoints / 2 - 1);
  if (s < 0) s = 0;
  if (s > static_cast<std::ptrdiff_t>(p.n) - kResamplePoints) s = static_cast<std::ptrdiff_t>(p.n) - kResamplePoints;
  return lagrange(p, static_cast<std::size_t>(s), t);
}

namespace serial {
void derivative(const Grid& grid, const double* f, double* out);
void hamiltonian(const Grid& grid, const double* f, const double* v, double* out);
void affine(std::size_t n, const double* a, const double* df, const double* b, const double* f,
            double* out);
void dilate(const Grid& grid, const ResamplePlan& plan, double mu, double* out);
}  // namespace serial

namespace omp {
void derivative(const Grid& grid, const double* f, double* out);
void hamiltonian(const Grid& grid, const double* f, const double* v, double* out);
void affine(std::size_t n, const double* a, const double* df, const double* b, const double* f,
            double* out);
void dilate(const Grid& grid, const ResamplePlan& plan, double mu, double* out);
}  // namespace omp

void derivative(const Grid& grid, const double* f, double* out, ExecPolicy policy = ExecPolicy::automatic);
void hamiltonian(const Grid& grid, const double* f, const double* v, double* out,
                 ExecPolicy policy = ExecPolicy::automatic);
void affine(std::size_t n, const double* a, const double* df, const double* b, const double* f,
            double* out, ExecPolicy policy = ExecPolicy::automatic);
void dilate(const Grid& grid, const ResamplePlan& plan, double mu, double* out,
            ExecPolicy policy = ExecPolicy::automatic);

}  // namespace ladderlab::kernels
