// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ladderlab/grid.hpp"
#include "ladderlab/kernels.hpp"

using namespace ladderlab;

namespace {

struct Fixture {
  explicit Fixture(std::size_t n)
      : grid(Grid::build(DomainKind::half_line, 1e-4, 60.0, n)), f(n), v(n), a(n), b(n), df(n), out(n) {
    for (std::size_t i = 0; i < n; ++i) {
      const double r = grid.x(i);
      f[i] = std::sqrt(r) * std::exp(-0.5 * r);
      v[i] = -2.0 / r;
      a[i] = 0.5 * std::sqrt(r);
      b[i] = -std::sqrt(r) / 3.0;
    }
    kernels::serial::derivative(grid, f.data(), df.data());
    plan.f = f.data();
    plan.n = n;
    plan.x_min = grid.x_min();
    plan.x_max = grid.x_max();
    plan.h = grid.spacing();
  }
  Grid grid;
  std::vector<double> f, v, a, b, df, out;
  kernels::ResamplePlan plan;
};

template <bool Parallel>
void derivative(benchmark::State& st) {
  Fixture x(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    if constexpr (Parallel) kernels::omp::derivative(x.grid, x.f.data(), x.out.data());
    else kernels::serial::derivative(x.grid, x.f.data(), x.out.data());
    benchmark::DoNotOptimize(x.out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void hamiltonian(benchmark::State& st) {
  Fixture x(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    if constexpr (Parallel) kernels::omp::hamiltonian(x.grid, x.f.data(), x.v.data(), x.out.data());
    else kernels::serial::hamiltonian(x.grid, x.f.data(), x.v.data(), x.out.data());
    benchmark::DoNotOptimize(x.out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void affine(benchmark::State& st) {
  Fixture x(static_cast<std::size_t>(st.range(0)));
  const std::size_t n = x.f.size();
  for (auto _ : st) {
    if constexpr (Parallel) kernels::omp::affine(n, x.a.data(), x.df.data(), x.b.data(), x.f.data(), x.out.data());
    else kernels::serial::affine(n, x.a.data(), x.df.data(), x.b.data(), x.f.data(), x.out.data());
    benchmark::DoNotOptimize(x.out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void dilate(benchmark::State& st) {
  Fixture x(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    if constexpr (Parallel) kernels::omp::dilate(x.grid, x.plan, 0.875, x.out.data());
    else kernels::serial::dilate(x.grid, x.plan, 0.875, x.out.data());
    benchmark::DoNotOptimize(x.out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

#define LADDERLAB_PAIR(fn)                                                         \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->RangeMultiplier(8)->Range(4001, 256064); \
  BENCHMARK(fn<true>)->Name(#fn "/omp")->RangeMultiplier(8)->Range(4001, 256064)

LADDERLAB_PAIR(derivative);
LADDERLAB_PAIR(hamiltonian);
LADDERLAB_PAIR(affine);
LADDERLAB_PAIR(dilate);

BENCHMARK_MAIN();
