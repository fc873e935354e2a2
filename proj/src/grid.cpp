#include "ladderlab/grid.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "ladderlab/errors.hpp"

namespace ladderlab {

const char* to_string(DomainKind kind) {
  return kind == DomainKind::half_line ? "half_line" : "full_line";
}

Grid::Grid(DomainKind kind, double x_min, double x_max, std::size_t count)
    : kind_(kind), x_min_(x_min), x_max_(x_max), count_(count),
      spacing_((x_max - x_min) / static_cast<double>(count - 1)) {}

Grid Grid::build(DomainKind kind, double x_min, double x_max, std::size_t count) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) throw usage_error("grid bounds must be finite");
  if (!(x_min < x_max)) throw usage_error("grid requires x_min < x_max");
  if (count < 16) throw usage_error("grid requires at least 16 points");
  if (kind == DomainKind::half_line && !(x_min > 0.0)) {
    throw usage_error("half-line grid requires x_min > 0");
  }
  return Grid(kind, x_min, x_max, count);
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(count_);
  for (std::size_t i = 0; i < count_; ++i) xs[i] = x(i);
  return xs;
}

Wavefunction::Wavefunction(Grid g, std::vector<double> v, std::optional<QuantumNumbers> l,
                           std::optional<std::string> h)
    : grid(g), values(std::move(v)), labels(l), hierarchy(std::move(h)) {
  if (values.size() != grid.count()) throw usage_error("wavefunction length does not match grid");
  for (double y : values) {
    if (!std::isfinite(y)) throw numerical_error("wavefunction has non-finite samples");
  }
}

std::vector<double> trapezoid_weights(const Grid& grid) {
  std::vector<double> w(grid.count(), grid.spacing());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double inner_product(const Wavefunction& f, const Wavefunction& g) {
  if (!(f.grid == g.grid)) throw usage_error("inner product of functions on different grids");
  const std::size_t n = f.values.size();
  double sum = 0.5 * (f.values[0] * g.values[0] + f.values[n - 1] * g.values[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) sum += f.values[i] * g.values[i];
  return sum * f.grid.spacing();
}

double norm(const Wavefunction& f) { return std::sqrt(inner_product(f, f)); }

Wavefunction normalize(const Wavefunction& f) {
  const double nrm = norm(f);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw numerical_error("cannot normalize a zero-norm function");
  std::size_t peak = 0;
  for (std::size_t i = 1; i < f.values.size(); ++i) {
    if (std::abs(f.values[i]) > std::abs(f.values[peak])) peak = i;
  }
  const double scale = (f.values[peak] < 0.0 ? -1.0 : 1.0) / nrm;
  Wavefunction g = f;
  for (double& y : g.values) y *= scale;
  const double again = norm(g);
  for (double& y : g.values) y /= again;
  return g;
}

Window interior_window(const Grid& grid, double band) {
  if (!(band >= 0.0 && band < 0.5)) throw usage_error("window band must lie in [0, 0.5)");
  const auto cut = static_cast<std::size_t>(std::floor(band * static_cast<double>(grid.count())));
  return {cut, grid.count() - cut};
}

double window_inner(const Grid& grid, const std::vector<double>& a, const std::vector<double>& b,
                    Window w) {
  if (w.end <= w.begin + 1) return 0.0;
  double sum = 0.5 * (a[w.begin] * b[w.begin] + a[w.end - 1] * b[w.end - 1]);
  for (std::size_t i = w.begin + 1; i + 1 < w.end; ++i) sum += a[i] * b[i];
  return sum * grid.spacing();
}

double window_norm(const Grid& grid, const std::vector<double>& v, Window w) {
  return std::sqrt(window_inner(grid, v, v, w));
}

double window_distance(const Grid& grid, const std::vector<double>& a, const std::vector<double>& b,
                       Window w) {
  std::vector<double> d(a.size());
  for (std::size_t i = w.begin; i < w.end; ++i) d[i] = a[i] - b[i];
  return window_norm(grid, d, w);
}

double window_cosine(const Grid& grid, const std::vector<double>& a, const std::vector<double>& b, Window w) {
  const double na = window_norm(grid, a, w);
  const double nb = window_norm(grid, b, w);
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  return window_inner(grid, a, b, w) / (na * nb);
}

double sup_norm(const std::vector<double>& v, Window w) {
  double m = 0.0;
  for (std::size_t i = w.begin; i < w.end; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

void write_csv(std::ostream& out, const Wavefunction& f) {
  out << "x,psi\n";
  char buf[64];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.grid.x(i), f.values[i]);
    out << buf;
  }
}

}  // namespace ladderlab
