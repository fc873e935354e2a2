#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ladderlab/rational.hpp"

namespace ladderlab {

enum class DomainKind { half_line, full_line };

const char* to_string(DomainKind kind);

/// Uniform sampling grid. Immutable once built.
class Grid {
 public:
  static Grid build(DomainKind kind, double x_min, double x_max, std::size_t count);

  DomainKind kind() const { return kind_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t count() const { return count_; }
  double spacing() const { return spacing_; }
  double x(std::size_t i) const { return i + 1 == count_ ? x_max_ : x_min_ + static_cast<double>(i) * spacing_; }
  std::vector<double> points() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.kind_ == b.kind_ && a.x_min_ == b.x_min_ && a.x_max_ == b.x_max_ && a.count_ == b.count_;
  }

 private:
  Grid(DomainKind kind, double x_min, double x_max, std::size_t count);
  DomainKind kind_;
  double x_min_;
  double x_max_;
  std::size_t count_;
  double spacing_;
};

struct Wavefunction {
  Wavefunction(Grid grid, std::vector<double> values,
               std::optional<QuantumNumbers> labels = std::nullopt,
               std::optional<std::string> hierarchy = std::nullopt);

  /// Samples `fn` at every grid point.
  template <class Fn>
  static Wavefunction sample(const Grid& grid, Fn&& fn) {
    std::vector<double> v(grid.count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.x(i));
    return Wavefunction(grid, std::move(v));
  }

  Grid grid;
  std::vector<double> values;
  std::optional<QuantumNumbers> labels;
  std::optional<std::string> hierarchy;
};

/// Trapezoid weights for the whole grid.
std::vector<double> trapezoid_weights(const Grid& grid);

double inner_product(const Wavefunction& f, const Wavefunction& g);
double norm(const Wavefunction& f);

/// Unit trapezoid norm; the largest-magnitude sample is made positive.
Wavefunction normalize(const Wavefunction& f);

/// Index range [begin, end) with `band` of the points dropped at each end.
struct Window {
  std::size_t begin;
  std::size_t end;
};
Window interior_window(const Grid& grid, double band = 0.05);

/// Band used when comparing states by overlap. Narrower than the residual
/// band so that most of the probability mass of low states is included.
inline constexpr double kOverlapBand = 0.01;

/// Trapezoid L2 norm of `v` restricted to a window.
double window_norm(const Grid& grid, const std::vector<double>& v, Window w);
/// Window norm of a - b.
double window_distance(const Grid& grid, const std::vector<double>& a,
                       const std::vector<double>& b, Window w);
double window_inner(const Grid& grid, const std::vector<double>& a,
                    const std::vector<double>& b, Window w);
/// <a,b> / (|a| |b|) on a window; 0 if either side vanishes there.
double window_cosine(const Grid& grid, const std::vector<double>& a, const std::vector<double>& b, Window w);
double sup_norm(const std::vector<double>& v, Window w);

/// `x,psi` with 17 significant digits.
void write_csv(std::ostream& out, const Wavefunction& f);

}  // namespace ladderlab
