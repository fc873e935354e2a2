#include "ladderlab/operator_chain.hpp"

#include <algorithm>
#include <cmath>

#include "ladderlab/errors.hpp"
#include "ladderlab/kernels.hpp"

namespace ladderlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> tabulate(const Coefficient& fn, const Grid& grid, ExecPolicy policy) {
  std::vector<double> out(grid.count());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  const bool par = run_parallel(policy, out.size());
#pragma omp parallel for schedule(static) if (par) num_threads(max_threads())
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = fn(grid.x(static_cast<std::size_t>(i)));
  for (double v : out) {
    if (!std::isfinite(v)) throw numerical_error("operator coefficient is not finite on the grid");
  }
  return out;
}

kernels::Tail make_tail(double anchor, double edge, double next, double peak, double h,
                        double negligible) {
  kernels::Tail tail;
  tail.anchor = anchor;
  if (edge == 0.0) return tail;
  if ((edge > 0.0) == (next > 0.0) && std::abs(next) > std::abs(edge)) {
    tail.mode = kernels::Tail::Mode::exponential;
    tail.value = edge;
    tail.kappa = std::log(std::abs(next) / std::abs(edge)) / h;
    return tail;
  }
  if (std::abs(edge) < negligible * peak) return tail;
  throw numerical_error("dilation needs values beyond the grid but the function is not decaying there");
}

}  // namespace

OperatorChain::OperatorChain(std::string name, std::vector<OperatorAtom> atoms)
    : name_(std::move(name)), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw usage_error("operator chain '" + name_ + "' has no atoms");
  if (differential_count() > 2) throw usage_error("operator chain '" + name_ + "' has more than two derivatives");
  for (const auto& atom : atoms_) {
    if (const auto* d = std::get_if<Dilation>(&atom); d && !(d->mu > 0.0 && std::isfinite(d->mu))) {
      throw usage_error("dilation factor must be positive");
    }
  }
}

std::size_t OperatorChain::differential_count() const {
  return static_cast<std::size_t>(std::count_if(atoms_.begin(), atoms_.end(), [](const OperatorAtom& a) {
    return std::holds_alternative<Differential>(a);
  }));
}

OperatorChain compose(const OperatorChain& outer, const OperatorChain& inner, std::string name) {
  std::vector<OperatorAtom> atoms = outer.atoms();
  atoms.insert(atoms.end(), inner.atoms().begin(), inner.atoms().end());
  if (name.empty()) name = outer.name() + "*" + inner.name();
  return OperatorChain(std::move(name), std::move(atoms));
}

Wavefunction dilate(const Wavefunction& f, double mu, const ApplyOptions& opts) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw usage_error("dilation factor must be positive");
  if (mu == 1.0) return Wavefunction(f.grid, f.values);

  const Grid& g = f.grid;
  const double h = g.spacing();
  const double lo = std::min(mu * g.x_min(), g.x_min());
  const double hi = std::max(mu * g.x_max(), g.x_max());
  double lo_limit;
  double hi_limit;
  if (g.kind() == DomainKind::half_line) {
    lo_limit = g.x_min() - h;
    hi_limit = opts.extrapolation_margin * g.x_max();
  } else {
    const double span = g.x_max() - g.x_min();
    lo_limit = g.x_min() - (opts.extrapolation_margin - 1.0) * span;
    hi_limit = g.x_max() + (opts.extrapolation_margin - 1.0) * span;
  }
  if (lo < lo_limit - 1e-12 * h || hi > hi_limit * (1.0 + 1e-14)) {
    throw numerical_error("dilation by " + std::to_string(mu) + " reaches beyond the extrapolation margin");
  }

  const auto& v = f.values;
  const std::size_t n = v.size();
  double peak = 0.0;
  for (double y : v) peak = std::max(peak, std::abs(y));

  kernels::ResamplePlan plan;
  plan.f = v.data();
  plan.n = n;
  plan.x_min = g.x_min();
  plan.x_max = g.x_max();
  plan.h = h;
  if (hi > g.x_max()) plan.right = make_tail(g.x_max(), v[n - 1], v[n - 2], peak, h, opts.negligible_tail);
  if (lo < g.x_min() - h) plan.left = make_tail(g.x_min(), v[0], v[1], peak, h, opts.negligible_tail);

  std::vector<double> out(n);
  kernels::dilate(g, plan, mu, out.data(), opts.policy);
  return Wavefunction(g, std::move(out));
}

Wavefunction apply(const OperatorAtom& atom, const Wavefunction& f, const ApplyOptions& opts) {
  const Grid& g = f.grid;
  return std::visit(
      overloaded{
          [&](const Differential& d) {
            const auto a = tabulate(d.a, g, opts.policy);
            const auto b = tabulate(d.b, g, opts.policy);
            std::vector<double> df(g.count());
            kernels::derivative(g, f.values.data(), df.data(), opts.policy);
            std::vector<double> out(g.count());
            kernels::affine(g.count(), a.data(), df.data(), b.data(), f.values.data(), out.data(), opts.policy);
            return Wavefunction(g, std::move(out));
          },
          [&](const Scalar& s) {
            auto c = tabulate(s.c, g, opts.policy);
            for (std::size_t i = 0; i < c.size(); ++i) c[i] *= f.values[i];
            return Wavefunction(g, std::move(c));
          },
          [&](const Dilation& d) { return dilate(f, d.mu, opts); },
      },
      atom);
}

Wavefunction apply(const OperatorChain& op, const Wavefunction& f, const ApplyOptions& opts) {
  Wavefunction out(f.grid, f.values);
  const auto& atoms = op.atoms();
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) out = apply(*it, out, opts);
  return out;
}

Gauge power_gauge(double p) {
  return {[p](double r) { return std::pow(r, p); }, [p](double r) { return p / r; }};
}

Wavefunction apply_gauged(const OperatorChain& op, const Wavefunction& f, const Gauge& in, const Gauge& out,
                          const ApplyOptions& opts) {
  const Grid& g = f.grid;
  const auto& atoms = op.atoms();
  std::size_t last_diff = atoms.size();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (std::holds_alternative<Differential>(atoms[k])) {
      last_diff = k;
      break;
    }
  }
  auto gauge = tabulate(in.value, g, opts.policy);
  std::vector<double> u(g.count());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = f.values[i] / gauge[i];
  Wavefunction cur(g, std::move(u));
  const Gauge* current = &in;
  for (std::size_t k = atoms.size(); k-- > 0;) {
    const OperatorAtom& atom = atoms[k];
    if (const auto* d = std::get_if<Differential>(&atom)) {
      const auto a = tabulate(d->a, g, opts.policy);
      auto b = tabulate(d->b, g, opts.policy);
      const auto logd = tabulate(current->log_derivative, g, opts.policy);
      for (std::size_t i = 0; i < b.size(); ++i) b[i] += a[i] * logd[i];
      std::vector<double> du(g.count());
      kernels::derivative(g, cur.values.data(), du.data(), opts.policy);
      std::vector<double> next(g.count());
      kernels::affine(g.count(), a.data(), du.data(), b.data(), cur.values.data(), next.data(), opts.policy);
      if (k == last_diff && current != &out) {
        const auto target = tabulate(out.value, g, opts.policy);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] *= gauge[i] / target[i];
        gauge = target;
        current = &out;
      }
      cur = Wavefunction(g, std::move(next));
    } else if (const auto* dil = std::get_if<Dilation>(&atom)) {
      cur = dilate(cur, dil->mu, opts);
      for (std::size_t i = 0; i < cur.values.size(); ++i) {
        cur.values[i] *= current->value(dil->mu * g.x(i)) / gauge[i];
      }
    } else {
      cur = apply(atom, cur, opts);
    }
  }
  for (std::size_t i = 0; i < cur.values.size(); ++i) cur.values[i] *= gauge[i];
  return cur;
}

Wavefunction commutator_apply(const OperatorChain& p, const OperatorChain& q, const Wavefunction& f,
                              const ApplyOptions& opts) {
  const Wavefunction pq = apply(p, apply(q, f, opts), opts);
  const Wavefunction qp = apply(q, apply(p, f, opts), opts);
  std::vector<double> out(pq.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pq.values[i] - qp.values[i];
  return Wavefunction(f.grid, std::move(out));
}

Wavefunction apply_hamiltonian(const Coefficient& potential, const Wavefunction& f, ExecPolicy policy) {
  const auto v = tabulate(potential, f.grid, policy);
  std::vector<double> out(f.values.size());
  kernels::hamiltonian(f.grid, f.values.data(), v.data(), out.data(), policy);
  return Wavefunction(f.grid, std::move(out));
}

}  // namespace ladderlab
