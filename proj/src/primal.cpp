#include "rcdual/primal.hpp"

#include <cmath>
#include <limits>

#include "rcdual/descent.hpp"

namespace rcdual {

namespace {

constexpr double kUnboundedCutoff = -1e12;

double resolution_bound(const Program& p, int n_per_axis) {
  const double max_step = p.box.max_width() / (n_per_axis - 1);
  return sampled_lipschitz(p.f, p.box) * 0.5 * std::sqrt(double(p.n)) * max_step;
}

}  // namespace

Estimate primal_grid(const Program& p, int n_per_axis, double eps_strict,
                     StrictnessMode mode, double budget,
                     const std::vector<Vec>& extra_candidates) {
  p.validate();
  check_grid_budget(p.n, n_per_axis, budget);

  Estimate est;
  est.grid = GridSpec{p.box, n_per_axis, eps_strict};
  est.bound = resolution_bound(p, n_per_axis);

  double best = std::numeric_limits<double>::infinity();
  Vec best_x;
  auto consider = [&](const Vec& x) {
    if (!passes(p, x, eps_strict, mode)) return;
    ExtReal v = p.f.eval(x);
    if (!v.is_finite()) return;
    if (v.value() < best) {
      best = v.value();
      best_x = x;
    }
  };
  for_each_grid_point(p.box, n_per_axis, consider);
  for (const Vec& x : extra_candidates) {
    if (x.size() == p.n && p.box.contains(x)) consider(x);
  }

  if (!std::isfinite(best)) return est;  // +inf, no witness: inconclusive
  est.witness = best_x;
  if (best < kUnboundedCutoff) {
    est.value = ExtReal::minus_inf();
    est.unbounded = true;
  } else {
    est.value = ExtReal::finite(best);
  }
  return est;
}

Vec refine_local(const Program& p, const Vec& x0, StrictnessMode mode, double eps_strict) {
  if (x0.size() != p.n) throw std::invalid_argument("refine_local: dimension mismatch");
  if (!p.box.contains(x0) || !passes(p, x0, eps_strict, mode) || !p.f.in_domain(x0))
    throw std::invalid_argument("refine_local: starting point is not feasible");
  return coordinate_descent(
      [&](const Vec& x) { return p.f.eval(x).as_double(); },
      [&](const Vec& x) { return passes(p, x, eps_strict, mode); }, p.box, x0);
}

Estimate estimate_min(const Program& p, int n_per_axis, double eps_strict,
                      StrictnessMode mode, double budget,
                      const std::vector<Vec>& extra_candidates) {
  Estimate est = primal_grid(p, n_per_axis, eps_strict, mode, budget, extra_candidates);
  if (!est.witness || est.unbounded) return est;
  Vec refined = refine_local(p, *est.witness, mode, eps_strict);
  ExtReal v = p.f.eval(refined);
  if (v.is_finite() && v.value() <= est.value.value()) {
    est.value = v;
    est.witness = refined;
    est.refined = true;
    if (v.value() < kUnboundedCutoff) {
      est.value = ExtReal::minus_inf();
      est.unbounded = true;
    }
  }
  return est;
}

Program linearized_program(const Program& p, const std::vector<Vec>& phi,
                           const Vec& conj_values, bool strict) {
  const int m = p.num_constraints();
  if (static_cast<int>(phi.size()) != m || conj_values.size() != m)
    throw std::invalid_argument("linearized_program: one direction per constraint required");
  Program lp;
  lp.name = p.name + "_linearized";
  lp.n = p.n;
  lp.f = p.f;
  lp.box = p.box;
  lp.constraints.reserve(m);
  for (int t = 0; t < m; ++t) {
    if (!std::isfinite(conj_values[t]))
      throw std::invalid_argument(
          "linearized_program: conjugate value for constraint " + std::to_string(t) +
          " is not finite — the direction lies outside the conjugate's domain");
    if (phi[t].size() != p.n)
      throw std::invalid_argument("linearized_program: direction dimension mismatch");
    lp.constraints.push_back(Constraint{ConvexFunction::affine(phi[t], -conj_values[t]), strict});
  }
  return lp;
}

Estimate linearized_value(const Program& p, const std::vector<Vec>& phi,
                          const Vec& conj_values, bool strict, int n_per_axis,
                          double eps_strict, double budget,
                          const std::vector<Vec>& extra_candidates) {
  Program lp = linearized_program(p, phi, conj_values, strict);
  return estimate_min(lp, n_per_axis, eps_strict, StrictnessMode::Declared, budget,
                      extra_candidates);
}

}  // namespace rcdual
