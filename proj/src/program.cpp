#include "rcdual/program.hpp"

#include <limits>

#include "rcdual/descent.hpp"

namespace rcdual {

void Program::validate() const {
  if (n <= 0) throw std::invalid_argument("program: dimension must be positive");
  if (f.dim() != n) throw std::invalid_argument("program: objective dimension mismatch");
  if (constraints.empty())
    throw std::invalid_argument("program: constraint list must be nonempty");
  for (std::size_t t = 0; t < constraints.size(); ++t) {
    const ConvexFunction& h = constraints[t].h;
    if (h.dim() != n)
      throw std::invalid_argument("program: constraint " + std::to_string(t) +
                                  " dimension mismatch");
    if (!h.real_valued())
      throw std::invalid_argument(
          "program: constraint " + std::to_string(t) +
          " must be real-valued (indicator kinds are not allowed as constraints)");
  }
  if (box.dim() != n) throw std::invalid_argument("program: box dimension mismatch");
  box.validate();
}

bool Program::operator==(const Program& o) const {
  return name == o.name && n == o.n && f == o.f && constraints == o.constraints &&
         box == o.box;
}

std::string to_string(FeasClass c) {
  switch (c) {
    case FeasClass::StrictlyFeasible: return "strictly_feasible";
    case FeasClass::WeaklyFeasible: return "weakly_feasible";
    case FeasClass::Infeasible: return "infeasible";
  }
  return "?";
}

FeasibilityVerdict feasibility(const Program& p, const Vec& x, double eps_strict,
                               StrictnessMode mode) {
  const int m = p.num_constraints();
  FeasibilityVerdict v;
  v.margins.resize(m);
  bool all_nonneg = true;
  bool strict_ok = true;
  for (int t = 0; t < m; ++t) {
    const double margin = p.constraints[t].h.eval_real(x);
    v.margins[t] = margin;
    if (margin < 0.0) all_nonneg = false;
    if (constraint_is_strict(p.constraints[t], mode)) {
      if (!(margin > eps_strict)) strict_ok = false;
    } else {
      if (!(margin >= 0.0)) strict_ok = false;
    }
  }
  v.cls = !all_nonneg ? FeasClass::Infeasible
                      : (strict_ok ? FeasClass::StrictlyFeasible : FeasClass::WeaklyFeasible);
  return v;
}

bool passes(const Program& p, const Vec& x, double eps_strict, StrictnessMode mode) {
  for (const Constraint& c : p.constraints) {
    const double margin = c.h.eval_real(x);
    if (constraint_is_strict(c, mode)) {
      if (!(margin > eps_strict)) return false;
    } else {
      if (!(margin >= 0.0)) return false;
    }
  }
  return true;
}

namespace {

double worst_margin(const Program& p, const Vec& x) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Constraint& c : p.constraints) worst = std::max(worst, c.h.eval_real(x));
  return worst;
}

}  // namespace

std::optional<Vec> slater_point_search(const Program& p, int samples, std::uint64_t seed) {
  Vec best = 0.5 * (p.box.lo + p.box.hi);
  double best_val = worst_margin(p, best);

  if (best_val >= 0.0) {
    Sampler rng(seed);
    for (int k = 0; k < samples; ++k) {
      Vec x = rng.uniform_in(p.box);
      double v = worst_margin(p, x);
      if (v < best_val) {
        best_val = v;
        best = std::move(x);
        if (best_val < 0.0) break;
      }
    }
  }

  if (best_val >= 0.0) {
    best = coordinate_descent([&](const Vec& x) { return worst_margin(p, x); },
                              [](const Vec&) { return true; }, p.box, best);
  }
  if (worst_margin(p, best) < 0.0) return best;  // exact re-verification
  return std::nullopt;
}

}  // namespace rcdual
