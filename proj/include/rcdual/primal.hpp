#pragma once

#include <optional>
#include <vector>

#include "rcdual/program.hpp"

namespace rcdual {

struct GridSpec {
  Box box;
  int n_per_axis = 0;
  double eps_strict = 0.0;
};

/// Grid minimization over a feasible subset only ever over-estimates an
/// infimum, so estimates are upper bounds unless an analytic argument says
/// otherwise.
enum class BoundSide { Upper, Exact };

struct Estimate {
  ExtReal value = ExtReal::plus_inf();  // +inf: no feasible point found (inconclusive)
  std::optional<Vec> witness;           // re-verified feasible point attaining value
  BoundSide bound_side = BoundSide::Upper;
  GridSpec grid;
  bool refined = false;
  double bound = 0.0;     // resolution budget: L * sqrt(n)/2 * max spacing
  bool unbounded = false;  // value sank below -1e12; reported as minus_inf
};

/// Lattice sweep: min of f over grid points passing `mode` feasibility at
/// eps_strict, with deterministic first-improvement tie-breaks (lexicographic
/// order).  `extra_candidates` are evaluated after the lattice, in order;
/// candidates outside the box or infeasible are skipped.
Estimate primal_grid(const Program& p, int n_per_axis, double eps_strict,
                     StrictnessMode mode = StrictnessMode::Declared,
                     double budget = kDefaultGridBudget,
                     const std::vector<Vec>& extra_candidates = {});

/// Coordinate line search from x0 (must be feasible in the given mode) with
/// geometrically shrinking steps, rejecting every move that leaves the
/// feasible set.  Returns a feasible point with f no larger than at x0.
Vec refine_local(const Program& p, const Vec& x0, StrictnessMode mode,
                 double eps_strict = 0.0);

/// primal_grid followed by refine_local from the witness (when one exists).
Estimate estimate_min(const Program& p, int n_per_axis, double eps_strict,
                      StrictnessMode mode = StrictnessMode::Declared,
                      double budget = kDefaultGridBudget,
                      const std::vector<Vec>& extra_candidates = {});

/// The half-space relaxation induced by directions phi and their conjugate
/// values: same objective and box, constraints <phi_t, x> - conj_t > 0 (or
/// >= 0 when strict = false).  All conj values must be finite.
Program linearized_program(const Program& p, const std::vector<Vec>& phi,
                           const Vec& conj_values, bool strict);

/// Grid + refine estimate of the linearized problem's value.
Estimate linearized_value(const Program& p, const std::vector<Vec>& phi,
                          const Vec& conj_values, bool strict, int n_per_axis,
                          double eps_strict = 0.0, double budget = kDefaultGridBudget,
                          const std::vector<Vec>& extra_candidates = {});

}  // namespace rcdual
