#pragma once

#include <cstdint>
#include <vector>

#include "rcdual/grid.hpp"

namespace rcdual {

/// Every knob that affects a run, echoed verbatim into reports so any result
/// is reproducible from the report alone.
struct RunConfig {
  int grid_n = 0;  // points per axis; 0 = derive from the budget and dimension
  std::vector<double> eps_strict_levels = {0.0, 1e-9};
  std::uint64_t seed = 1;
  double tol_gap = 1e-4;
  double budget = kDefaultGridBudget;

  int pool_base = 32;      // feasible grid points lifted into the dual pool
  int pool_perturb = 8;    // seeded perturbations per lifted point
  int slater_samples = 4096;
  int witness_samples = 4096;
  double delta_budget = 1e-6;  // objective slack allowed when nudging to strictness

  double primary_eps() const { return eps_strict_levels.empty() ? 0.0 : eps_strict_levels[0]; }

  int effective_grid_n(int dim) const {
    return grid_n > 0 ? grid_n : auto_grid_n(dim, budget);
  }
};

}  // namespace rcdual
