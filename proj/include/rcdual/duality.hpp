#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcdual/config.hpp"
#include "rcdual/primal.hpp"

namespace rcdual {

/// One direction per constraint with cached conjugate values.  Such a tuple
/// is admissible for the dual search when some point of dom f has every
/// affine margin <y_t, x> - conj_t strictly positive; `witness` holds one
/// such point when known.
struct Linearization {
  std::vector<Vec> vectors;
  Vec conj_values;
  std::optional<Vec> witness;

  int size() const { return static_cast<int>(vectors.size()); }

  Vec margins_at(const Vec& x) const {
    Vec m(size());
    for (int t = 0; t < size(); ++t) m[t] = vectors[t].dot(x) - conj_values[t];
    return m;
  }
  double min_margin_at(const Vec& x) const { return margins_at(x).minCoeff(); }
};

/// Nonnegative constraint weights; negativity is rejected at construction.
struct Multipliers {
  Vec weights;

  Multipliers() = default;
  explicit Multipliers(Vec w);
  static Multipliers zeros(int m) { return Multipliers(Vec::Zero(m)); }

  int size() const { return static_cast<int>(weights.size()); }
};

/// Lifts a strictly feasible point x in dom f: y_t = subgrad(h_t, x), with
/// conj_t the closed-form conjugate when available and the subgradient
/// Fenchel value <y_t, x> - h_t(x) otherwise.  Every margin at x then equals
/// h_t(x) > 0 (up to conjugate round-off), so x witnesses admissibility.
/// Throws when x is not strictly feasible (all constraints treated strict).
Linearization linearize_at(const Program& p, const Vec& x);

/// Searches the box (coarse lattice + seeded samples + max-min ascent) for a
/// point of dom f with all margins positive; attaches and returns it.
/// nullopt is inconclusive.
std::optional<Vec> find_witness(const Program& p, Linearization& phi, std::uint64_t seed,
                                int samples);

/// Weighted slack sum_t lambda_t * (conj_t - <y_t, x>).
double lagrangian(const Linearization& phi, const Vec& x, const Multipliers& lambda);

struct InnerMaxResult {
  ExtReal value = ExtReal::minus_inf();
  Multipliers lambda;
  bool attained = false;  // stationarity certified: cone-projected residual <= 1e-8
  double residual = std::numeric_limits<double>::infinity();
  bool diverged = false;  // weights escaped past 1e6 with the value still rising
  int iterations = 0;
};

/// Maximizes the concave dual function
///   c(lambda) = sum_t lambda_t * conj_t - f*(sum_t lambda_t y_t)
/// over lambda >= 0.  Single-constraint problems use bracketing plus
/// golden-section (with a derivative bisection polish when f* is smooth);
/// larger ones run projected supergradient ascent (step 1/(1+k), 10^4 steps,
/// stop at relative change < 1e-10) followed by cyclic coordinate ascent.
/// A rising value with |lambda|_inf beyond 1e6 is reported as plus_inf: the
/// catalog conjugates are piecewise linear-quadratic, so unbounded increase
/// along a ray cannot level off at a finite supremum.
InnerMaxResult inner_dual_max(const Program& p, const Linearization& phi);

struct RegularityResult {
  bool holds = false;
  bool near_degenerate = false;  // smallest witness margin below 1e-9
  Vec unit_values;               // conj_t - <y_t, witness> per t; all must be < 0
};

/// Certifies that nonnegative weights with everywhere-nonnegative weighted
/// slack must vanish: at the witness every per-constraint slack is negative,
/// so no nonzero weight survives.  Requires a witness.
RegularityResult check_regularity(const Program& p, const Linearization& phi);

struct PoolEntry {
  Linearization phi;
  Vec source;             // feasible point the directions were lifted from
  bool perturbed = false;
  InnerMaxResult inner;
  Estimate value_strict;     // linearized problem, strict margins
  Estimate value_nonstrict;  // linearized problem, relaxed margins
  RegularityResult regularity;
};

struct DualSearchResult {
  ExtReal beta = ExtReal::plus_inf();  // min over the pool of the inner max
  int best_index = -1;
  std::vector<PoolEntry> pool;
  int grid_n_pool = 0;        // lattice used to harvest source points
  int grid_n_linearized = 0;  // lattice used for the per-member linearized values
};

/// Builds the candidate pool (subgradient lifts of the best `pool_base`
/// strictly feasible lattice points by objective value, each with
/// `pool_perturb` seeded Gaussian perturbations that keep a verified
/// witness), then evaluates the inner maximization and both linearized
/// values for every member.  Deterministic for a fixed config.
/// Throws when no pool member exists — by the admissibility criterion the
/// program then has no strictly feasible point in dom f (as far as the
/// lattice can see).
DualSearchResult dual_search(const Program& p, const RunConfig& cfg);

struct ChainFlag {
  std::string name;
  bool pass = false;
  std::string note;  // violating numbers when failing, context otherwise
};

struct DualityReport {
  std::vector<std::pair<double, Estimate>> alpha_strict;  // one per eps level
  Estimate alpha_nonstrict;
  ExtReal alpha_bar = ExtReal::plus_inf();  // min over pool of relaxed linearized values
  ExtReal beta = ExtReal::plus_inf();
  Linearization phi_star;
  InnerMaxResult inner_star;
  std::vector<PoolEntry> pool;
  int best_index = -1;
  std::vector<ChainFlag> flags;
  int grid_n_primal = 0;
  int grid_n_linearized = 0;
  RunConfig config;

  bool all_pass() const {
    for (const ChainFlag& f : flags)
      if (!f.pass) return false;
    return true;
  }
};

/// Full pipeline for an all-strict program with a closed-form objective
/// conjugate: primal sweeps (one per eps level, plus the relaxed sweep),
/// dual search, and the assertable ordering flags.  The regularized dual
/// value is not computed independently; it equals the regularized primal
/// value by strong duality for the regularized pair, and reports say so.
DualityReport duality_report(const Program& p, const RunConfig& cfg);

}  // namespace rcdual
