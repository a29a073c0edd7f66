#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcdual/convex_function.hpp"

namespace rcdual {

/// One reverse convex constraint: h(x) > 0 when strict, h(x) >= 0 otherwise.
struct Constraint {
  ConvexFunction h;
  bool strict = true;

  bool operator==(const Constraint& o) const { return strict == o.strict && h == o.h; }
};

/// min f(x) over the search box, subject to h_t(x) > 0 / >= 0 per constraint.
struct Program {
  std::string name;
  int n = 0;
  ConvexFunction f = ConvexFunction::affine(Vec::Zero(1), 0.0);
  std::vector<Constraint> constraints;
  Box box;

  int num_constraints() const { return static_cast<int>(constraints.size()); }

  /// Throws std::invalid_argument naming the violated requirement.
  void validate() const;

  bool operator==(const Program& o) const;
};

enum class FeasClass { StrictlyFeasible, WeaklyFeasible, Infeasible };

std::string to_string(FeasClass c);

struct FeasibilityVerdict {
  FeasClass cls = FeasClass::Infeasible;
  Vec margins;  // h_t(x) per constraint
};

/// Overrides the per-constraint strict flags for sweeps that force one side.
enum class StrictnessMode { Declared, ForceStrict, ForceNonstrict };

inline bool constraint_is_strict(const Constraint& c, StrictnessMode mode) {
  switch (mode) {
    case StrictnessMode::Declared: return c.strict;
    case StrictnessMode::ForceStrict: return true;
    case StrictnessMode::ForceNonstrict: return false;
  }
  return c.strict;
}

/// Classifies x:
///   strictly_feasible  — every strict margin > eps_strict and every
///                        non-strict margin >= 0;
///   weakly_feasible    — all margins >= 0 but not strictly_feasible
///                        (some strict margin sits in [0, eps_strict]);
///   infeasible         — some margin < 0.
FeasibilityVerdict feasibility(const Program& p, const Vec& x, double eps_strict = 0.0,
                               StrictnessMode mode = StrictnessMode::Declared);

/// True iff x satisfies every constraint under the given mode: margin >
/// eps_strict where strict, margin >= 0 where not.  The grid sweeps use this
/// directly (it is feasibility(...) == StrictlyFeasible without building the
/// margins vector).
bool passes(const Program& p, const Vec& x, double eps_strict, StrictnessMode mode);

/// Searches for a point with h_t < 0 for every t: box center, `samples`
/// seeded uniform draws, then coordinate descent on max_t h_t from the best
/// start.  The returned point is re-verified exactly; nullopt is inconclusive
/// (no nonexistence claim).
std::optional<Vec> slater_point_search(const Program& p, int samples, std::uint64_t seed);

}  // namespace rcdual
