#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcdual/config.hpp"
#include "rcdual/duality.hpp"
#include "rcdual/primal.hpp"

namespace rcdual {

/// Closed convex body with nonempty interior: a polytope {z : Az <= b} or a
/// ball.  The exclusion problem keeps points whose image lies outside the
/// body's interior.
struct ConvexBody {
  enum class Shape { Polytope, Ball };

  Shape shape = Shape::Polytope;
  Mat A;
  Vec b;
  Vec center;
  double radius = 0.0;

  int dim() const {
    return shape == Shape::Polytope ? static_cast<int>(A.cols())
                                    : static_cast<int>(center.size());
  }

  /// Margin vector of the interior test: z is interior iff every entry is
  /// positive (b - Az for polytopes, the single entry radius - |z - center|
  /// for balls).
  Vec interior_margins(const Vec& z) const;
  bool strictly_inside(const Vec& z) const { return interior_margins(z).minCoeff() > 0.0; }

  /// Checks shapes and certifies nonempty interior (a coordinate-descent
  /// search for a point with all margins positive); throws when either fails.
  void validate() const;

  /// The certified interior point used by validate (nullopt if none found).
  std::optional<Vec> interior_point() const;

  bool operator==(const ConvexBody& o) const;
};

/// Gauge of V = D - T*x_anchor composed with z = T*x - T*x_anchor, packaged
/// with the data the reports need.
struct GaugeBuild {
  GaugeFunction gauge;
  Vec x_anchor;   // the anchor in problem space
  Vec t_anchor;   // its image T*x_anchor, interior to D
};

/// Requires T*x_anchor strictly inside D; throws otherwise (the anchor is
/// then itself optimal for the exclusion problem and no reduction is needed).
GaugeBuild build_gauge(const ConvexBody& D, const Mat& T, const Vec& x_anchor);

/// Either the reduced program (single constraint gauge(Tx - Tx~) - 1 >= 0,
/// declared non-strict) or the verdict that the anchor already solves the
/// exclusion problem because its image falls outside the body's interior.
struct ReductionOutcome {
  bool already_solved = false;
  Vec x_anchor;
  double f_at_anchor = 0.0;
  std::optional<Program> program;
};

/// Uses the supplied anchor or the unconstrained minimizer of f.  The anchor
/// must lie in dom f.
ReductionOutcome reduce(const ConvexFunction& f, const Mat& T, const ConvexBody& D,
                        const Box& box, std::optional<Vec> x_anchor = std::nullopt,
                        const std::string& name = "reduced");

struct ReductionReport {
  ReductionOutcome outcome;
  Estimate direct;             // min f over lattice points with T*x outside int D
  Estimate reduced_nonstrict;  // same via the gauge constraint, margin >= 0
  Estimate reduced_strict;     // margin > 0
  double h_at_anchor = 0.0;    // gauge constraint at the anchor; -1 by construction
  std::vector<ChainFlag> checks;
  int grid_n = 0;
  RunConfig config;

  bool all_pass() const {
    for (const ChainFlag& f : checks)
      if (!f.pass) return false;
    return true;
  }
};

/// Runs reduce, then compares the direct membership sweep against the
/// non-strict and strict gauge sweeps (pairwise within combined resolution
/// bounds), checks the anchor margin is exactly -1, and samples the
/// separation equivalence (T*x outside int D <=> gauge >= 1).
ReductionReport verify_reduction(const ConvexFunction& f, const Mat& T, const ConvexBody& D,
                                 const Box& box, const RunConfig& cfg,
                                 std::optional<Vec> x_anchor = std::nullopt,
                                 const std::string& name = "reduced");

}  // namespace rcdual
