#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcdual/config.hpp"
#include "rcdual/primal.hpp"

namespace rcdual {

/// One row of the eta ladder: for each slack eta > 0, a strictly feasible
/// point whose objective value stays below the relaxed value plus eta.  A
/// full ladder is the numerical face of "every neighborhood of the relaxed
/// optimum contains strictly feasible points of almost the same value".
struct EtaTraceEntry {
  double eta = 0.0;
  std::optional<Vec> witness;
  double f_at_witness = 0.0;  // meaningful only when witness is set
};

/// Searches for a strictly feasible point x (margins > 0, x in dom f) with
/// f(x) < base_value + eta: lattice sweep first, then a strict local descent
/// from the best strict lattice point, then seeded samples.  Throws when
/// eta <= 0 or base_value is not finite.
std::optional<Vec> eta_witness(const Program& p, double eta, double base_value,
                               const RunConfig& cfg);

/// Line-segment strictification: given x_bar feasible for the relaxed
/// program (all margins >= 0) and a reference x_tilde with every constraint
/// strictly negative, the points x_s = x_bar + s*(x_bar - x_tilde) satisfy
///   h_t(x_s) >= (1+s)*h_t(x_bar) - s*h_t(x_tilde) >= s*(-h_t(x_tilde)) > 0
/// by convexity, so each is strictly feasible for every s > 0.  Scans
/// s = 2^-60, ..., 2^-1 smallest-first and returns the first x_s that is
/// strictly feasible in exact arithmetic on the evaluations and has
/// f(x_s) <= f(x_bar) + delta_budget.  Returns x_bar itself when it is
/// already strictly feasible.  Tiny s can collapse to x_bar in floating
/// point; those steps simply fail the strictness test and are skipped.
std::optional<Vec> strictify(const Program& p, const Vec& x_bar, const Vec& x_tilde,
                             double delta_budget);

struct EquivalenceReport {
  enum class Verdict { EqualWithinTol, GapDetected, Inconclusive };

  Estimate inf_strict;     // every constraint forced strict
  Estimate inf_nonstrict;  // every constraint relaxed
  /// inf_strict - inf_nonstrict; unset when neither sweep found a point.
  std::optional<ExtReal> delta;
  double eps_strict = 0.0;
  /// A point with every constraint strictly negative (interior of the
  /// complement region), when one was found.
  std::optional<Vec> slater;
  std::vector<EtaTraceEntry> eta_trace;
  /// Strictified relaxed witness, when the segment construction succeeded.
  std::optional<Vec> strictified;
  double f_at_strictified = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  /// Hypotheses of the equivalence statement that could not be certified
  /// (reported for context; mandatory reading when a gap is detected).
  std::vector<std::string> failed_hypotheses;
  std::string note;
  int grid_n = 0;
  RunConfig config;
};

const char* to_string(EquivalenceReport::Verdict v);

/// Compares the strict and relaxed variants of p on the same lattice, runs
/// the eta ladder and the strictification construction, and classifies:
/// equal_within_tol (difference within combined resolution and the ladder
/// complete), gap_detected (difference exceeds every bound), else
/// inconclusive.  Throws when the relaxed sweep is unbounded below.
EquivalenceReport equivalence_check(const Program& p, const RunConfig& cfg);

}  // namespace rcdual
