#pragma once

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "rcdual/duality.hpp"
#include "rcdual/equivalence.hpp"
#include "rcdual/reduction.hpp"

namespace rcdual {

/// JSON building blocks.  Infinities are encoded as the strings "+inf" and
/// "-inf" so reports stay valid JSON; every estimate is emitted with its
/// bound side and resolution bound, never as a bare number.
nlohmann::ordered_json to_json(const ExtReal& v);
nlohmann::ordered_json to_json(const Estimate& e);
nlohmann::ordered_json to_json(const RunConfig& cfg);
nlohmann::ordered_json to_json(const ChainFlag& f);
nlohmann::ordered_json to_json(const InnerMaxResult& r);
nlohmann::ordered_json to_json(const Linearization& phi);

/// Primal sweep of the program as declared, one estimate per strictness
/// epsilon, plus the fully relaxed reference sweep.
struct SolveReport {
  std::vector<std::pair<double, Estimate>> declared;
  Estimate relaxed;
  int grid_n = 0;
  RunConfig config;
};

SolveReport solve_report(const Program& p, const RunConfig& cfg);

/// verify-chain: the dual pipeline and the strict-vs-relaxed analysis on the
/// same program, plus cross-checks that the two agree where they overlap.
struct ChainVerification {
  DualityReport dual;
  EquivalenceReport equivalence;
  std::vector<ChainFlag> cross;

  bool all_pass() const {
    if (!dual.all_pass()) return false;
    for (const ChainFlag& f : cross)
      if (!f.pass) return false;
    return true;
  }
};

ChainVerification verify_chain(const Program& p, const RunConfig& cfg);

/// One conjugate comparison: the closed form (when the catalog has one)
/// against the lattice lower bound with its resolution gap.
struct ConjugateProbe {
  Vec y;
  bool has_closed = false;
  ExtReal closed = ExtReal::plus_inf();
  ConjugateResult grid;
  bool consistent = false;
  std::string note;
};

struct ConjugateReport {
  std::string target;  // "objective" or "constraint[i]"
  std::string kind;
  std::vector<ConjugateProbe> probes;
  int grid_n = 0;
  RunConfig config;

  bool all_consistent() const {
    for (const ConjugateProbe& p : probes)
      if (!p.consistent) return false;
    return true;
  }
};

/// Samples `samples` seeded Gaussian directions (plus the exact support
/// point for affine functions) and compares closed and lattice conjugates.
/// The lattice value is a lower bound; the upper comparison uses the
/// resolution gap and is meaningful when the defining supremum is attained
/// inside the box.
ConjugateReport conjugate_report(const ConvexFunction& g, const std::string& target,
                                 const Box& box, const RunConfig& cfg, int samples);

nlohmann::ordered_json report_json(const Program& p, const SolveReport& r);
nlohmann::ordered_json report_json(const Program& p, const DualityReport& r);
nlohmann::ordered_json report_json(const Program& p, const EquivalenceReport& r);
nlohmann::ordered_json report_json(const std::string& problem_name, const ReductionReport& r);
nlohmann::ordered_json report_json(const Program& p, const ChainVerification& v);
nlohmann::ordered_json report_json(const std::string& problem_name, const ConjugateReport& r);

/// Deterministic plain-text rendering of a report object (keys in insertion
/// order, two-space indentation, arrays as dashed items).
std::string render_text(const nlohmann::ordered_json& j);

}  // namespace rcdual
