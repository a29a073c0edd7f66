#include "rcdual/equivalence.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rcdual {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool strictly_negative_everywhere(const Program& p, const Vec& x) {
  for (const Constraint& c : p.constraints)
    if (!(c.h.eval_real(x) < 0.0)) return false;
  return true;
}

}  // namespace

std::optional<Vec> eta_witness(const Program& p, double eta, double base_value,
                               const RunConfig& cfg) {
  p.validate();
  if (!(eta > 0.0)) throw std::invalid_argument("eta_witness: eta must be positive");
  if (!std::isfinite(base_value))
    throw std::invalid_argument("eta_witness: the base value must be finite");
  const double target = base_value + eta;

  const int n = auto_grid_n(p.n, std::max(1e4, cfg.budget / 100.0));
  std::optional<Vec> best;
  double best_v = std::numeric_limits<double>::infinity();
  for_each_grid_point(p.box, n, [&](const Vec& x) {
    if (!p.f.in_domain(x) || !passes(p, x, 0.0, StrictnessMode::ForceStrict)) return;
    const double v = p.f.eval_real(x);
    if (v < best_v) {
      best_v = v;
      best = x;
    }
  });
  if (best && best_v < target) return best;
  if (best) {
    Vec refined = refine_local(p, *best, StrictnessMode::ForceStrict, 0.0);
    if (p.f.eval_real(refined) < target) return refined;
  }

  Sampler rng(cfg.seed);
  for (int k = 0; k < cfg.witness_samples; ++k) {
    Vec x = rng.uniform_in(p.box);
    if (!p.f.in_domain(x) || !passes(p, x, 0.0, StrictnessMode::ForceStrict)) continue;
    if (p.f.eval_real(x) < target) return x;
  }
  return std::nullopt;
}

std::optional<Vec> strictify(const Program& p, const Vec& x_bar, const Vec& x_tilde,
                             double delta_budget) {
  p.validate();
  if (x_bar.size() != p.n || x_tilde.size() != p.n)
    throw std::invalid_argument("strictify: point dimension does not match the program");
  if (!(delta_budget >= 0.0))
    throw std::invalid_argument("strictify: the objective slack must be nonnegative");
  if (!strictly_negative_everywhere(p, x_tilde))
    throw std::invalid_argument(
        "strictify: the reference point must make every constraint strictly negative");
  if (!passes(p, x_bar, 0.0, StrictnessMode::ForceNonstrict))
    throw std::invalid_argument(
        "strictify: the starting point is not feasible for the relaxed constraints");

  if (passes(p, x_bar, 0.0, StrictnessMode::ForceStrict) && p.f.in_domain(x_bar)) return x_bar;

  const ExtReal budget = p.f.eval(x_bar) + ExtReal::finite(delta_budget);
  const Vec dir = x_bar - x_tilde;
  for (int k = 60; k >= 1; --k) {
    const double s = std::ldexp(1.0, -k);
    Vec xs = x_bar + s * dir;
    if (!p.f.in_domain(xs)) continue;
    if (!passes(p, xs, 0.0, StrictnessMode::ForceStrict)) continue;
    if (p.f.eval(xs) <= budget) return xs;
  }
  return std::nullopt;
}

const char* to_string(EquivalenceReport::Verdict v) {
  switch (v) {
    case EquivalenceReport::Verdict::EqualWithinTol: return "equal_within_tol";
    case EquivalenceReport::Verdict::GapDetected: return "gap_detected";
    case EquivalenceReport::Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

EquivalenceReport equivalence_check(const Program& p, const RunConfig& cfg) {
  p.validate();
  EquivalenceReport rep;
  rep.config = cfg;
  rep.grid_n = cfg.effective_grid_n(p.n);
  rep.eps_strict = cfg.primary_eps();

  rep.inf_strict =
      estimate_min(p, rep.grid_n, rep.eps_strict, StrictnessMode::ForceStrict, cfg.budget);
  rep.inf_nonstrict =
      estimate_min(p, rep.grid_n, 0.0, StrictnessMode::ForceNonstrict, cfg.budget);
  if (rep.inf_nonstrict.value.is_minus_inf())
    throw std::runtime_error(
        "equivalence: the relaxed problem appears unbounded below (the sweep sank past -1e12), "
        "so there is no finite baseline to compare against");

  rep.slater = slater_point_search(p, cfg.slater_samples, cfg.seed);
  if (!rep.slater)
    rep.failed_hypotheses.push_back(
        "no point with every constraint strictly negative was found, so the interior-point "
        "hypothesis could not be certified");
  if (!p.f.real_valued())
    rep.failed_hypotheses.push_back(
        "the objective is an indicator and is not finite along line segments, so the "
        "segment-continuity hypothesis fails");

  const bool strict_found = rep.inf_strict.value.is_finite();
  const bool relaxed_found = rep.inf_nonstrict.value.is_finite();

  bool eta_ok = false;
  if (relaxed_found) {
    const double base = rep.inf_nonstrict.value.value();
    const double unit = std::max(1.0, std::abs(base));
    eta_ok = true;
    for (double level : {1.0, 0.1, 0.01}) {
      EtaTraceEntry entry;
      entry.eta = level * unit;
      entry.witness = eta_witness(p, entry.eta, base, cfg);
      if (entry.witness)
        entry.f_at_witness = p.f.eval_real(*entry.witness);
      else
        eta_ok = false;
      rep.eta_trace.push_back(std::move(entry));
    }
  }

  if (rep.slater && rep.inf_nonstrict.witness) {
    auto nudged = strictify(p, *rep.inf_nonstrict.witness, *rep.slater, cfg.delta_budget);
    if (nudged) {
      rep.strictified = *nudged;
      rep.f_at_strictified = p.f.eval_real(*nudged);
    }
  }

  if (!strict_found && !relaxed_found) {
    rep.verdict = EquivalenceReport::Verdict::Inconclusive;
    rep.note = "neither sweep found a feasible point on the lattice; nothing to compare";
    return rep;
  }
  if (!relaxed_found) {
    // The strict feasible set sits inside the relaxed one, so a strict hit
    // with an empty relaxed sweep can only be an internal error.
    rep.verdict = EquivalenceReport::Verdict::Inconclusive;
    rep.note = "the relaxed sweep found nothing while the strict sweep did; lattice artifact";
    return rep;
  }

  const double combined = rep.inf_strict.bound + rep.inf_nonstrict.bound + cfg.tol_gap;
  if (!strict_found) {
    rep.delta = ExtReal::plus_inf();
    rep.verdict = EquivalenceReport::Verdict::GapDetected;
    rep.note = "no strictly feasible point exists on the lattice while the relaxed value is " +
               fmt(rep.inf_nonstrict.value.value());
    return rep;
  }

  const double d = rep.inf_strict.value.value() - rep.inf_nonstrict.value.value();
  rep.delta = ExtReal::finite(d);
  if (d > combined) {
    rep.verdict = EquivalenceReport::Verdict::GapDetected;
    rep.note = "the strict value exceeds the relaxed value by " + fmt(d) +
               ", beyond the combined resolution " + fmt(combined);
  } else if (eta_ok) {
    rep.verdict = EquivalenceReport::Verdict::EqualWithinTol;
    rep.note = "difference " + fmt(d) + " within combined resolution " + fmt(combined) +
               " and the eta ladder is complete";
  } else {
    rep.verdict = EquivalenceReport::Verdict::Inconclusive;
    rep.note = "the estimates agree (difference " + fmt(d) +
               ") but the eta ladder is incomplete, so equality is not certified";
  }
  return rep;
}

}  // namespace rcdual
