#include "rcdual/report.hpp"

#include <cmath>
#include <sstream>

#include "rcdual/problem_io.hpp"

namespace rcdual {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// IEEE infinities would serialize as null; tag them as strings instead.
Json double_json(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? Json("+inf") : Json("-inf");
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json opt_vec_json(const std::optional<Vec>& v) { return v ? vec_json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const ExtReal& v) {
  if (v.is_finite()) return v.value();
  return v.is_plus_inf() ? Json("+inf") : Json("-inf");
}

Json to_json(const Estimate& e) {
  Json out;
  out["value"] = to_json(e.value);
  out["bound_side"] = e.bound_side == BoundSide::Exact ? "exact" : "upper";
  out["resolution_bound"] = double_json(e.bound);
  out["refined"] = e.refined;
  out["grid_n"] = e.grid.n_per_axis;
  out["eps_strict"] = e.grid.eps_strict;
  out["witness"] = opt_vec_json(e.witness);
  out["unbounded"] = e.unbounded;
  return out;
}

Json to_json(const RunConfig& cfg) {
  Json out;
  out["grid_n"] = cfg.grid_n;
  out["eps_strict_levels"] = cfg.eps_strict_levels;
  out["seed"] = cfg.seed;
  out["tol_gap"] = cfg.tol_gap;
  out["budget"] = cfg.budget;
  out["pool_base"] = cfg.pool_base;
  out["pool_perturb"] = cfg.pool_perturb;
  out["slater_samples"] = cfg.slater_samples;
  out["witness_samples"] = cfg.witness_samples;
  out["delta_budget"] = cfg.delta_budget;
  return out;
}

Json to_json(const ChainFlag& f) {
  Json out;
  out["name"] = f.name;
  out["pass"] = f.pass;
  out["note"] = f.note;
  return out;
}

Json to_json(const InnerMaxResult& r) {
  Json out;
  out["value"] = to_json(r.value);
  Json w = Json::array();
  for (int t = 0; t < r.lambda.size(); ++t) w.push_back(r.lambda.weights[t]);
  out["multipliers"] = std::move(w);
  out["attained"] = r.attained;
  out["stationarity_residual"] = double_json(r.residual);
  out["diverged"] = r.diverged;
  out["iterations"] = r.iterations;
  return out;
}

Json to_json(const Linearization& phi) {
  Json out;
  Json dirs = Json::array();
  for (const Vec& v : phi.vectors) dirs.push_back(vec_json(v));
  out["directions"] = std::move(dirs);
  out["conjugate_values"] = vec_json(phi.conj_values);
  out["witness"] = opt_vec_json(phi.witness);
  return out;
}

SolveReport solve_report(const Program& p, const RunConfig& cfg) {
  p.validate();
  SolveReport r;
  r.config = cfg;
  r.grid_n = cfg.effective_grid_n(p.n);
  for (double eps : cfg.eps_strict_levels)
    r.declared.emplace_back(
        eps, estimate_min(p, r.grid_n, eps, StrictnessMode::Declared, cfg.budget));
  r.relaxed = estimate_min(p, r.grid_n, 0.0, StrictnessMode::ForceNonstrict, cfg.budget);
  return r;
}

ChainVerification verify_chain(const Program& p, const RunConfig& cfg) {
  ChainVerification v;
  v.dual = duality_report(p, cfg);
  v.equivalence = equivalence_check(p, cfg);

  ChainFlag strict_eq{"strict_sweeps_consistent", false, ""};
  if (!v.dual.alpha_strict.empty()) {
    strict_eq.pass = v.dual.alpha_strict[0].second.value == v.equivalence.inf_strict.value;
    strict_eq.note = strict_eq.pass
                         ? "both pipelines report " + v.dual.alpha_strict[0].second.value.str()
                         : "dual pipeline " + v.dual.alpha_strict[0].second.value.str() +
                               " vs equivalence " + v.equivalence.inf_strict.value.str();
  } else {
    strict_eq.note = "no strictness levels configured";
  }
  v.cross.push_back(std::move(strict_eq));

  ChainFlag relaxed_eq{"relaxed_sweeps_consistent",
                       v.dual.alpha_nonstrict.value == v.equivalence.inf_nonstrict.value, ""};
  relaxed_eq.note = relaxed_eq.pass
                        ? "both pipelines report " + v.dual.alpha_nonstrict.value.str()
                        : "dual pipeline " + v.dual.alpha_nonstrict.value.str() +
                              " vs equivalence " + v.equivalence.inf_nonstrict.value.str();
  v.cross.push_back(std::move(relaxed_eq));

  const bool gap = v.equivalence.verdict == EquivalenceReport::Verdict::GapDetected;
  ChainFlag hyp{"gap_requires_failed_hypothesis",
                !gap || !v.equivalence.failed_hypotheses.empty(), ""};
  hyp.note = gap ? (hyp.pass ? "gap detected and a failed hypothesis is cited"
                             : "gap detected but every hypothesis was certified")
                 : "no gap detected";
  v.cross.push_back(std::move(hyp));
  return v;
}

ConjugateReport conjugate_report(const ConvexFunction& g, const std::string& target,
                                 const Box& box, const RunConfig& cfg, int samples) {
  if (samples < 1) throw std::invalid_argument("conjugate_report: need at least one sample");
  ConjugateReport rep;
  rep.target = target;
  rep.kind = g.kind_name();
  rep.config = cfg;
  rep.grid_n = cfg.effective_grid_n(g.dim());

  std::vector<Vec> ys;
  // The affine conjugate is finite at exactly one point; probe it first so
  // the report always contains the informative case.
  if (g.kind() == ConvexFunction::Kind::Affine) ys.push_back(g.affine_a() * g.scale());
  Sampler rng(cfg.seed);
  for (int k = 0; k < samples; ++k) ys.push_back(rng.gaussian(g.dim(), 1.0));

  for (const Vec& y : ys) {
    ConjugateProbe probe;
    probe.y = y;
    probe.grid = conjugate_grid(g, y, box, rep.grid_n, cfg.budget);
    if (!g.has_closed_conjugate()) {
      probe.consistent = true;
      probe.note = "no closed form for this kind; the lattice value is a certified lower bound";
      rep.probes.push_back(std::move(probe));
      continue;
    }
    probe.has_closed = true;
    probe.closed = g.conjugate_closed(y);
    const double gv = probe.grid.value.as_double();
    if (probe.closed.is_plus_inf()) {
      probe.consistent = true;
      probe.note = "closed form is +inf; any lattice value is consistent from below";
    } else {
      const bool lower_ok = gv <= probe.closed.value() + 1e-9;
      const bool upper_ok = probe.closed.value() <= gv + probe.grid.lower_bound_gap + 1e-9;
      probe.consistent = lower_ok && upper_ok;
      if (!probe.consistent)
        probe.note = "closed " + fmt(probe.closed.value()) + " vs lattice " + fmt(gv) +
                     " with gap " + fmt(probe.grid.lower_bound_gap) +
                     (lower_ok ? "; the box may not capture the defining supremum"
                               : "; the lattice exceeds the closed form");
    }
    rep.probes.push_back(std::move(probe));
  }
  return rep;
}

Json report_json(const Program& p, const SolveReport& r) {
  Json out;
  out["command"] = "solve";
  out["problem"] = serialize(p);
  out["config"] = to_json(r.config);
  out["grid_n"] = r.grid_n;
  Json declared = Json::array();
  for (const auto& [eps, est] : r.declared) {
    Json e;
    e["eps_strict"] = eps;
    e["estimate"] = to_json(est);
    e["witness_class"] =
        est.witness
            ? Json(to_string(feasibility(p, *est.witness, eps, StrictnessMode::Declared).cls))
            : Json(nullptr);
    declared.push_back(std::move(e));
  }
  out["declared"] = std::move(declared);
  out["relaxed"] = to_json(r.relaxed);
  out["note"] =
      "lattice estimates are upper bounds on the infimum; +inf means no feasible point was "
      "found at that strictness level";
  return out;
}

Json report_json(const Program& p, const DualityReport& r) {
  Json out;
  out["command"] = "dual";
  out["problem"] = serialize(p);
  out["config"] = to_json(r.config);
  out["grid"] = Json{{"primal_n", r.grid_n_primal}, {"linearized_n", r.grid_n_linearized}};

  Json chain;
  Json strict = Json::array();
  for (const auto& [eps, est] : r.alpha_strict) {
    Json e;
    e["eps_strict"] = eps;
    e["estimate"] = to_json(est);
    strict.push_back(std::move(e));
  }
  chain["strict_upper"] = std::move(strict);
  chain["relaxed_upper"] = to_json(r.alpha_nonstrict);
  chain["linearized_relaxed_best"] = to_json(r.alpha_bar);
  chain["regularized_dual"] =
      Json{{"value", to_json(r.alpha_bar)},
           {"note", "equal to linearized_relaxed_best by strong duality of the regularized "
                    "pairing; not computed independently"}};
  chain["dual_value"] = to_json(r.beta);
  chain["note"] =
      "grid values are one-sided estimates; the flags assert only orderings those estimates "
      "can support";
  if (!r.alpha_strict.empty() && r.alpha_strict[0].second.value.is_plus_inf())
    chain["trivial_note"] =
        "the strict sweep found no feasible point, so the chain holds trivially at +inf";
  out["value_chain"] = std::move(chain);

  if (r.best_index >= 0) {
    Json best;
    best["index"] = r.best_index;
    best["linearization"] = to_json(r.phi_star);
    best["inner"] = to_json(r.inner_star);
    out["best_member"] = std::move(best);
  } else {
    out["best_member"] = nullptr;
  }

  Json pool = Json::array();
  for (const PoolEntry& e : r.pool) {
    Json m;
    m["source"] = vec_json(e.source);
    m["perturbed"] = e.perturbed;
    m["linearization"] = to_json(e.phi);
    m["inner"] = to_json(e.inner);
    m["value_strict"] = to_json(e.value_strict);
    m["value_relaxed"] = to_json(e.value_nonstrict);
    m["regularity"] = Json{{"holds", e.regularity.holds},
                           {"near_degenerate", e.regularity.near_degenerate},
                           {"unit_values", vec_json(e.regularity.unit_values)}};
    pool.push_back(std::move(m));
  }
  out["pool_size"] = pool.size();
  out["pool"] = std::move(pool);

  Json flags = Json::array();
  for (const ChainFlag& f : r.flags) flags.push_back(to_json(f));
  out["flags"] = std::move(flags);
  out["all_flags_pass"] = r.all_pass();
  return out;
}

Json report_json(const Program& p, const EquivalenceReport& r) {
  Json out;
  out["command"] = "equivalence";
  out["problem"] = serialize(p);
  out["config"] = to_json(r.config);
  out["grid_n"] = r.grid_n;
  out["eps_strict"] = r.eps_strict;
  out["strict"] = to_json(r.inf_strict);
  out["relaxed"] = to_json(r.inf_nonstrict);
  out["delta"] = r.delta ? to_json(*r.delta) : Json(nullptr);
  out["interior_reference"] = opt_vec_json(r.slater);
  Json trace = Json::array();
  for (const EtaTraceEntry& e : r.eta_trace) {
    Json t;
    t["eta"] = e.eta;
    t["witness"] = opt_vec_json(e.witness);
    t["objective_at_witness"] = e.witness ? Json(e.f_at_witness) : Json(nullptr);
    trace.push_back(std::move(t));
  }
  out["eta_trace"] = std::move(trace);
  if (r.strictified)
    out["strictified_witness"] =
        Json{{"point", vec_json(*r.strictified)}, {"objective", r.f_at_strictified}};
  else
    out["strictified_witness"] = nullptr;
  out["verdict"] = to_string(r.verdict);
  out["note"] = r.note;
  out["failed_hypotheses"] = r.failed_hypotheses;
  return out;
}

Json report_json(const std::string& problem_name, const ReductionReport& r) {
  Json out;
  out["command"] = "reduce";
  out["problem"] = problem_name;
  out["config"] = to_json(r.config);
  out["grid_n"] = r.grid_n;
  out["anchor"] = Json{{"point", vec_json(r.outcome.x_anchor)},
                       {"objective", r.outcome.f_at_anchor}};
  out["already_solved"] = r.outcome.already_solved;
  if (r.outcome.program) {
    out["reduced_program"] = serialize(*r.outcome.program);
    out["constraint_at_anchor"] = r.h_at_anchor;
    out["estimates"] = Json{{"direct", to_json(r.direct)},
                            {"reduced_relaxed", to_json(r.reduced_nonstrict)},
                            {"reduced_strict", to_json(r.reduced_strict)}};
  } else {
    out["reduced_program"] = nullptr;
    out["constraint_at_anchor"] = nullptr;
    out["estimates"] = nullptr;
  }
  Json checks = Json::array();
  for (const ChainFlag& f : r.checks) checks.push_back(to_json(f));
  out["checks"] = std::move(checks);
  out["all_checks_pass"] = r.all_pass();
  return out;
}

Json report_json(const Program& p, const ChainVerification& v) {
  Json out;
  out["command"] = "verify-chain";
  out["dual"] = report_json(p, v.dual);
  out["equivalence"] = report_json(p, v.equivalence);
  Json cross = Json::array();
  for (const ChainFlag& f : v.cross) cross.push_back(to_json(f));
  out["cross_checks"] = std::move(cross);
  out["all_pass"] = v.all_pass();
  return out;
}

Json report_json(const std::string& problem_name, const ConjugateReport& r) {
  Json out;
  out["command"] = "conjugate";
  out["problem"] = problem_name;
  out["target"] = r.target;
  out["kind"] = r.kind;
  out["config"] = to_json(r.config);
  out["grid_n"] = r.grid_n;
  Json probes = Json::array();
  for (const ConjugateProbe& p : r.probes) {
    Json e;
    e["y"] = vec_json(p.y);
    e["closed"] = p.has_closed ? to_json(p.closed) : Json(nullptr);
    e["lattice_value"] = to_json(p.grid.value);
    e["lattice_gap"] = p.grid.lower_bound_gap;
    e["consistent"] = p.consistent;
    e["note"] = p.note;
    probes.push_back(std::move(e));
  }
  out["probes"] = std::move(probes);
  out["all_consistent"] = r.all_consistent();
  return out;
}

namespace {

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render(const Json& j, const std::string& indent, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || value.is_array()) {
        os << indent << key << ":";
        if (value.empty()) {
          os << (value.is_array() ? " []" : " {}") << "\n";
        } else {
          os << "\n";
          render(value, indent + "  ", os);
        }
      } else {
        os << indent << key << ": " << scalar_text(value) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const Json& item : j) {
      if (item.is_object() || item.is_array()) {
        os << indent << "-\n";
        render(item, indent + "  ", os);
      } else {
        os << indent << "- " << scalar_text(item) << "\n";
      }
    }
  } else {
    os << indent << scalar_text(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream os;
  render(j, "", os);
  return os.str();
}

}  // namespace rcdual
