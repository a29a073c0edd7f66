#include "rcdual/duality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "rcdual/descent.hpp"

namespace rcdual {

namespace {

constexpr double kDivergenceCap = 1e6;
constexpr double kAttainTol = 1e-8;
constexpr double kFloorTol = 1e-9;
constexpr double kNearDegenerate = 1e-9;

double neg_inf() { return -std::numeric_limits<double>::infinity(); }

}  // namespace

Multipliers::Multipliers(Vec w) : weights(std::move(w)) {
  for (int t = 0; t < weights.size(); ++t)
    if (!(weights[t] >= 0.0))
      throw std::invalid_argument("multipliers must be nonnegative");
}

Linearization linearize_at(const Program& p, const Vec& x) {
  if (x.size() != p.n) throw std::invalid_argument("linearize_at: dimension mismatch");
  if (!p.f.in_domain(x))
    throw std::invalid_argument("linearize_at: point lies outside the objective domain");

  const int m = p.num_constraints();
  Linearization phi;
  phi.vectors.reserve(m);
  phi.conj_values.resize(m);
  for (int t = 0; t < m; ++t) {
    const ConvexFunction& h = p.constraints[t].h;
    const double ht = h.eval_real(x);
    if (!(ht > 0.0))
      throw std::invalid_argument("linearize_at: point is not strictly feasible (constraint " +
                                  std::to_string(t) + " margin " + std::to_string(ht) + ")");
    Vec y = h.subgrad(x);
    // The subgradient Fenchel value <y,x> - h(x) equals h*(y) for exact
    // subgradients and is a valid lower bound of h*(y) in any case; prefer
    // the closed form when it is finite (round-off can push a computed
    // subgradient a hair outside dom h*, e.g. norm kinds at |y| = 1 + ulp).
    double conj = y.dot(x) - ht;
    if (h.has_closed_conjugate()) {
      ExtReal closed = h.conjugate_closed(y);
      if (closed.is_finite()) conj = closed.value();
    }
    const double margin = y.dot(x) - conj;
    if (!(margin > 0.0))
      throw std::invalid_argument(
          "linearize_at: conjugate round-off cancelled the margin of constraint " +
          std::to_string(t) + "; the point is numerically on the boundary");
    phi.vectors.push_back(std::move(y));
    phi.conj_values[t] = conj;
  }
  phi.witness = x;
  return phi;
}

std::optional<Vec> find_witness(const Program& p, Linearization& phi, std::uint64_t seed,
                                int samples) {
  if (phi.size() != p.num_constraints())
    throw std::invalid_argument("find_witness: direction count mismatch");

  Vec best;
  double best_margin = neg_inf();
  auto consider = [&](const Vec& x) {
    if (!p.f.in_domain(x)) return;
    double m = phi.min_margin_at(x);
    if (m > best_margin) {
      best_margin = m;
      best = x;
    }
  };

  for_each_grid_point(p.box, auto_grid_n(p.n, 1e4), consider);
  if (!(best_margin > 0.0)) {
    Sampler rng(seed);
    for (int k = 0; k < samples; ++k) consider(rng.uniform_in(p.box));
  }
  if (!(best_margin > 0.0) && best.size() == p.n) {
    Vec ascended = coordinate_descent(
        [&](const Vec& x) { return -phi.min_margin_at(x); },
        [&](const Vec& x) { return p.f.in_domain(x); }, p.box, best);
    consider(ascended);
  }
  if (best.size() == p.n && best_margin > 0.0 && p.f.in_domain(best)) {
    phi.witness = best;
    return best;
  }
  return std::nullopt;
}

double lagrangian(const Linearization& phi, const Vec& x, const Multipliers& lambda) {
  if (lambda.size() != phi.size())
    throw std::invalid_argument("lagrangian: weight count mismatch");
  double s = 0.0;
  for (int t = 0; t < phi.size(); ++t)
    s += lambda.weights[t] * (phi.conj_values[t] - phi.vectors[t].dot(x));
  return s;
}

// ---------------------------------------------------------------------------
// inner concave maximization

namespace {

Vec aggregate(const Linearization& phi, const Vec& lam) {
  Vec agg = Vec::Zero(phi.vectors[0].size());
  for (int t = 0; t < phi.size(); ++t) agg += lam[t] * phi.vectors[t];
  return agg;
}

/// c(lambda) as a plain double, -inf when f*(sum lambda_t y_t) = +inf.
double dual_value(const ConvexFunction& f, const Linearization& phi, const Vec& lam) {
  ExtReal fs = f.conjugate_closed(aggregate(phi, lam));
  if (!fs.is_finite()) return neg_inf();
  return lam.dot(phi.conj_values) - fs.value();
}

bool smooth_conjugate(const ConvexFunction& f) {
  return f.kind() == ConvexFunction::Kind::Quadratic ||
         f.kind() == ConvexFunction::Kind::SqNorm2;
}

/// Gradient of f* for the smooth kinds.  With f = s*base + off,
/// f*(y) = s*base*(y/s) - off, so grad f*(y) = grad base*(y/s).
Vec grad_conjugate(const ConvexFunction& f, const Vec& y) {
  Vec z = y / f.scale();
  if (f.kind() == ConvexFunction::Kind::Quadratic) return f.quad_Qinv() * (z - f.quad_c());
  return z / (2.0 * f.sq_scale());
}

/// One representable slice of the subdifferential of f* at y: the point v,
/// plus optionally a ray direction (v + s*ray lies in the subdifferential for
/// every s >= 0).  Used only to certify stationarity, so a subset suffices.
struct ConjSubgrad {
  Vec v;
  std::optional<Vec> ray;
};

ConjSubgrad conjugate_subgradient(const ConvexFunction& f, const Vec& y) {
  const int n = f.dim();
  Vec z = y / f.scale();
  switch (f.kind()) {
    case ConvexFunction::Kind::Quadratic:
    case ConvexFunction::Kind::SqNorm2:
      return {grad_conjugate(f, y), std::nullopt};
    case ConvexFunction::Kind::BoxIndicator: {
      // support-function subgradient: a maximizing point of the box
      Vec v(n);
      for (int i = 0; i < n; ++i)
        v[i] = z[i] > 0.0 ? f.box_hi()[i]
                          : (z[i] < 0.0 ? f.box_lo()[i]
                                        : 0.5 * (f.box_lo()[i] + f.box_hi()[i]));
      return {v, std::nullopt};
    }
    case ConvexFunction::Kind::Norm: {
      // f* is the indicator of the dual-norm unit ball: subgradient 0 in the
      // interior, plus the outward normal ray on the boundary.
      const int p = f.norm_p();
      double dual;
      if (p == 1) dual = z.cwiseAbs().maxCoeff();
      else if (p == 2) dual = z.norm();
      else dual = z.cwiseAbs().sum();
      ConjSubgrad cs{Vec::Zero(n), std::nullopt};
      if (std::abs(dual - 1.0) <= 1e-9) {
        const int dual_p = p == 1 ? 0 : (p == 2 ? 2 : 1);
        cs.ray = ConvexFunction::norm(n, dual_p).subgrad(z);
      }
      return cs;
    }
    default:
      return {Vec::Zero(n), std::nullopt};
  }
}

/// Largest cone-projected stationarity violation certified by the
/// representable subdifferential slice: per component, |g_t| where the weight
/// is active and max(g_t, 0) where it is zero, minimized over the ray scale.
double stationarity_residual(const ConvexFunction& f, const Linearization& phi,
                             const Vec& lam) {
  ConjSubgrad cs = conjugate_subgradient(f, aggregate(phi, lam));
  auto residual_with = [&](const Vec& v) {
    double r = 0.0;
    for (int t = 0; t < phi.size(); ++t) {
      double g = phi.conj_values[t] - phi.vectors[t].dot(v);
      r = std::max(r, lam[t] > 0.0 ? std::abs(g) : std::max(g, 0.0));
    }
    return r;
  };
  double res = residual_with(cs.v);
  if (cs.ray) {
    double num = 0.0, den = 0.0;
    for (int t = 0; t < phi.size(); ++t) {
      if (!(lam[t] > 0.0)) continue;
      double u = phi.vectors[t].dot(*cs.ray);
      double g = phi.conj_values[t] - phi.vectors[t].dot(cs.v);
      num += g * u;
      den += u * u;
    }
    if (den > 0.0) {
      double s = std::max(0.0, num / den);
      res = std::min(res, residual_with(cs.v + s * (*cs.ray)));
    }
  }
  return res;
}

struct RayMax {
  double arg = 0.0;
  double val = neg_inf();
  bool diverged = false;
  int evals = 0;
};

/// Maximizes a concave g over [0, inf).  Doubles an upper end while g keeps
/// increasing; strictly finite increase past the cap is declared divergence.
/// Then golden-section on the bracket, tracking the best evaluated point.
RayMax max_concave_ray(const std::function<double(double)>& g, double cap = kDivergenceCap) {
  RayMax best;
  auto consider = [&](double t, double v) {
    ++best.evals;
    if (v > best.val) {
      best.val = v;
      best.arg = t;
    }
  };
  consider(0.0, g(0.0));
  double U = 1.0, gU = g(U);
  consider(U, gU);
  while (U <= cap) {
    double g2 = g(2.0 * U);
    if (!(g2 > gU)) break;
    bool both_finite = std::isfinite(g2) && std::isfinite(gU);
    U *= 2.0;
    gU = g2;
    consider(U, gU);
    if (U > cap && both_finite) {
      best.diverged = true;
      return best;
    }
  }

  double a = 0.0, b = std::min(2.0 * U, 2.0 * cap);
  const double r = 0.6180339887498949;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = g(x1), f2 = g(x2);
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 0; it < 240 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = g(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = g(x2);
      consider(x2, f2);
    }
  }
  return best;
}

/// For smooth f*, sharpens a 1-D maximizer along lambda_t by bisecting the
/// exact directional derivative d(s) = conj_t - <y_t, grad f*(base + s y_t)>,
/// which is nonincreasing.  Returns nullopt when the derivative stays
/// positive past the cap (the ray diverges).
std::optional<double> bisect_smooth_coordinate(const ConvexFunction& f,
                                               const Linearization& phi, int t,
                                               const Vec& base_agg, double start) {
  auto d = [&](double s) {
    return phi.conj_values[t] -
           phi.vectors[t].dot(grad_conjugate(f, base_agg + s * phi.vectors[t]));
  };
  if (d(0.0) <= 0.0) return 0.0;
  double lo = 0.0, hi = std::max(1.0, start);
  while (d(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 4.0 * kDivergenceCap) return std::nullopt;
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (d(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

InnerMaxResult diverged_result(int m, int evals) {
  InnerMaxResult r;
  r.value = ExtReal::plus_inf();
  r.lambda = Multipliers::zeros(m);
  r.diverged = true;
  r.attained = false;
  r.iterations = evals;
  return r;
}

}  // namespace

InnerMaxResult inner_dual_max(const Program& p, const Linearization& phi) {
  const int m = phi.size();
  if (m != p.num_constraints())
    throw std::invalid_argument("inner_dual_max: direction count mismatch");
  for (int t = 0; t < m; ++t)
    if (!std::isfinite(phi.conj_values[t]))
      throw std::invalid_argument("inner_dual_max: conjugate values must be finite");
  const ConvexFunction& f = p.f;

  InnerMaxResult res;

  if (m == 1) {
    auto g = [&](double s) { return dual_value(f, phi, Vec::Constant(1, s)); };
    RayMax ray = max_concave_ray(g);
    if (ray.diverged) return diverged_result(m, ray.evals);
    if (!std::isfinite(ray.val))
      throw std::runtime_error("dual inner problem has empty domain");
    double lam = ray.arg, val = ray.val;
    if (smooth_conjugate(f)) {
      std::optional<double> sharp =
          bisect_smooth_coordinate(f, phi, 0, Vec::Zero(p.n), ray.arg);
      if (!sharp) return diverged_result(m, ray.evals);
      double v = g(*sharp);
      if (v >= val) {
        lam = *sharp;
        val = v;
      }
    }
    res.lambda = Multipliers(Vec::Constant(1, lam));
    res.value = ExtReal::finite(val);
    res.iterations = ray.evals;
  } else {
    // Pinned first phase: projected supergradient ascent with step 1/(1+k),
    // at most 10^4 steps, stopping when consecutive values change by less
    // than 1e-10 relative.  Not monotone, so the best iterate is kept.
    Vec lam = Vec::Zero(m);
    double cur = dual_value(f, phi, lam);
    if (!std::isfinite(cur)) {
      bool found = false;
      for (int t = 0; t < m && !found; ++t) {
        for (int k = -20; k <= 20 && !found; ++k) {
          Vec probe = Vec::Zero(m);
          probe[t] = std::pow(2.0, k);
          if (std::isfinite(dual_value(f, phi, probe))) {
            lam = probe;
            cur = dual_value(f, phi, lam);
            found = true;
          }
        }
      }
      if (!found) throw std::runtime_error("dual inner problem has empty domain");
    }
    Vec best_lam = lam;
    double best_val = cur;
    int steps = 0;
    for (int k = 0; k < 10000; ++k) {
      ++steps;
      ConjSubgrad cs = conjugate_subgradient(f, aggregate(phi, lam));
      Vec g(m);
      for (int t = 0; t < m; ++t) g[t] = phi.conj_values[t] - phi.vectors[t].dot(cs.v);
      Vec next = (lam + g / (1.0 + k)).cwiseMax(0.0);
      double nval = dual_value(f, phi, next);
      for (int h = 0; h < 60 && !std::isfinite(nval); ++h) {
        next = 0.5 * (lam + next);
        nval = dual_value(f, phi, next);
      }
      if (!std::isfinite(nval)) break;
      if (next.maxCoeff() > kDivergenceCap && nval > cur) return diverged_result(m, steps);
      if (nval > best_val) {
        best_val = nval;
        best_lam = next;
      }
      double change = std::abs(nval - cur);
      lam = std::move(next);
      cur = nval;
      if (change < 1e-10 * std::max(1.0, std::abs(cur))) break;
    }

    // Deterministic polish: cyclic coordinate ascent, each coordinate solved
    // by the same bracketing machinery (bisection on the exact derivative
    // when f* is smooth).  The ascent rate above is O(1/sqrt(k)), far short
    // of the value tolerances downstream; the polish closes that gap without
    // touching the pinned phase.
    lam = best_lam;
    for (int cycle = 0; cycle < 100; ++cycle) {
      bool moved = false;
      for (int t = 0; t < m; ++t) {
        Vec base_agg = aggregate(phi, lam) - lam[t] * phi.vectors[t];
        double rest = lam.dot(phi.conj_values) - lam[t] * phi.conj_values[t];
        auto g1 = [&](double s) {
          ExtReal fs = f.conjugate_closed(base_agg + s * phi.vectors[t]);
          if (!fs.is_finite()) return neg_inf();
          return rest + s * phi.conj_values[t] - fs.value();
        };
        double nt = lam[t];
        if (smooth_conjugate(f)) {
          std::optional<double> sharp = bisect_smooth_coordinate(f, phi, t, base_agg, lam[t]);
          if (!sharp) return diverged_result(m, steps);
          nt = *sharp;
        } else {
          RayMax rm = max_concave_ray(g1);
          if (rm.diverged) return diverged_result(m, steps);
          if (rm.val > g1(lam[t])) nt = rm.arg;
        }
        if (std::abs(nt - lam[t]) > 1e-14 * std::max(1.0, std::abs(lam[t]))) moved = true;
        lam[t] = nt;
      }
      if (!moved) break;
    }
    double final_val = dual_value(f, phi, lam);
    if (!std::isfinite(final_val) || final_val < best_val) {
      lam = best_lam;
      final_val = best_val;
    }
    if (!std::isfinite(final_val))
      throw std::runtime_error("dual inner problem has empty domain");
    res.lambda = Multipliers(lam);
    res.value = ExtReal::finite(final_val);
    res.iterations = steps;
  }

  res.residual = stationarity_residual(f, phi, res.lambda.weights);
  res.attained = res.residual <= kAttainTol;
  return res;
}

RegularityResult check_regularity(const Program& p, const Linearization& phi) {
  (void)p;
  if (!phi.witness)
    throw std::invalid_argument("regularity check requires a membership witness");
  RegularityResult r;
  Vec margins = phi.margins_at(*phi.witness);
  r.unit_values = -margins;
  r.holds = margins.minCoeff() > 0.0;
  r.near_degenerate = margins.minCoeff() < kNearDegenerate;
  return r;
}

// ---------------------------------------------------------------------------
// pool construction and the outer search

namespace {

bool same_linearization(const Linearization& a, const Linearization& b) {
  if (a.size() != b.size() || a.conj_values != b.conj_values) return false;
  for (int t = 0; t < a.size(); ++t)
    if (a.vectors[t] != b.vectors[t]) return false;
  return true;
}

}  // namespace

DualSearchResult dual_search(const Program& p, const RunConfig& cfg) {
  p.validate();
  const double eps = cfg.primary_eps();
  DualSearchResult out;
  out.grid_n_pool = cfg.effective_grid_n(p.n);
  out.grid_n_linearized = auto_grid_n(p.n, std::max(1e4, cfg.budget / 100.0));
  check_grid_budget(p.n, out.grid_n_pool, cfg.budget);

  // Best pool_base strictly feasible lattice points by objective value
  // (ties keep the lexicographically earlier point).
  struct Cand {
    double val;
    Vec x;
  };
  std::vector<Cand> seeds_pts;
  auto consider = [&](const Vec& x) {
    if (!passes(p, x, eps, StrictnessMode::ForceStrict)) return;
    ExtReal v = p.f.eval(x);
    if (!v.is_finite()) return;
    double val = v.value();
    if (static_cast<int>(seeds_pts.size()) >= cfg.pool_base) {
      if (!(val < seeds_pts.back().val)) return;
      seeds_pts.pop_back();
    }
    auto pos = std::upper_bound(seeds_pts.begin(), seeds_pts.end(), val,
                                [](double a, const Cand& c) { return a < c.val; });
    seeds_pts.insert(pos, Cand{val, x});
  };
  for_each_grid_point(p.box, out.grid_n_pool, consider);

  if (seeds_pts.empty())
    throw std::runtime_error(
        "no admissible linearization found — the lattice has no strictly feasible point in "
        "the objective's domain, so the strict program may be infeasible");

  // Perturbations need re-evaluable conjugates for every constraint.
  bool all_closed = true;
  for (const Constraint& c : p.constraints)
    if (!c.h.has_closed_conjugate()) all_closed = false;

  Sampler rng(cfg.seed);
  std::vector<Linearization> members;
  std::vector<Vec> sources;
  std::vector<bool> perturbed_flags;
  auto push_member = [&](Linearization&& phi, const Vec& src, bool pert) {
    for (const Linearization& prev : members)
      if (same_linearization(prev, phi)) return;
    members.push_back(std::move(phi));
    sources.push_back(src);
    perturbed_flags.push_back(pert);
  };

  for (const Cand& c : seeds_pts) {
    Linearization lift;
    try {
      lift = linearize_at(p, c.x);
    } catch (const std::invalid_argument&) {
      continue;  // boundary round-off; skip this seed entirely
    }
    const Linearization base = lift;
    push_member(std::move(lift), c.x, false);
    if (!all_closed) continue;
    for (int j = 0; j < cfg.pool_perturb; ++j) {
      Linearization pert;
      pert.vectors.reserve(base.size());
      pert.conj_values.resize(base.size());
      bool ok = true;
      for (int t = 0; t < base.size(); ++t) {
        double sigma = 0.1 * base.vectors[t].norm() + 0.01;
        Vec y = base.vectors[t] + rng.gaussian(p.n, sigma);
        ExtReal conj = p.constraints[t].h.conjugate_closed(y);
        if (!conj.is_finite()) {
          ok = false;
          break;
        }
        pert.vectors.push_back(std::move(y));
        pert.conj_values[t] = conj.value();
      }
      if (!ok) continue;
      if (!(pert.min_margin_at(c.x) > 0.0)) continue;  // witness lost
      pert.witness = c.x;
      push_member(std::move(pert), c.x, true);
    }
  }

  out.pool.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    PoolEntry e;
    e.phi = std::move(members[i]);
    e.source = sources[i];
    e.perturbed = perturbed_flags[i];
    e.inner = inner_dual_max(p, e.phi);
    std::vector<Vec> extras{e.source};
    if (e.phi.witness) extras.push_back(*e.phi.witness);
    e.value_strict = linearized_value(p, e.phi.vectors, e.phi.conj_values, true,
                                      out.grid_n_linearized, 0.0, cfg.budget, extras);
    e.value_nonstrict = linearized_value(p, e.phi.vectors, e.phi.conj_values, false,
                                         out.grid_n_linearized, 0.0, cfg.budget, extras);
    e.regularity = check_regularity(p, e.phi);
    out.pool.push_back(std::move(e));
  }

  for (std::size_t i = 0; i < out.pool.size(); ++i) {
    const ExtReal& v = out.pool[i].inner.value;
    if (out.best_index < 0 || v < out.beta) {
      out.beta = v;
      out.best_index = static_cast<int>(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// report assembly

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt(const ExtReal& v) { return v.str(); }

}  // namespace

DualityReport duality_report(const Program& p, const RunConfig& cfg) {
  p.validate();
  for (const Constraint& c : p.constraints)
    if (!c.strict)
      throw std::invalid_argument(
          "the dual pipeline requires every constraint to be declared strict; "
          "strict-vs-relaxed comparisons live in the equivalence analysis");
  if (!p.f.has_closed_conjugate())
    throw std::invalid_argument(
        "the dual pipeline requires an objective with a closed-form conjugate");

  DualityReport R;
  R.config = cfg;
  R.grid_n_primal = cfg.effective_grid_n(p.n);
  for (double eps : cfg.eps_strict_levels)
    R.alpha_strict.emplace_back(
        eps, estimate_min(p, R.grid_n_primal, eps, StrictnessMode::ForceStrict, cfg.budget));
  R.alpha_nonstrict =
      estimate_min(p, R.grid_n_primal, 0.0, StrictnessMode::ForceNonstrict, cfg.budget);

  DualSearchResult ds = dual_search(p, cfg);
  R.pool = std::move(ds.pool);
  R.beta = ds.beta;
  R.best_index = ds.best_index;
  R.grid_n_linearized = ds.grid_n_linearized;
  if (R.best_index >= 0) {
    R.phi_star = R.pool[R.best_index].phi;
    R.inner_star = R.pool[R.best_index].inner;
  }
  for (const PoolEntry& e : R.pool) R.alpha_bar = ext_min(R.alpha_bar, e.value_nonstrict.value);

  // Assertable orderings only; each failure records the violating numbers.
  const ExtReal floor = [&] {
    ExtReal f0 = p.f.conjugate_closed(Vec::Zero(p.n));
    return f0.is_finite() ? ExtReal::finite(-f0.value()) : ExtReal::minus_inf();
  }();

  ChainFlag reg{"regularity_certified_per_member", true, ""};
  ChainFlag zfloor{"zero_multiplier_floor", true, ""};
  ChainFlag order{"relaxed_value_below_strict_per_member", true, ""};
  ChainFlag weak{"inner_max_below_relaxed_value_per_member", true, ""};
  ChainFlag sandwich{"strict_value_below_witness_objective_per_member", true, ""};
  for (std::size_t i = 0; i < R.pool.size(); ++i) {
    const PoolEntry& e = R.pool[i];
    const std::string tag = "member " + std::to_string(i);
    if (!e.regularity.holds) {
      reg.pass = false;
      reg.note += tag + ": witness margin " + fmt(-e.regularity.unit_values.maxCoeff()) + "; ";
    }
    if (floor.is_finite() && e.inner.value < ExtReal::finite(floor.value() - kFloorTol)) {
      zfloor.pass = false;
      zfloor.note += tag + ": inner " + fmt(e.inner.value) + " < floor " + fmt(floor) + "; ";
    }
    if (!(e.value_nonstrict.value <= e.value_strict.value)) {
      order.pass = false;
      order.note += tag + ": relaxed " + fmt(e.value_nonstrict.value) + " > strict " +
                    fmt(e.value_strict.value) + "; ";
    }
    bool weak_ok;
    if (!e.inner.value.is_finite() || !e.value_nonstrict.value.is_finite())
      weak_ok = e.inner.value <= e.value_nonstrict.value;
    else
      weak_ok = e.inner.value.value() <= e.value_nonstrict.value.value() + kFloorTol;
    if (!weak_ok) {
      weak.pass = false;
      weak.note += tag + ": inner " + fmt(e.inner.value) + " > relaxed value " +
                   fmt(e.value_nonstrict.value) + "; ";
    }
    if (e.phi.witness) {
      ExtReal fw = p.f.eval(*e.phi.witness);
      bool ok = fw.is_finite() && e.value_strict.value.is_finite()
                    ? e.value_strict.value.value() <= fw.value() + kFloorTol
                    : e.value_strict.value <= fw;
      if (!ok) {
        sandwich.pass = false;
        sandwich.note += tag + ": strict value " + fmt(e.value_strict.value) +
                         " > objective at witness " + fmt(fw) + "; ";
      }
    }
  }
  const std::string checked = std::to_string(R.pool.size()) + " members checked";
  for (ChainFlag* f : {&reg, &zfloor, &order, &weak, &sandwich}) {
    if (f->pass) f->note = checked;
    R.flags.push_back(*f);
  }
  return R;
}

}  // namespace rcdual
