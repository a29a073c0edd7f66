#include "rcdual/reduction.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rcdual/descent.hpp"

namespace rcdual {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Vec ConvexBody::interior_margins(const Vec& z) const {
  if (shape == Shape::Polytope) return b - A * z;
  Vec m(1);
  m[0] = radius - (z - center).norm();
  return m;
}

std::optional<Vec> ConvexBody::interior_point() const {
  if (shape == Shape::Ball) return center;
  const int d = dim();
  // Row-normalized margins so the descent is scale-free; the search box is
  // sized from the offsets, which bound how far an interior point can sit
  // from the origin in any normalized facet direction.
  double span = 1.0;
  for (int i = 0; i < b.size(); ++i) span = std::max(span, std::abs(b[i]) / A.row(i).norm());
  Box search{Vec::Constant(d, -2.0 * span - 1.0), Vec::Constant(d, 2.0 * span + 1.0)};
  auto neg_worst = [&](const Vec& z) {
    double w = std::numeric_limits<double>::infinity();
    for (int i = 0; i < b.size(); ++i)
      w = std::min(w, (b[i] - A.row(i).dot(z)) / A.row(i).norm());
    return -w;
  };
  Vec z = coordinate_descent(neg_worst, [](const Vec&) { return true; }, search, Vec::Zero(d));
  if (interior_margins(z).minCoeff() > 0.0) return z;
  return std::nullopt;
}

void ConvexBody::validate() const {
  if (shape == Shape::Polytope) {
    if (A.rows() < 1 || A.cols() < 1)
      throw std::invalid_argument("body: a polytope needs at least one row and one column");
    if (b.size() != A.rows())
      throw std::invalid_argument("body: offset count must match the number of rows");
    for (int i = 0; i < A.rows(); ++i) {
      if (A.row(i).norm() == 0.0)
        throw std::invalid_argument("body: row " + std::to_string(i) + " is the zero vector");
      if (!A.row(i).allFinite() || !std::isfinite(b[i]))
        throw std::invalid_argument("body: rows and offsets must be finite");
    }
  } else {
    if (center.size() < 1) throw std::invalid_argument("body: ball center must be nonempty");
    if (!center.allFinite() || !std::isfinite(radius) || radius <= 0.0)
      throw std::invalid_argument("body: ball radius must be positive and finite");
  }
  if (!interior_point())
    throw std::invalid_argument("body: could not certify a point interior to the body");
}

bool ConvexBody::operator==(const ConvexBody& o) const {
  if (shape != o.shape) return false;
  if (shape == Shape::Polytope) return A == o.A && b == o.b;
  return center == o.center && radius == o.radius;
}

GaugeBuild build_gauge(const ConvexBody& D, const Mat& T, const Vec& x_anchor) {
  D.validate();
  if (T.rows() != D.dim())
    throw std::invalid_argument("gauge: the map's row count must match the body dimension");
  if (T.cols() != x_anchor.size())
    throw std::invalid_argument("gauge: the anchor dimension must match the map's column count");
  Vec t_anchor = T * x_anchor;
  if (!D.strictly_inside(t_anchor))
    throw std::invalid_argument(
        "reduction not applicable: the anchor's image is not interior to the body, so the "
        "anchor already solves the exclusion problem");

  GaugeFunction g;
  g.lin = T;
  g.anchor = t_anchor;
  if (D.shape == ConvexBody::Shape::Polytope) {
    g.shape = GaugeFunction::Shape::Polytope;
    g.rows = D.A;
    g.offsets = D.b - D.A * t_anchor;  // all > 0 by the interior check
  } else {
    g.shape = GaugeFunction::Shape::Ball;
    g.center = D.center - t_anchor;
    g.radius = D.radius;
  }
  g.validate();
  return GaugeBuild{std::move(g), x_anchor, std::move(t_anchor)};
}

ReductionOutcome reduce(const ConvexFunction& f, const Mat& T, const ConvexBody& D,
                        const Box& box, std::optional<Vec> x_anchor, const std::string& name) {
  D.validate();
  box.validate();
  if (f.dim() != T.cols())
    throw std::invalid_argument("reduce: objective dimension must match the map's column count");
  if (box.dim() != f.dim())
    throw std::invalid_argument("reduce: box dimension must match the objective");

  Vec xa = x_anchor ? *x_anchor : minimize_unconstrained(f, box).first;
  ExtReal fa = f.eval(xa);
  if (!fa.is_finite())
    throw std::invalid_argument("reduce: the anchor must lie in the objective's domain");

  ReductionOutcome out;
  out.x_anchor = xa;
  out.f_at_anchor = fa.value();
  if (!D.strictly_inside(T * xa)) {
    out.already_solved = true;
    return out;
  }

  GaugeBuild gb = build_gauge(D, T, xa);
  Program q;
  q.name = name;
  q.n = f.dim();
  q.f = f;
  q.constraints = {Constraint{ConvexFunction::gauge_affine(gb.gauge, -1.0), false}};
  q.box = box;
  q.validate();
  out.program = std::move(q);
  return out;
}

namespace {

/// Lattice + descent estimate of min f over {x : T*x outside int D}, the
/// exclusion problem stated directly on the body.
Estimate direct_exclusion_estimate(const ConvexFunction& f, const Mat& T, const ConvexBody& D,
                                   const Box& box, int n_per_axis, double budget) {
  check_grid_budget(box.dim(), n_per_axis, budget);
  Estimate est;
  est.grid = GridSpec{box, n_per_axis, 0.0};
  const double L = sampled_lipschitz(f, box);
  const double max_step = box.max_width() / static_cast<double>(n_per_axis - 1);
  est.bound = L * 0.5 * std::sqrt(static_cast<double>(box.dim())) * max_step;

  auto excluded = [&](const Vec& x) { return !D.strictly_inside(T * x); };

  double best = std::numeric_limits<double>::infinity();
  Vec best_x;
  for_each_grid_point(box, n_per_axis, [&](const Vec& x) {
    if (!f.in_domain(x) || !excluded(x)) return;
    const double v = f.eval_real(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  });
  if (!best_x.size()) return est;  // +inf: nothing excluded on the lattice

  est.value = ExtReal::finite(best);
  est.witness = best_x;

  Vec refined = coordinate_descent(
      [&](const Vec& x) { return f.eval_real(x); },
      [&](const Vec& x) { return f.in_domain(x) && excluded(x); }, box, best_x);
  const double rv = f.eval_real(refined);
  if (rv <= best) {
    est.value = ExtReal::finite(rv);
    est.witness = refined;
    est.refined = true;
  }
  return est;
}

ChainFlag agreement_flag(const std::string& name, const Estimate& a, const Estimate& b,
                         double tol) {
  ChainFlag flag{name, false, ""};
  if (!a.value.is_finite() || !b.value.is_finite()) {
    flag.pass = a.value == b.value;
    flag.note = flag.pass ? "both sweeps agree at " + a.value.str()
                          : "one sweep found " + a.value.str() + ", the other " + b.value.str();
    return flag;
  }
  const double diff = std::abs(a.value.value() - b.value.value());
  const double allowed = a.bound + b.bound + tol;
  flag.pass = diff <= allowed;
  flag.note = "difference " + fmt(diff) + " against combined resolution " + fmt(allowed);
  return flag;
}

}  // namespace

ReductionReport verify_reduction(const ConvexFunction& f, const Mat& T, const ConvexBody& D,
                                 const Box& box, const RunConfig& cfg,
                                 std::optional<Vec> x_anchor, const std::string& name) {
  ReductionReport rep;
  rep.config = cfg;
  rep.outcome = reduce(f, T, D, box, std::move(x_anchor), name);
  rep.grid_n = cfg.effective_grid_n(f.dim());

  if (rep.outcome.already_solved) {
    rep.checks.push_back(
        {"anchor_outside_interior", true,
         "the anchor's image is not interior to the body; it is optimal with value " +
             fmt(rep.outcome.f_at_anchor)});
    return rep;
  }

  const Program& q = *rep.outcome.program;
  rep.direct = direct_exclusion_estimate(f, T, D, box, rep.grid_n, cfg.budget);
  rep.reduced_nonstrict =
      estimate_min(q, rep.grid_n, 0.0, StrictnessMode::ForceNonstrict, cfg.budget);
  rep.reduced_strict = estimate_min(q, rep.grid_n, 0.0, StrictnessMode::ForceStrict, cfg.budget);
  rep.h_at_anchor = q.constraints[0].h.eval_real(rep.outcome.x_anchor);

  ChainFlag anchor{"anchor_margin_exact", rep.h_at_anchor == -1.0,
                   "constraint value at the anchor is " + fmt(rep.h_at_anchor) +
                       " (wanted -1 exactly)"};
  rep.checks.push_back(std::move(anchor));

  rep.checks.push_back(agreement_flag("direct_vs_nonstrict_agreement", rep.direct,
                                      rep.reduced_nonstrict, cfg.tol_gap));
  rep.checks.push_back(
      agreement_flag("direct_vs_strict_agreement", rep.direct, rep.reduced_strict, cfg.tol_gap));
  rep.checks.push_back(agreement_flag("strict_vs_nonstrict_agreement", rep.reduced_strict,
                                      rep.reduced_nonstrict, cfg.tol_gap));

  // The gauge must reproduce the membership test everywhere, not just at the
  // sweeps' witnesses: sample the box and compare the two predicates, letting
  // only boundary round-off (|margin| <= 1e-12) through.
  {
    const ConvexFunction& h = q.constraints[0].h;
    Sampler rng(cfg.seed);
    const int total = std::max(10000, cfg.witness_samples);
    int mismatches = 0;
    std::string example;
    for (int k = 0; k < total; ++k) {
      Vec x = rng.uniform_in(box);
      const bool excluded = !D.strictly_inside(T * x);
      const double margin = h.eval_real(x);
      if ((margin >= 0.0) != excluded && std::abs(margin) > 1e-12) {
        if (++mismatches == 1)
          example = "first mismatch at margin " + fmt(margin) +
                    (excluded ? " (excluded point)" : " (interior point)");
      }
    }
    ChainFlag sep{"separation_equivalence_sampled", mismatches == 0, ""};
    sep.note = mismatches == 0
                   ? std::to_string(total) + " samples agree"
                   : std::to_string(mismatches) + " of " + std::to_string(total) +
                         " samples disagree; " + example;
    rep.checks.push_back(std::move(sep));
  }

  return rep;
}

}  // namespace rcdual
