#include "rcdual/convex_function.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "rcdual/descent.hpp"

namespace rcdual {

// ---------------------------------------------------------------------------
// GaugeFunction

void GaugeFunction::validate() const {
  if (lin.size() == 0 || anchor.size() != lin.rows())
    throw std::invalid_argument("gauge: linear map and anchor dimensions disagree");
  if (shape == Shape::Polytope) {
    if (rows.rows() == 0 || rows.cols() != lin.rows() || offsets.size() != rows.rows())
      throw std::invalid_argument("gauge: polytope rows/offsets dimensions disagree");
    for (int i = 0; i < offsets.size(); ++i)
      if (!(offsets[i] > 0.0))
        throw std::invalid_argument("gauge: all polytope offsets must be > 0");
  } else {
    if (center.size() != lin.rows())
      throw std::invalid_argument("gauge: ball center dimension disagrees with the map");
    if (!(radius > 0.0) || !(center.norm() < radius))
      throw std::invalid_argument("gauge: ball must contain the origin in its interior");
  }
}

double GaugeFunction::gauge(const Vec& z) const {
  if (shape == Shape::Polytope) {
    double best = 0.0;  // value 0 when every inner product is <= 0
    for (int i = 0; i < rows.rows(); ++i) {
      double ratio = rows.row(i).dot(z) / offsets[i];
      if (ratio > best) best = ratio;
    }
    return best;
  }
  const double a2 = radius * radius - center.squaredNorm();
  const double s = z.dot(center);
  return (-s + std::sqrt(s * s + a2 * z.squaredNorm())) / a2;
}

Vec GaugeFunction::gauge_subgrad(const Vec& z) const {
  if (shape == Shape::Polytope) {
    double best = 0.0;
    int best_i = -1;  // -1 means the zero region
    for (int i = 0; i < rows.rows(); ++i) {
      double ratio = rows.row(i).dot(z) / offsets[i];
      if (ratio > best) {
        best = ratio;
        best_i = i;
      }
    }
    if (best_i < 0) return Vec::Zero(z.size());
    return rows.row(best_i).transpose() / offsets[best_i];
  }
  const double a2 = radius * radius - center.squaredNorm();
  const double s = z.dot(center);
  const double root = std::sqrt(s * s + a2 * z.squaredNorm());
  if (root == 0.0) return Vec::Zero(z.size());  // z = 0: kink, pick 0
  const double rho = (-s + root) / a2;
  // Implicit differentiation of (a2)rho^2 + 2 rho s - |z|^2 = 0:
  //   grad rho = (z - rho*center) / (a2*rho + s), and a2*rho + s = root.
  return (z - rho * center) / root;
}

bool GaugeFunction::operator==(const GaugeFunction& o) const {
  if (shape != o.shape || lin != o.lin || anchor != o.anchor) return false;
  if (shape == Shape::Polytope) return rows == o.rows && offsets == o.offsets;
  return center == o.center && radius == o.radius;
}

// ---------------------------------------------------------------------------
// factories

ConvexFunction ConvexFunction::affine(Vec a, double b) {
  if (a.size() == 0) throw std::invalid_argument("affine: empty gradient");
  ConvexFunction g;
  g.kind_ = Kind::Affine;
  g.dim_ = static_cast<int>(a.size());
  g.a_ = std::move(a);
  g.b_ = b;
  return g;
}

ConvexFunction ConvexFunction::quadratic(Mat Q, Vec c, double r) {
  const int n = static_cast<int>(Q.rows());
  if (n == 0 || Q.cols() != n || c.size() != n)
    throw std::invalid_argument("quadratic: Q must be square and match c");
  Mat sym = 0.5 * (Q + Q.transpose());
  if ((sym - Q).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + Q.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("quadratic: Q must be symmetric");
  Eigen::LLT<Mat> llt(sym);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("quadratic: Q not positive definite");
  // LLT succeeds on some singular matrices; verify the pivots are truly positive.
  Vec diag = llt.matrixL().toDenseMatrix().diagonal();
  if (diag.minCoeff() <= 1e-12 * (1.0 + diag.maxCoeff()))
    throw std::invalid_argument("quadratic: Q not positive definite");
  ConvexFunction g;
  g.kind_ = Kind::Quadratic;
  g.dim_ = n;
  g.Q_ = std::move(sym);
  g.Qinv_ = llt.solve(Mat::Identity(n, n));
  g.c_ = std::move(c);
  g.r_ = r;
  return g;
}

ConvexFunction ConvexFunction::sq_norm2(int dim, double s) {
  if (dim <= 0) throw std::invalid_argument("sq_norm2: dimension must be positive");
  if (!(s > 0.0)) throw std::invalid_argument("sq_norm2: scale must be > 0");
  ConvexFunction g;
  g.kind_ = Kind::SqNorm2;
  g.dim_ = dim;
  g.sq_scale_ = s;
  return g;
}

ConvexFunction ConvexFunction::norm(int dim, int p) {
  if (dim <= 0) throw std::invalid_argument("norm: dimension must be positive");
  if (p != 0 && p != 1 && p != 2)
    throw std::invalid_argument("norm: p must be 1, 2, or 0 (max norm)");
  ConvexFunction g;
  g.kind_ = Kind::Norm;
  g.dim_ = dim;
  g.p_ = p;
  return g;
}

ConvexFunction ConvexFunction::box_indicator(Vec lo, Vec hi) {
  if (lo.size() == 0 || lo.size() != hi.size())
    throw std::invalid_argument("box_indicator: bounds must be nonempty and of equal size");
  for (int i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i]))
      throw std::invalid_argument("box_indicator: lower <= upper required (domain nonempty)");
  ConvexFunction g;
  g.kind_ = Kind::BoxIndicator;
  g.dim_ = static_cast<int>(lo.size());
  g.lo_ = std::move(lo);
  g.hi_ = std::move(hi);
  return g;
}

ConvexFunction ConvexFunction::gauge_affine(GaugeFunction gf, double shift) {
  gf.validate();
  ConvexFunction g;
  g.kind_ = Kind::GaugeAffine;
  g.dim_ = gf.input_dim();
  g.gauge_ = std::move(gf);
  g.gauge_shift_ = shift;
  return g;
}

ConvexFunction ConvexFunction::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("scaled: factor must be > 0");
  ConvexFunction g = *this;
  g.scale_ *= s;
  g.offset_ *= s;
  return g;
}

ConvexFunction ConvexFunction::shifted(double b) const {
  ConvexFunction g = *this;
  g.offset_ += b;
  return g;
}

// ---------------------------------------------------------------------------
// evaluation

bool ConvexFunction::in_domain(const Vec& x) const {
  if (kind_ != Kind::BoxIndicator) return true;
  for (int i = 0; i < dim_; ++i)
    if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
  return true;
}

double ConvexFunction::base_eval_finite(const Vec& x) const {
  switch (kind_) {
    case Kind::Affine:
      return a_.dot(x) + b_;
    case Kind::Quadratic: {
      double q = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (int j = 0; j < dim_; ++j) row += Q_.coeff(i, j) * x[j];
        q += x[i] * row;
      }
      return 0.5 * q + c_.dot(x) + r_;
    }
    case Kind::SqNorm2:
      return sq_scale_ * x.squaredNorm();
    case Kind::Norm:
      if (p_ == 1) return x.cwiseAbs().sum();
      if (p_ == 2) return x.norm();
      return x.cwiseAbs().maxCoeff();
    case Kind::BoxIndicator:
      return 0.0;  // caller checked the domain
    case Kind::GaugeAffine:
      return gauge_.eval(x) + gauge_shift_;
  }
  return 0.0;
}

ExtReal ConvexFunction::eval(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("eval: dimension mismatch");
  if (!in_domain(x)) return ExtReal::plus_inf();
  return ExtReal::finite(scale_ * base_eval_finite(x) + offset_);
}

double ConvexFunction::eval_real(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("eval: dimension mismatch");
  if (!in_domain(x))
    throw std::logic_error("eval_real: point outside the domain of an indicator kind");
  return scale_ * base_eval_finite(x) + offset_;
}

Vec ConvexFunction::base_subgrad(const Vec& x) const {
  switch (kind_) {
    case Kind::Affine:
      return a_;
    case Kind::Quadratic:
      return Q_ * x + c_;
    case Kind::SqNorm2:
      return 2.0 * sq_scale_ * x;
    case Kind::Norm: {
      if (p_ == 1) {
        Vec y(dim_);
        for (int i = 0; i < dim_; ++i) y[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
        return y;
      }
      if (p_ == 2) {
        double nx = x.norm();
        if (nx == 0.0) return Vec::Zero(dim_);
        Vec y = x / nx;
        // Normalization can overshoot the unit ball by an ulp, which would
        // kick the selected point out of the conjugate's domain; nudge back
        // inside so the Fenchel equality stays exact to machine precision.
        double ny = y.norm();
        if (ny > 1.0) y /= ny * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
        return y;
      }
      // max norm: +/- e_i at the first coordinate attaining the max; 0 at 0
      double nx = x.cwiseAbs().maxCoeff();
      Vec y = Vec::Zero(dim_);
      if (nx == 0.0) return y;
      for (int i = 0; i < dim_; ++i) {
        if (std::abs(x[i]) == nx) {
          y[i] = x[i] > 0 ? 1.0 : -1.0;
          break;
        }
      }
      return y;
    }
    case Kind::BoxIndicator: {
      // active-face normal of smallest coordinate index (upper face first)
      Vec y = Vec::Zero(dim_);
      for (int i = 0; i < dim_; ++i) {
        if (x[i] == hi_[i]) {
          y[i] = 1.0;
          return y;
        }
        if (x[i] == lo_[i]) {
          y[i] = -1.0;
          return y;
        }
      }
      return y;  // interior
    }
    case Kind::GaugeAffine:
      return gauge_.subgrad(x);
  }
  return Vec::Zero(dim_);
}

Vec ConvexFunction::subgrad(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("subgrad: dimension mismatch");
  if (!in_domain(x)) throw std::invalid_argument("subgrad: point outside the domain");
  return scale_ * base_subgrad(x);
}

// ---------------------------------------------------------------------------
// conjugates

ExtReal ConvexFunction::base_conjugate(const Vec& y) const {
  switch (kind_) {
    case Kind::Affine:
      // indicator of {a}, shifted by -b
      return (y == a_) ? ExtReal::finite(-b_) : ExtReal::plus_inf();
    case Kind::Quadratic: {
      Vec d = y - c_;
      return ExtReal::finite(0.5 * d.dot(Qinv_ * d) - r_);
    }
    case Kind::SqNorm2:
      return ExtReal::finite(y.squaredNorm() / (4.0 * sq_scale_));
    case Kind::Norm: {
      // indicator of the dual-norm unit ball
      double dual;
      if (p_ == 1) dual = y.cwiseAbs().maxCoeff();
      else if (p_ == 2) dual = y.norm();
      else dual = y.cwiseAbs().sum();
      return dual <= 1.0 ? ExtReal::finite(0.0) : ExtReal::plus_inf();
    }
    case Kind::BoxIndicator: {
      // support function of the box
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += std::max(lo_[i] * y[i], hi_[i] * y[i]);
      return ExtReal::finite(s);
    }
    case Kind::GaugeAffine:
      throw std::logic_error("unreachable");
  }
  return ExtReal::plus_inf();
}

ExtReal ConvexFunction::conjugate_closed(const Vec& y) const {
  if (y.size() != dim_) throw std::invalid_argument("conjugate_closed: dimension mismatch");
  if (!has_closed_conjugate())
    throw std::invalid_argument(
        "conjugate_closed: no closed form for kind '" + kind_name() +
        "'; use conjugate_grid");
  // (s*base + off)*(y) = s*base*(y/s) - off
  ExtReal base = base_conjugate(y / scale_);
  if (!base.is_finite()) return base;
  return ExtReal::finite(scale_ * base.value() - offset_);
}

bool ConvexFunction::operator==(const ConvexFunction& o) const {
  if (kind_ != o.kind_ || dim_ != o.dim_ || scale_ != o.scale_ || offset_ != o.offset_)
    return false;
  switch (kind_) {
    case Kind::Affine: return a_ == o.a_ && b_ == o.b_;
    case Kind::Quadratic: return Q_ == o.Q_ && c_ == o.c_ && r_ == o.r_;
    case Kind::SqNorm2: return sq_scale_ == o.sq_scale_;
    case Kind::Norm: return p_ == o.p_;
    case Kind::BoxIndicator: return lo_ == o.lo_ && hi_ == o.hi_;
    case Kind::GaugeAffine: return gauge_ == o.gauge_ && gauge_shift_ == o.gauge_shift_;
  }
  return false;
}

std::string ConvexFunction::kind_name() const {
  switch (kind_) {
    case Kind::Affine: return "affine";
    case Kind::Quadratic: return "quadratic";
    case Kind::SqNorm2: return "sq_norm2";
    case Kind::Norm: return p_ == 0 ? "norm_inf" : (p_ == 1 ? "norm_1" : "norm_2");
    case Kind::BoxIndicator: return "box_indicator";
    case Kind::GaugeAffine: return "gauge_affine";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// grid conjugate oracle

double sampled_lipschitz(const ConvexFunction& g, const Box& box) {
  const int n = box.dim();
  const int samples = 257;
  double lip = 0.0;
  Vec mid = 0.5 * (box.lo + box.hi);

  auto scan_line = [&](const Vec& from, const Vec& to) {
    Vec prev_x;
    double prev_v = 0.0;
    bool have_prev = false;
    for (int k = 0; k < samples; ++k) {
      double t = static_cast<double>(k) / (samples - 1);
      Vec x = from + t * (to - from);
      ExtReal v = g.eval(x);
      if (!v.is_finite()) {
        have_prev = false;
        continue;
      }
      if (have_prev) {
        double dist = (x - prev_x).norm();
        if (dist > 0.0) lip = std::max(lip, std::abs(v.value() - prev_v) / dist);
      }
      prev_x = x;
      prev_v = v.value();
      have_prev = true;
    }
  };

  scan_line(box.lo, box.hi);
  for (int i = 0; i < n; ++i) {
    Vec from = mid, to = mid;
    from[i] = box.lo[i];
    to[i] = box.hi[i];
    scan_line(from, to);
  }
  return lip;
}

ConjugateResult conjugate_grid(const ConvexFunction& g, const Vec& y, const Box& box,
                               int n_per_axis, double budget) {
  if (y.size() != g.dim() || box.dim() != g.dim())
    throw std::invalid_argument("conjugate_grid: dimension mismatch");
  box.validate();
  check_grid_budget(box.dim(), n_per_axis, budget);

  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for_each_grid_point(box, n_per_axis, [&](const Vec& x) {
    ExtReal v = g.eval(x);
    if (!v.is_finite()) return;
    any = true;
    double cand = y.dot(x) - v.value();
    if (cand > best) best = cand;
  });
  if (!any)
    throw std::invalid_argument("conjugate_grid: the domain of g does not meet the box");

  ConjugateResult res;
  res.value = ExtReal::finite(best);
  res.exact = false;
  res.lower_bound_gap =
      (y.norm() + sampled_lipschitz(g, box)) * box.max_width() / (n_per_axis - 1);
  return res;
}

// ---------------------------------------------------------------------------
// unconstrained minimization

std::pair<Vec, ExtReal> minimize_unconstrained(const ConvexFunction& g, const Box& box) {
  if (box.dim() != g.dim()) throw std::invalid_argument("minimize_unconstrained: dimension mismatch");
  switch (g.kind()) {
    case ConvexFunction::Kind::Quadratic: {
      Vec x = -(g.quad_Qinv() * g.quad_c());
      return {x, g.eval(x)};
    }
    case ConvexFunction::Kind::SqNorm2:
    case ConvexFunction::Kind::Norm: {
      Vec x = Vec::Zero(g.dim());
      return {x, g.eval(x)};
    }
    case ConvexFunction::Kind::BoxIndicator: {
      // any point of the box works; tie-break: the lower corner
      Vec x = g.box_lo();
      return {x, g.eval(x)};
    }
    default:
      break;
  }

  if (g.kind() == ConvexFunction::Kind::GaugeAffine) {
    // the gauge part vanishes exactly where lin*x == anchor; coordinate
    // descent cannot find that point (a max of pieces is flat coordinate-wise)
    const GaugeFunction& gf = g.gauge();
    Vec x = Eigen::ColPivHouseholderQR<Mat>(gf.lin).solve(gf.anchor);
    if ((gf.lin * x - gf.anchor).cwiseAbs().maxCoeff() <= 1e-12 && box.contains(x))
      return {x, g.eval(x)};
  }

  // lattice scan + coordinate descent for kinds without a closed-form argmin
  const int n = auto_grid_n(box.dim(), 1e6);
  double best = std::numeric_limits<double>::infinity();
  Vec best_x;
  for_each_grid_point(box, n, [&](const Vec& x) {
    ExtReal v = g.eval(x);
    if (v.is_finite() && v.value() < best) {
      best = v.value();
      best_x = x;
    }
  });
  if (!std::isfinite(best))
    throw std::invalid_argument("minimize_unconstrained: domain does not meet the box");
  Vec refined = coordinate_descent(
      [&](const Vec& x) { return g.eval_real(x); },
      [&](const Vec& x) { return g.in_domain(x); }, box, best_x);
  return {refined, g.eval(refined)};
}

}  // namespace rcdual
