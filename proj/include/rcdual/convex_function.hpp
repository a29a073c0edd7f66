#pragma once

#include <optional>
#include <string>
#include <utility>

#include "rcdual/ext_real.hpp"
#include "rcdual/grid.hpp"

namespace rcdual {

/// Minkowski functional of a convex body shifted so the origin is interior,
/// composed with an affine map: gauge(z) with z = lin*x - anchor.
///
/// Polytope body {z : <rows_i, z> <= offsets_i} with all offsets > 0:
///   gauge(z) = max(0, max_i <rows_i, z> / offsets_i).
/// Ball body {z : |z - center| <= radius} with |center| < radius:
///   gauge(z) is the positive root rho of |z/rho - center| = radius.
///   Expanding: (radius^2 - |center|^2) rho^2 + 2 rho <z,center> - |z|^2 = 0,
///   so with A2 := radius^2 - |center|^2 > 0 and s := <z,center>,
///     rho = (-s + sqrt(s^2 + A2*|z|^2)) / A2,
///   which is 0 at z = 0 and reduces to |z|/radius for a centered ball.
struct GaugeFunction {
  enum class Shape { Polytope, Ball };

  Shape shape = Shape::Polytope;
  Mat rows;      // k x d (polytope)
  Vec offsets;   // k, all > 0 (polytope)
  Vec center;    // d (ball, already shifted by the anchor)
  double radius = 0.0;
  Mat lin;       // d x n
  Vec anchor;    // d

  int input_dim() const { return static_cast<int>(lin.cols()); }
  int body_dim() const { return static_cast<int>(lin.rows()); }

  void validate() const;

  double gauge(const Vec& z) const;
  /// One subgradient of gauge at z (in z-space); 0 at the origin/zero region.
  Vec gauge_subgrad(const Vec& z) const;

  double eval(const Vec& x) const { return gauge(lin * x - anchor); }
  Vec subgrad(const Vec& x) const { return lin.transpose() * gauge_subgrad(lin * x - anchor); }

  bool operator==(const GaugeFunction&) const;
};

/// Result of the brute-force conjugate oracle.  The grid supremum is always a
/// lower bound on the true conjugate; lower_bound_gap is the resolution bound
/// that accounts for the lattice spacing.
struct ConjugateResult {
  ExtReal value;
  bool exact = false;
  double lower_bound_gap = 0.0;
};

/// Closed catalog of convex functions on R^n.
///
/// Every member is scale*base(x) + offset with scale > 0, where base is one of
/// the kinds below.  Evaluation, one-subgradient selection, and (except for
/// the gauge kind) the Fenchel conjugate are exact.
class ConvexFunction {
 public:
  enum class Kind { Affine, Quadratic, SqNorm2, Norm, BoxIndicator, GaugeAffine };

  // --- factories (each validates its parameters) ---

  /// a.x + b
  static ConvexFunction affine(Vec a, double b);
  /// 0.5 x'Qx + c.x + r with Q symmetric positive definite
  static ConvexFunction quadratic(Mat Q, Vec c, double r);
  /// s * |x|_2^2, s > 0
  static ConvexFunction sq_norm2(int dim, double s);
  /// |x|_p with p in {1, 2, inf} (norm_inf encoded as p = 0)
  static ConvexFunction norm(int dim, int p);
  /// indicator of [lo, hi]: 0 inside, +inf outside (lo <= hi, degenerate ok)
  static ConvexFunction box_indicator(Vec lo, Vec hi);
  /// gauge(lin*x - anchor) + shift
  static ConvexFunction gauge_affine(GaugeFunction g, double shift);

  /// Wrapper s*g, s > 0.
  ConvexFunction scaled(double s) const;
  /// Wrapper g + b.
  ConvexFunction shifted(double b) const;

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double scale() const { return scale_; }
  double offset() const { return offset_; }

  /// True for every kind except the gauge composition.
  bool has_closed_conjugate() const { return kind_ != Kind::GaugeAffine; }
  /// Finite everywhere (no implicit constraints); false for BoxIndicator.
  bool real_valued() const { return kind_ != Kind::BoxIndicator; }

  bool in_domain(const Vec& x) const;

  /// Exact extended-real value at x.
  ExtReal eval(const Vec& x) const;
  /// Value at x for kinds known to be real-valued (constraint functions).
  double eval_real(const Vec& x) const;

  /// One element of the subdifferential at x (x must be in the domain).
  /// Selection at kinks is deterministic: norms pick 0 at the origin,
  /// the box indicator picks the active-face normal of smallest coordinate
  /// index (interior points map to 0).  The selected y always satisfies the
  /// Fenchel equality g*(y) = <y,x> - g(x).
  Vec subgrad(const Vec& x) const;

  /// Exact conjugate g*(y); throws for kinds without a closed form.
  ExtReal conjugate_closed(const Vec& y) const;

  /// Accessors for serialization and closed forms.
  const Vec& affine_a() const { return a_; }
  double affine_b() const { return b_; }
  const Mat& quad_Q() const { return Q_; }
  const Vec& quad_c() const { return c_; }
  double quad_r() const { return r_; }
  const Mat& quad_Qinv() const { return Qinv_; }
  double sq_scale() const { return sq_scale_; }
  int norm_p() const { return p_; }
  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }
  const GaugeFunction& gauge() const { return gauge_; }
  double gauge_shift() const { return gauge_shift_; }

  bool operator==(const ConvexFunction& other) const;

  std::string kind_name() const;

 private:
  ConvexFunction() = default;

  Kind kind_ = Kind::Affine;
  int dim_ = 0;
  double scale_ = 1.0;
  double offset_ = 0.0;

  Vec a_;
  double b_ = 0.0;
  Mat Q_, Qinv_;
  Vec c_;
  double r_ = 0.0;
  double sq_scale_ = 1.0;
  int p_ = 2;  // 1, 2, or 0 for the max norm
  Vec lo_, hi_;
  GaugeFunction gauge_;
  double gauge_shift_ = 0.0;

  double base_eval_finite(const Vec& x) const;
  Vec base_subgrad(const Vec& x) const;
  ExtReal base_conjugate(const Vec& y) const;
};

/// Largest finite-difference quotient of g along a few deterministic lines
/// through the box (each axis through the center, plus the main diagonal).
/// A cheap stand-in for the Lipschitz constant, used for resolution bounds.
double sampled_lipschitz(const ConvexFunction& g, const Box& box);

/// Brute-force conjugate oracle: sup over the lattice of <y,x> - g(x),
/// skipping points outside dom g.  The reported value never exceeds the true
/// conjugate; lower_bound_gap = (|y| + L) * max_width/(N-1) where L is a
/// sampled Lipschitz estimate of g on the box.
ConjugateResult conjugate_grid(const ConvexFunction& g, const Vec& y, const Box& box,
                               int n_per_axis, double budget = kDefaultGridBudget);

/// Global minimizer of g.  Closed form where the catalog has one (quadratic,
/// norms, squared norm, box indicator); otherwise lattice search over the box
/// followed by coordinate-descent refinement.
std::pair<Vec, ExtReal> minimize_unconstrained(const ConvexFunction& g, const Box& box);

}  // namespace rcdual
