#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace rcdual {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Axis-aligned box [lo, hi] in R^n; the search region of every sweep.
struct Box {
  Vec lo;
  Vec hi;

  int dim() const { return static_cast<int>(lo.size()); }

  Vec widths() const { return hi - lo; }

  double max_width() const { return (hi - lo).maxCoeff(); }

  bool contains(const Vec& x) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }

  bool operator==(const Box& o) const { return lo == o.lo && hi == o.hi; }

  void validate(bool require_nondegenerate = true) const {
    if (lo.size() != hi.size() || lo.size() == 0)
      throw std::invalid_argument("Box: lower/upper must be nonempty and of equal dimension");
    for (int i = 0; i < dim(); ++i) {
      if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]))
        throw std::invalid_argument("Box: bounds must be finite");
      if (require_nondegenerate ? !(lo[i] < hi[i]) : !(lo[i] <= hi[i]))
        throw std::invalid_argument("Box: lower < upper required componentwise");
    }
  }
};

constexpr double kDefaultGridBudget = 1e7;

/// Total lattice size n_per_axis^dim, guarded against overflow/budget.
inline double grid_total(int dim, int n_per_axis) {
  return std::pow(static_cast<double>(n_per_axis), dim);
}

inline void check_grid_budget(int dim, int n_per_axis, double budget = kDefaultGridBudget) {
  if (n_per_axis < 2) throw std::invalid_argument("grid: need at least 2 points per axis");
  if (grid_total(dim, n_per_axis) > budget)
    throw std::invalid_argument("grid: point budget exceeded (" +
                                std::to_string(grid_total(dim, n_per_axis)) + " > " +
                                std::to_string(budget) + ")");
}

/// Largest per-axis count whose lattice stays within budget, capped for sanity.
inline int auto_grid_n(int dim, double budget = kDefaultGridBudget) {
  const int cap = dim <= 1 ? 100001 : 1001;
  int n = static_cast<int>(std::floor(std::pow(budget, 1.0 / dim)));
  if (n > cap) n = cap;
  if (n < 2) n = 2;
  return n;
}

/// Visits the full lattice in lexicographic order (axis 0 slowest), reusing
/// one coordinate buffer. Endpoints are included: x_i = lo_i + k*(hi_i-lo_i)/(N-1).
/// Lexicographic order makes "first strict improvement" tie-breaks deterministic.
template <class F>
void for_each_grid_point(const Box& box, int n_per_axis, F&& visit) {
  const int n = box.dim();
  const Vec step = box.widths() / static_cast<double>(n_per_axis - 1);
  std::vector<int> idx(n, 0);
  Vec x = box.lo;
  for (;;) {
    for (int i = 0; i < n; ++i)
      x[i] = (idx[i] == n_per_axis - 1) ? box.hi[i] : box.lo[i] + idx[i] * step[i];
    visit(static_cast<const Vec&>(x));
    int axis = n - 1;
    while (axis >= 0 && ++idx[axis] == n_per_axis) {
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
}

/// Deterministic seeded sampling helper for multistart searches.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return u01_(eng_); }

  Vec uniform_in(const Box& box) {
    Vec x(box.dim());
    for (int i = 0; i < box.dim(); ++i) x[i] = box.lo[i] + u01_(eng_) * (box.hi[i] - box.lo[i]);
    return x;
  }

  Vec gaussian(int n, double sigma = 1.0) {
    Vec g(n);
    for (int i = 0; i < n; ++i) g[i] = sigma * normal_(eng_);
    return g;
  }

 private:
  std::mt19937_64 eng_;
  std::uniform_real_distribution<double> u01_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace rcdual
