#pragma once

#include <functional>

#include "rcdual/grid.hpp"

namespace rcdual {

/// Coordinate descent with geometrically shrinking steps.
///
/// Starting from x0 (which must satisfy `feasible`), sweeps the coordinates
/// trying +/- step moves clamped to the box, accepting only moves that stay
/// feasible and strictly decrease `objective`.  When a full sweep makes no
/// progress the steps are halved; after `halvings` halvings the search stops.
/// The result never has a larger objective than x0 and is always feasible.
///
/// Deterministic: fixed sweep order, strict-decrease acceptance.
struct DescentOptions {
  int halvings = 60;
  int max_sweeps_per_level = 200;
};

inline Vec coordinate_descent(const std::function<double(const Vec&)>& objective,
                              const std::function<bool(const Vec&)>& feasible, const Box& box,
                              Vec x0, const DescentOptions& opt = {}) {
  const int n = box.dim();
  Vec x = std::move(x0);
  double fx = objective(x);
  Vec step = box.widths() / 2.0;

  for (int level = 0; level < opt.halvings; ++level) {
    bool any_progress_at_level = false;
    for (int sweep = 0; sweep < opt.max_sweeps_per_level; ++sweep) {
      bool improved = false;
      for (int i = 0; i < n; ++i) {
        for (double sign : {+1.0, -1.0}) {
          Vec trial = x;
          double t = x[i] + sign * step[i];
          if (t < box.lo[i]) t = box.lo[i];
          if (t > box.hi[i]) t = box.hi[i];
          if (t == x[i]) continue;
          trial[i] = t;
          if (!feasible(trial)) continue;
          double ft = objective(trial);
          if (ft < fx) {
            x = std::move(trial);
            fx = ft;
            improved = true;
          }
        }
      }
      if (!improved) break;
      any_progress_at_level = true;
    }
    step /= 2.0;
    (void)any_progress_at_level;
  }
  return x;
}

}  // namespace rcdual
