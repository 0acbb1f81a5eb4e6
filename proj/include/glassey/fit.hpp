#pragma once
// Least-squares line fits for lifespan scaling laws.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace glassey::fit {

struct FitResult {
  double slope = 0, intercept = 0, r2 = 0;
  int n_used = 0;
  std::vector<int> excluded;  // indices dropped (non-finite x or y)
};

// y ~ slope*x + intercept over the finite pairs; needs >= 3 usable points.
// Non-finite pairs are excluded and reported, not an error.
template <class DX, class DY>
FitResult fit_line(const Eigen::DenseBase<DX>& x, const Eigen::DenseBase<DY>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  FitResult f;
  double sx = 0, sy = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i), yi = y(i);
    if (std::isfinite(xi) && std::isfinite(yi)) {
      sx += xi;
      sy += yi;
      ++f.n_used;
    } else {
      f.excluded.push_back(static_cast<int>(i));
    }
  }
  if (f.n_used < 3) throw std::invalid_argument("fit_line: fewer than 3 usable points");
  const double mx = sx / f.n_used, my = sy / f.n_used;
  double sxx = 0, sxy = 0, syy = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i), yi = y(i);
    if (!(std::isfinite(xi) && std::isfinite(yi))) continue;
    sxx += (xi - mx) * (xi - mx);
    sxy += (xi - mx) * (yi - my);
    syy += (yi - my) * (yi - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_line: degenerate x values");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0 ? 1.0 : 1.0 - (syy - f.slope * sxy) / syy;
  return f;
}

}  // namespace glassey::fit
