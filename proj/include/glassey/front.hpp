#pragma once
// Wave-front functionals: the plane-slice transform u -> u*, the front
// integral U(t) with U''(t) = int_{t+R0}^{t+R} r^{-beta} u*(t,r) dr, the
// comparison kernel J(t) with its closed-form majorant c J~_p(t), and the
// two lower bounds that place U in the differential-inequality class:
//
//   U''(t) >= eps (t+R)^{-beta} * (1/2) int_{R0}^{R} f*                (all t)
//   U''(t) >= 1/2 c^{-(p-1)} (1 - 2 beta R1/R0)^p (t+R)^{-beta-1}
//               J~_p(t)^{-(p-1)} U(t)^p                          (t >= R1)
//
// where R1 = (R - R0)/2 and u*(t,r) integrates u(t, sqrt(r^2 + rho^2)) over
// the transverse plane R^{n-1}.

#include "glassey/wave.hpp"

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <vector>

namespace glassey::front {

struct FunctionalConfig {
  double beta = 0.0;
  double R0 = 0.75;
  double R = 1.0;
  double p = 2.0;
  double R1() const { return 0.5 * (R - R0); }
  double p_prime() const { return p / (p - 1.0); }
};

// surface measure of the unit sphere in R^{n-1} (2 for n=2, 2 pi for n=3)
double transverse_sphere_measure(int n);

struct StarSlice {
  double t = 0;
  Eigen::ArrayXd r, ustar;
};

// u*(r) = sigma_{n-2} int_0^{sqrt(s^2 - r^2)} u(sqrt(r^2 + rho^2)) rho^{n-2} drho,
// s = support radius: the transverse-plane integral parametrized to keep the
// integrand smooth (the endpoint in the radial variable is a square-root edge).
// Grid fields interpolate linearly; values beyond the stored range are zero.
StarSlice star_transform(const wave::RadialField& field, int n);
Eigen::ArrayXd star_at(const wave::RadialField& field, int n,
                       const Eigen::Ref<const Eigen::ArrayXd>& radii);
// analytic-profile path (no grid interpolation error)
double star_at(const std::function<double(double)>& u, double support, int n,
               double r, double step_hint = 0);

struct AfResult {
  double assumption = 0;    // int_{3R/4}^{R} f* dr
  double conservative = 0;  // (1/2) int_{R0}^{R} f* dr (enters the bound)
};
AfResult compute_A_f(const wave::DataProfile& profile, int n, double R0);

struct FunctionalTrace {
  Eigen::ArrayXd t, Upp, U;
  double A_f = 0, A_f_conservative = 0;
  double epsilon = 0, dr = 0;
  int n = 0;
  FunctionalConfig config;
  double quad_delta = 0;  // measured self-consistency error of the U'' quadrature
};

// U'' at every snapshot time by band quadrature of r^{-beta} u*, then U by
// trapezoid double integration with the kernel (t - tau) on the (possibly
// uneven) snapshot times. Errors out when fewer than 16 snapshots precede R1:
// the double integral needs the early history resolved.
FunctionalTrace compute_functional(const std::vector<wave::RadialField>& snaps,
                                   const FunctionalConfig& fcfg,
                                   const wave::WaveConfig& wcfg);

struct KernelConstants {
  double c = 0;
  int branch = 0;  // sign of (n-1)/2 - beta p' + 1
  std::function<double(double)> jbar;
};
KernelConstants kernel_constants(int n, const FunctionalConfig& fcfg);

// J(t) by nested quadrature after the desingularizing substitution
// lambda = tau + R - w^2 (the (n-1)/2 power loses its edge singularity).
double compute_J(double t, int n, const FunctionalConfig& fcfg,
                 int tau_panels = 0, int w_panels = 0);

struct BoundsReport {
  double min_linear_residual = std::numeric_limits<double>::infinity();
  double t_min_linear = std::numeric_limits<double>::quiet_NaN();
  double min_nonlinear_residual = std::numeric_limits<double>::infinity();
  double t_min_nonlinear = std::numeric_limits<double>::quiet_NaN();
  double first_linear_violation = std::numeric_limits<double>::quiet_NaN();
  double first_nonlinear_violation = std::numeric_limits<double>::quiet_NaN();
  double est_discretization_error = 0;
  bool ok(double tol) const {
    return min_linear_residual >= -tol && min_nonlinear_residual >= -tol;
  }
};
// Residuals over samples in [0, t_hi] (linear) and [max(R1, t_lo), t_hi]
// (nonlinear). "First violation" is relative to a tolerance of 0.
BoundsReport verify_lower_bounds(const FunctionalTrace& trace, double t_lo,
                                 double t_hi);

}  // namespace glassey::front
