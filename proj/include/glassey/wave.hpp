#pragma once
// Radial finite-difference solver for  u_tt = u_rr + (n-1)/r u_r + |u_r|^p
// with smooth compactly supported data  u(0) = eps f,  u_t(0) = eps g.
//
// Scheme: second-order centered differences in r on the uniform grid
// r_i = i dr with the even-symmetry ghost at the origin (the operator limit
// there is n u_rr), classical RK4 in time with dt = cfl dr, and an active
// window that tracks the light cone (support stays inside r <= t + R).
// Blow-up is declared when max_r |u_r| crosses blowup_threshold.

#include "glassey/fit.hpp"

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace glassey::wave {

enum class Shape { standard_bump, shell_bump };
enum class GMode { zero, equal_to_f };

struct DataProfile {
  Shape shape = Shape::standard_bump;
  double R = 1.0;          // support radius
  double amplitude = 1.0;
  GMode g_mode = GMode::zero;

  // standard_bump: amplitude exp(-1/(1-(r/R)^2)) inside r < R;
  // shell_bump: the same bump in xi = (r - 5R/8)/(3R/8), supported on
  // [R/4, R] (an annulus away from the origin).
  double f(double r) const;
  double g(double r) const { return g_mode == GMode::zero ? 0.0 : f(r); }
};

template <class Scalar>
struct RadialFieldT {
  Scalar dr = 0, t = 0, support_radius = 0;
  Eigen::ArrayX<Scalar> u, v;  // values on r_i = i dr
  Scalar r(Eigen::Index i) const { return static_cast<Scalar>(i) * dr; }
  Eigen::Index size() const { return u.size(); }
};
using RadialField = RadialFieldT<double>;

struct WaveConfig {
  int n = 2;
  double p = 2.0;
  double epsilon = 1.0;
  DataProfile profile;
  double dr = 1.0 / 200;
  double cfl = 0.5;                  // dt = cfl dr
  double blowup_threshold = 1e6;     // level on max_r |u_r|
  double horizon = 100.0;
  bool nonlinearity_enabled = true;  // test hook: free linear wave when false
};

// Grid sized so the light cone fits up to the horizon:
// r_max = horizon + R + 4 dr. Requires R/dr >= 50.
RadialField make_initial_data(const WaveConfig& config);

// One RK4 step (dt = cfl dr) on a copy of the field. Convenience wrapper for
// experiments and tests; lifespan runs use the in-place evolution internally.
RadialField step(const RadialField& field, const WaveConfig& config);

enum class WaveStatus { blew_up, reached_horizon };
const char* to_string(WaveStatus s);

struct LifespanEstimate {
  WaveStatus status = WaveStatus::reached_horizon;
  double T_num = std::numeric_limits<double>::quiet_NaN();
  double threshold_sensitivity = std::numeric_limits<double>::quiet_NaN();
  // relative shift of the crossing time when the threshold is raised 10x
  bool from_step_failure = false;
  // a NaN/overflow appeared before the threshold was crossed; T_num is then
  // the last time with finite gradients
  long steps = 0;
  double max_grad_final = 0;
};
LifespanEstimate detect_lifespan(const WaveConfig& config);

// Evolution with stored snapshots for the functional pipeline: every step for
// the first dense_prefix steps (the integral checks need a finely resolved
// early history), then every k-th step with k chosen so about target_count
// snapshots cover [0, t_end]. Snapshot arrays are truncated just beyond the
// active window; values past the stored range are zero by support.
struct SnapshotSeries {
  std::vector<RadialField> snaps;
  bool clean = true;  // false if the run died (NaN) before t_end
  double t_end = 0;
};
SnapshotSeries evolve_with_snapshots(const WaveConfig& config, double t_end,
                                     int dense_prefix = 64, int target_count = 224);

struct PdeSweepRow {
  double epsilon = 0;
  double T_num = std::numeric_limits<double>::quiet_NaN();
  double threshold_sensitivity = std::numeric_limits<double>::quiet_NaN();
  double product = std::numeric_limits<double>::quiet_NaN();
  WaveStatus status = WaveStatus::reached_horizon;
  bool excluded = false;
};
struct PdeSweepResult {
  std::vector<PdeSweepRow> rows;
  fit::FitResult fit;  // semilog ln T vs eps^{-(p-1)} at p = p_c(n), else
                       // log-log ln T vs ln eps
  bool semilog = false;
};
// product: critical  ln(T_num) eps^{p-1};  subcritical  T_num eps^{2(p-1)/(2-(n-1)(p-1))}.
PdeSweepResult pde_sweep(const WaveConfig& base, const std::vector<double>& epsilons,
                         int jobs = 1);

// Diagnostics used by invariance tests.
double max_abs_gradient(const RadialField& field);
double discrete_energy(const RadialField& field, int n);  // int (v^2 + u_r^2) r^{n-1} dr

}  // namespace glassey::wave
