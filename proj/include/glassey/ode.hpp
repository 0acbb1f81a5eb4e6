#pragma once
// Blow-up detecting integration of the second-order equality models
//
//   critical     H'' = A/(t+1) + 1{t>=T0} (t+1)^{-(p+1)} ln^{-(p-1)}(t+1) H^p
//   subcritical  H'' = A + 1{t>=T0} (t+1)^{-(n+3)p/2 + (n+1)/2} H^p
//   custom       H'' = rhs(t, H)
//
// with H(0) = H0, H'(0) = Hp0. The integrator is an embedded
// Dormand-Prince 5(4) pair with PI step control. Critical runs integrate in
// the logarithmic time s = ln(1+t) by default (lifespans are exp-large);
// the transformed system is H_ss = H_s + e^{2s} rhs(e^s - 1, H).

#include "glassey/fit.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace glassey::ode {

enum class Variant { critical, subcritical, custom };
enum class Status { blew_up, reached_horizon, step_failure };

const char* to_string(Status s);
const char* to_string(Variant v);

struct OdeSpec {
  Variant variant = Variant::critical;
  int n = 3;
  double p = 2.0, A = 1.0, T0 = 1.0;
  double H0 = 0.0, Hp0 = 0.0;
  // H'' = custom_rhs(t, H), used when variant == custom.
  std::function<double(double, double)> custom_rhs;
};

struct IntegratorControl {
  double rtol = 1e-10, atol = 1e-12;
  double horizon = 1e8;            // stop time (physical)
  double blowup_threshold = 1e30;  // H level defining t_blow
  int log_time = -1;               // -1 auto (log for critical), 0 physical, 1 log
  long max_steps = 4'000'000;
  int trace_samples = 4096;        // cap; spaced uniformly in ln(1+t)
};

struct TraceSample {
  double t, H, Hp;  // Hp = dH/dt (physical time)
};

struct BlowupResult {
  Status status = Status::step_failure;
  double t_blow = std::numeric_limits<double>::quiet_NaN();
  double ln_t_blow = std::numeric_limits<double>::quiet_NaN();
  double t_end = 0, H_end = 0, Hp_end = 0;  // last accepted state
  long steps = 0;
  double last_step = 0;            // final step size in integration coordinate
  double threshold_delta = std::numeric_limits<double>::quiet_NaN();
  // t at 10x threshold minus t_blow: how much the answer depends on the level
  bool projected = false;
  // true when the step size hit machine resolution while the solution was
  // manifestly diverging (H large, H' > 0, H''H > H'^2) and the crossing was
  // obtained from the local power-law model H ~ C (t* - t)^{-m},
  // m = H'^2/(H''H - H'^2): the step controller cannot represent steps that
  // resolve H near 1e30 when t* - t falls below one ulp of t.
  std::vector<TraceSample> trace;
};

// The model right-hand side H'' = rhs(t, H) for any variant.
std::function<double(double, double)> make_rhs(const OdeSpec& spec);

// Lemma-form lower-bound pieces used by membership checks. For
// variant == custom the critical-family forms are checked, using the
// OdeSpec's A, p, T0 fields (a custom rhs claiming membership must dominate
// them).
double forcing_bound(const OdeSpec& spec, double t);
double kernel_bound(const OdeSpec& spec, double t);  // 0 for t < T0

BlowupResult integrate_blowup(const OdeSpec& spec, const IntegratorControl& ctrl = {});

// Minima over the stored trace of H'' - forcing(t), and for t >= T0 of
// H'' - kernel(t) max(H,0)^p, each normalized by max(1, |H''|, |bound|) so
// that the late-time 1e50-scale values cannot drown the check in
// cancellation noise. Nonnegative minima certify that the run is an
// admissible member of the differential-inequality class.
struct MembershipReport {
  double min_forcing_residual = std::numeric_limits<double>::infinity();
  double t_min_forcing = std::numeric_limits<double>::quiet_NaN();
  double min_nonlinear_residual = std::numeric_limits<double>::infinity();
  double t_min_nonlinear = std::numeric_limits<double>::quiet_NaN();
  bool ok(double tol = 0.0) const {
    return min_forcing_residual >= -tol && min_nonlinear_residual >= -tol;
  }
};
MembershipReport membership_residuals(const BlowupResult& result, const OdeSpec& spec);

// Lifespan scaling sweep over amplitudes A (at least 3).
// product: critical  ln(t_blow) A^{p-1}  (sharp-constant normalization);
//          subcritical  (t_blow + 1) A^{2(p-1)/(2-(n-1)(p-1))}.
struct SweepRow {
  double A = 0;
  double t_blow = std::numeric_limits<double>::quiet_NaN();
  double ln_t_blow = std::numeric_limits<double>::quiet_NaN();
  double product = std::numeric_limits<double>::quiet_NaN();
  Status status = Status::step_failure;
  bool excluded = false;  // not blew_up: dropped from fits/trends
};
struct SweepResult {
  std::vector<SweepRow> rows;                  // same order as the input As
  std::optional<fit::FitResult> loglog_fit;    // subcritical: ln t_blow vs ln A
  std::optional<bool> products_nondecreasing;  // critical: trend as A decreases
};
SweepResult sweep_ode(const OdeSpec& base, const std::vector<double>& As,
                      const IntegratorControl& ctrl = {}, int jobs = 1);

}  // namespace glassey::ode
