#include "glassey/wave.hpp"

#include "glassey/odi.hpp"
#include "glassey/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace glassey::wave {

namespace {

double bump(double xi) {  // exp(-1/(1-xi^2)) inside |xi| < 1
  const double s = 1.0 - xi * xi;
  return s > 0 ? std::exp(-1.0 / s) : 0.0;
}

enum class PowKind { square, cube, small_int, real, off };

PowKind classify_power(double p, bool nonlin) {
  if (!nonlin) return PowKind::off;
  if (p == 2.0) return PowKind::square;
  if (p == 3.0) return PowKind::cube;
  if (p == std::floor(p) && p >= 2.0 && p <= 8.0) return PowKind::small_int;
  return PowKind::real;
}

void validate(const WaveConfig& c) {
  if (c.n < 2) throw std::invalid_argument("wave: n must be at least 2");
  if (!(c.p > 1.0)) throw std::invalid_argument("wave: p must exceed 1");
  if (!(c.epsilon > 0)) throw std::invalid_argument("wave: epsilon must be positive");
  if (!(c.dr > 0) || !(c.profile.R / c.dr >= 50.0 - 1e-9))
    throw std::invalid_argument("wave: dr must resolve the data (R/dr >= 50)");
  if (!(c.cfl > 0) || c.cfl > 1.0)
    throw std::invalid_argument("wave: cfl must lie in (0, 1]");
  if (!(c.horizon > 0) || !(c.blowup_threshold > 1))
    throw std::invalid_argument("wave: bad horizon or blowup_threshold");
  if (!(c.profile.amplitude > 0) || !(c.profile.R > 0))
    throw std::invalid_argument("wave: profile needs positive amplitude and R");
}

// In-place RK4 evolution with an active window just beyond the light cone.
// The window also has a trailing edge: nodes more than 5R behind the cone are
// frozen at their last state. Influence from that region moves at wave speed
// and can never re-enter the forward band where the gradient blows up, while
// numerical leakage beyond a signal's own cone dies by about an order of
// magnitude per node, so the freeze changes nothing at double precision but
// makes late-time cost scale with the front width instead of the domain.
class Evolver {
 public:
  explicit Evolver(const WaveConfig& c)
      : cfg_(c),
        dt_(c.cfl * c.dr),
        inv_dr2_(1.0 / (c.dr * c.dr)),
        inv_2dr_(0.5 / c.dr),
        kind_(classify_power(c.p, c.nonlinearity_enabled)) {
    const long N = static_cast<long>(std::llround((c.horizon + c.profile.R) / c.dr)) + 5;
    u_.setZero(N);
    v_.setZero(N);
    ua_.setZero(N);
    f0_.setZero(N);
    f1_.setZero(N);
    f2_.setZero(N);
    inv_r_.resize(N);
    inv_r_[0] = 0.0;
    for (long i = 1; i < N; ++i) inv_r_[i] = 1.0 / (i * c.dr);
    for (long i = 0; i < N; ++i) {
      const double r = i * c.dr;
      u_[i] = c.epsilon * c.profile.f(r);
      v_[i] = c.epsilon * c.profile.g(r);
    }
  }

  double t() const { return t_; }
  long steps() const { return steps_; }
  double dt() const { return dt_; }

  long window() const {
    const long nw =
        static_cast<long>(std::ceil((t_ + cfg_.profile.R) / cfg_.dr)) + 6;
    return std::min<long>(nw, u_.size() - 1);
  }

  long trailing_edge() const {
    const long lo = static_cast<long>(
        std::floor((t_ - 5.0 * cfg_.profile.R) / cfg_.dr));
    return std::max(0L, std::min(lo, window() - 16));
  }

  double max_gradient() const {
    const long m = window();
    const double* u = u_.data();
    double g = frozen_grad_;
    for (long i = std::max<long>(1, lo_); i < m; ++i)
      g = std::max(g, std::abs((u[i + 1] - u[i - 1]) * inv_2dr_));
    return g;
  }

  void step_once() {
    const long m = window();
    const long edge = trailing_edge();
    if (edge > lo_) freeze_behind(edge);
    const long lo = lo_;
    const double h = dt_, h2 = dt_ * dt_;
    double* u = u_.data();
    double* v = v_.data();
    double* ua = ua_.data();
    double* f0 = f0_.data();
    double* f1 = f1_.data();
    double* f2 = f2_.data();

    accel(u, f0, lo, m);
    for (long i = lo; i < m; ++i) ua[i] = u[i] + 0.5 * h * v[i];
    accel(ua, f1, lo, m);
    for (long i = lo; i < m; ++i) ua[i] += 0.25 * h2 * f0[i];
    accel(ua, f2, lo, m);
    for (long i = lo; i < m; ++i) ua[i] = u[i] + h * v[i] + 0.5 * h2 * f1[i];
    for (long i = lo; i < m; ++i) {
      u[i] += h * v[i] + (h2 / 6.0) * (f0[i] + f1[i] + f2[i]);
      f0[i] += 2.0 * (f1[i] + f2[i]);
    }
    accel(ua, f2, lo, m);  // last stage
    for (long i = lo; i < m; ++i) v[i] += (h / 6.0) * (f0[i] + f2[i]);
    ++steps_;
    t_ = base_t_ + steps_ * dt_;
  }

  RadialField snapshot() const {
    RadialField f;
    f.dr = cfg_.dr;
    f.t = t_;
    const long len = std::min<long>(u_.size(), window() + 2);
    f.u = u_.head(len);
    f.v = v_.head(len);
    f.support_radius = std::min(t_ + cfg_.profile.R, (len - 1) * cfg_.dr);
    return f;
  }

  void load(const RadialField& f) {
    const long len = std::min<long>(u_.size(), f.u.size());
    u_.setZero();
    v_.setZero();
    u_.head(len) = f.u.head(len);
    v_.head(len) = f.v.head(len);
    t_ = f.t;
    steps_ = 0;
    base_t_ = f.t;
    lo_ = 0;
    frozen_grad_ = 0.0;
  }

 private:
  // Retire [lo_, edge): record the largest gradient the zone will ever show
  // and pin the stage buffer so stencils at the boundary read frozen u.
  void freeze_behind(long edge) {
    for (long i = std::max<long>(1, lo_); i < edge; ++i)
      frozen_grad_ = std::max(
          frozen_grad_, std::abs((u_[i + 1] - u_[i - 1]) * inv_2dr_));
    for (long i = lo_; i < edge; ++i) ua_[i] = u_[i];
    lo_ = edge;
  }

  void accel(const double* __restrict w, double* __restrict F, long lo,
             long m) const {
    const double c0 = inv_dr2_, c1 = inv_2dr_;
    const double nm1 = cfg_.n - 1.0;
    const double* __restrict ir = inv_r_.data();
    if (lo == 0) {
      F[0] = cfg_.n * 2.0 * (w[1] - w[0]) * c0;
      lo = 1;
    }
    switch (kind_) {
      case PowKind::square:
        for (long i = lo; i < m; ++i) {
          const double up = (w[i + 1] - w[i - 1]) * c1;
          F[i] = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * c0 + nm1 * ir[i] * up + up * up;
        }
        break;
      case PowKind::cube:
        for (long i = lo; i < m; ++i) {
          const double up = (w[i + 1] - w[i - 1]) * c1;
          const double a = std::abs(up);
          F[i] = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * c0 + nm1 * ir[i] * up + a * a * a;
        }
        break;
      case PowKind::small_int: {
        const int q = static_cast<int>(cfg_.p);
        for (long i = lo; i < m; ++i) {
          const double up = (w[i + 1] - w[i - 1]) * c1;
          double a = std::abs(up), acc = 1.0;
          for (int j = 0; j < q; ++j) acc *= a;
          F[i] = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * c0 + nm1 * ir[i] * up + acc;
        }
        break;
      }
      case PowKind::real:
        for (long i = lo; i < m; ++i) {
          const double up = (w[i + 1] - w[i - 1]) * c1;
          F[i] = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * c0 + nm1 * ir[i] * up +
                 std::pow(std::abs(up), cfg_.p);
        }
        break;
      case PowKind::off:
        for (long i = lo; i < m; ++i) {
          const double up = (w[i + 1] - w[i - 1]) * c1;
          F[i] = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * c0 + nm1 * ir[i] * up;
        }
        break;
    }
  }

  WaveConfig cfg_;
  double dt_, inv_dr2_, inv_2dr_;
  PowKind kind_;
  double t_ = 0, base_t_ = 0;
  long steps_ = 0;
  long lo_ = 0;             // first non-frozen node
  double frozen_grad_ = 0;  // max gradient retired into the frozen zone
  Eigen::ArrayXd u_, v_, ua_, f0_, f1_, f2_, inv_r_;
};

double interp_crossing(double t0, double g0, double t1, double g1, double level) {
  if (g0 > 0 && g1 > g0)  // monotone in log near blow-up
    return t0 + (t1 - t0) * (std::log(level) - std::log(g0)) /
                    (std::log(g1) - std::log(g0));
  return g1 > g0 ? t0 + (t1 - t0) * (level - g0) / (g1 - g0) : t1;
}

}  // namespace

double DataProfile::f(double r) const {
  if (shape == Shape::standard_bump) return amplitude * bump(r / R);
  return amplitude * bump((r - 0.625 * R) / (0.375 * R));
}

const char* to_string(WaveStatus s) {
  return s == WaveStatus::blew_up ? "blew_up" : "reached_horizon";
}

RadialField make_initial_data(const WaveConfig& config) {
  validate(config);
  Evolver ev(config);
  return ev.snapshot();
}

RadialField step(const RadialField& field, const WaveConfig& config) {
  validate(config);
  Evolver ev(config);
  ev.load(field);
  ev.step_once();
  return ev.snapshot();
}

LifespanEstimate detect_lifespan(const WaveConfig& config) {
  validate(config);
  Evolver ev(config);
  LifespanEstimate est;
  double g_prev = ev.max_gradient(), t_prev = 0.0;
  double level = config.blowup_threshold;
  bool have_primary = false;
  double t_primary = 0.0;
  const long max_steps = static_cast<long>(std::ceil(config.horizon / ev.dt())) + 1;

  for (long k = 0; k < max_steps; ++k) {
    ev.step_once();
    const double g = ev.max_gradient();
    const double t = ev.t();
    est.steps = ev.steps();
    est.max_grad_final = g;
    if (!std::isfinite(g)) {
      if (have_primary) {
        est.status = WaveStatus::blew_up;
        est.T_num = t_primary;
        est.threshold_sensitivity = (t_prev - t_primary) / t_primary;
      } else {
        est.status = WaveStatus::blew_up;
        est.T_num = t_prev;
        est.from_step_failure = true;
      }
      return est;
    }
    while (g >= level) {
      const double tc = interp_crossing(t_prev, g_prev, t, g, level);
      if (!have_primary) {
        have_primary = true;
        t_primary = tc;
        level = 10.0 * config.blowup_threshold;
      } else {
        est.status = WaveStatus::blew_up;
        est.T_num = t_primary;
        est.threshold_sensitivity = (tc - t_primary) / t_primary;
        return est;
      }
    }
    g_prev = g;
    t_prev = t;
    if (t >= config.horizon) break;
  }
  if (have_primary) {
    est.status = WaveStatus::blew_up;
    est.T_num = t_primary;
  } else {
    est.status = WaveStatus::reached_horizon;
    est.T_num = config.horizon;
  }
  return est;
}

SnapshotSeries evolve_with_snapshots(const WaveConfig& config, double t_end,
                                     int dense_prefix, int target_count) {
  validate(config);
  if (!(t_end > 0) || t_end > config.horizon + 1e-12)
    throw std::invalid_argument("evolve_with_snapshots: t_end outside (0, horizon]");
  Evolver ev(config);
  SnapshotSeries out;
  out.t_end = t_end;
  const double dt = ev.dt();
  const long total = static_cast<long>(std::ceil(t_end / dt));
  const long stride =
      std::max<long>(1, std::llround(t_end / (std::max(16, target_count) * dt)));
  out.snaps.push_back(ev.snapshot());
  for (long k = 1; k <= total; ++k) {
    ev.step_once();
    const double g = ev.max_gradient();
    if (!std::isfinite(g)) {
      out.clean = false;
      out.t_end = ev.t() - dt;
      break;
    }
    if (k <= dense_prefix || k % stride == 0 || k == total)
      out.snaps.push_back(ev.snapshot());
  }
  return out;
}

PdeSweepResult pde_sweep(const WaveConfig& base, const std::vector<double>& epsilons,
                         int jobs) {
  if (epsilons.size() < 3)
    throw std::invalid_argument("pde_sweep: need at least 3 epsilons");
  validate(base);
  PdeSweepResult out;
  out.rows.resize(epsilons.size());
  parallel_for_indexed(static_cast<int>(epsilons.size()), jobs, [&](int i) {
    WaveConfig c = base;
    c.epsilon = epsilons[i];
    const LifespanEstimate est = detect_lifespan(c);
    PdeSweepRow row;
    row.epsilon = epsilons[i];
    row.status = est.status;
    row.excluded = est.status != WaveStatus::blew_up || est.from_step_failure;
    if (est.status == WaveStatus::blew_up) {
      row.T_num = est.T_num;
      row.threshold_sensitivity = est.threshold_sensitivity;
    }
    out.rows[i] = row;
  });

  out.semilog = std::abs(base.p - odi::critical_exponent(base.n)) <= 1e-9;
  Eigen::ArrayXd x(epsilons.size()), y(epsilons.size());
  for (size_t i = 0; i < epsilons.size(); ++i) {
    auto& row = out.rows[i];
    const double eps = row.epsilon;
    if (out.semilog) {
      x[i] = std::pow(eps, -(base.p - 1.0));
      if (!row.excluded) row.product = std::log(row.T_num) * std::pow(eps, base.p - 1.0);
    } else {
      x[i] = std::log(eps);
      const double d = 2.0 - (base.n - 1.0) * (base.p - 1.0);
      if (!row.excluded) row.product = row.T_num * std::pow(eps, 2.0 * (base.p - 1.0) / d);
    }
    y[i] = row.excluded ? std::numeric_limits<double>::quiet_NaN()
                        : std::log(row.T_num);
  }
  out.fit = fit::fit_line(x, y);
  return out;
}

double max_abs_gradient(const RadialField& field) {
  double g = 0.0;
  for (Eigen::Index i = 1; i + 1 < field.u.size(); ++i)
    g = std::max(g, std::abs((field.u[i + 1] - field.u[i - 1]) / (2.0 * field.dr)));
  return g;
}

double discrete_energy(const RadialField& field, int n) {
  // trapezoid of (v^2 + u_r^2) r^{n-1}; one-sided gradients at the ends
  const Eigen::Index N = field.u.size();
  double e = 0.0, prev = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    double ur;
    if (i == 0)
      ur = (field.u[1] - field.u[0]) / field.dr;
    else if (i + 1 == N)
      ur = (field.u[i] - field.u[i - 1]) / field.dr;
    else
      ur = (field.u[i + 1] - field.u[i - 1]) / (2.0 * field.dr);
    const double w = (field.v[i] * field.v[i] + ur * ur) *
                     std::pow(field.r(i), n - 1.0);
    if (i > 0) e += 0.5 * (w + prev) * field.dr;
    prev = w;
  }
  return e;
}

}  // namespace glassey::wave
