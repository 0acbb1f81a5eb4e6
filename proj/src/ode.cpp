#include "glassey/ode.hpp"

#include "glassey/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glassey::ode {

namespace {

using Vec2 = Eigen::Vector2d;

double pow_clamped(double H, double p) {
  const double h = std::max(H, 0.0);
  if (p == 2.0) return h * h;
  if (p == 3.0) return h * h * h;
  return std::pow(h, p);
}

void validate(const OdeSpec& spec) {
  if (spec.variant == Variant::custom) {
    if (!spec.custom_rhs) throw std::invalid_argument("custom variant needs custom_rhs");
    return;
  }
  if (!(spec.p > 1.0 + 1e-6)) throw std::invalid_argument("ode: p must exceed 1 by 1e-6");
  if (!(spec.A > 0)) throw std::invalid_argument("ode: A must be positive");
  if (spec.variant == Variant::critical && !(spec.T0 > 0))
    throw std::invalid_argument("ode: critical model needs T0 > 0");
  if (!(spec.T0 >= 0)) throw std::invalid_argument("ode: T0 must be nonnegative");
  if (spec.variant == Variant::subcritical && spec.n < 1)
    throw std::invalid_argument("ode: n must be at least 1");
}

// Derivative of y = (H, W) in the integration coordinate x.
// Physical: x = t, W = H_t. Log: x = s = ln(1+t), W = H_s,
// H_ss = H_s + e^{2s} rhs(e^s - 1, H).
struct Deriv {
  bool log_mode;
  const std::function<double(double, double)>& rhs;

  Vec2 operator()(double x, const Vec2& y) const {
    if (!log_mode) return Vec2(y[1], rhs(x, y[0]));
    const double w = rhs(std::expm1(x), y[0]);
    double e2sw;
    if (x < 350.0) {
      e2sw = w * std::exp(2.0 * x);
    } else if (w != 0.0 && std::isfinite(w)) {
      e2sw = std::copysign(std::exp(2.0 * x + std::log(std::abs(w))), w);
    } else {
      e2sw = w;
    }
    return Vec2(y[1], y[1] + e2sw);
  }
};

double map_t(bool log_mode, double x) { return log_mode ? std::expm1(x) : x; }

double ln_of_t(bool log_mode, double x) {
  // ln(t): in log mode t = e^x - 1, so ln t = x + ln(1 - e^{-x}).
  if (!log_mode) return std::log(x);
  return x + std::log1p(-std::exp(-x));
}

// Cubic Hermite root for H(u) = level on x in [x0, x0+h], u in [0,1].
double hermite_crossing(double h, double H0, double dH0, double H1, double dH1,
                        double level) {
  auto value = [&](double u) {
    const double u2 = u * u, um = 1.0 - u;
    return (1.0 + 2.0 * u) * um * um * H0 + u * um * um * h * dH0 +
           u2 * (3.0 - 2.0 * u) * H1 + u2 * (u - 1.0) * h * dH1;
  };
  double lo = 0.0, hi = 1.0;
  if (!(value(0.0) < level && value(1.0) >= level)) {
    // fall back to log-linear interpolation between the endpoints
    if (H0 > 0 && H1 > H0)
      return h * (std::log(level) - std::log(H0)) / (std::log(H1) - std::log(H0));
    return h;
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) < level ? lo : hi) = mid;
  }
  return h * 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::blew_up: return "blew_up";
    case Status::reached_horizon: return "reached_horizon";
    default: return "step_failure";
  }
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::critical: return "critical";
    case Variant::subcritical: return "subcritical";
    default: return "custom";
  }
}

double forcing_bound(const OdeSpec& spec, double t) {
  return spec.variant == Variant::subcritical ? spec.A : spec.A / (t + 1.0);
}

double kernel_bound(const OdeSpec& spec, double t) {
  if (t < spec.T0 || t <= 0.0) return 0.0;
  if (spec.variant == Variant::subcritical)
    return std::pow(t + 1.0, -0.5 * (spec.n + 3.0) * spec.p + 0.5 * (spec.n + 1.0));
  const double lg = std::log1p(t);
  return std::pow(t + 1.0, -(spec.p + 1.0)) * std::pow(lg, -(spec.p - 1.0));
}

std::function<double(double, double)> make_rhs(const OdeSpec& spec) {
  validate(spec);
  if (spec.variant == Variant::custom) return spec.custom_rhs;
  const OdeSpec s = spec;  // capture by value: the argument may be a temporary
  return [s](double t, double H) {
    const double k = kernel_bound(s, t);
    return forcing_bound(s, t) + (k == 0.0 ? 0.0 : k * pow_clamped(H, s.p));
  };
}

BlowupResult integrate_blowup(const OdeSpec& spec, const IntegratorControl& ctrl) {
  validate(spec);
  if (!(ctrl.horizon > 0) || !(ctrl.blowup_threshold > 1.0))
    throw std::invalid_argument("ode: bad horizon or blowup_threshold");
  const auto rhs = make_rhs(spec);
  const bool log_mode =
      ctrl.log_time < 0 ? spec.variant == Variant::critical : ctrl.log_time > 0;
  const Deriv f{log_mode, rhs};
  const double x_end = log_mode ? std::log1p(ctrl.horizon) : ctrl.horizon;

  BlowupResult res;
  Vec2 y(spec.H0, spec.Hp0);  // at t = 0, H_s = H_t, so both modes seed alike
  double x = 0.0, h = 1e-4;

  // trace bookkeeping: samples uniform in ln(1+t), at most trace_samples total
  const int cap = std::max(16, ctrl.trace_samples);
  const double dsl = std::log1p(ctrl.horizon) / (cap - 2);
  double next_trace = 0.0;
  auto push_sample = [&](double xs, const Vec2& ys) {
    const double t = map_t(log_mode, xs);
    const double Hp = log_mode ? ys[1] / (t + 1.0) : ys[1];
    res.trace.push_back({t, ys[0], Hp});
  };
  push_sample(x, y);
  next_trace = dsl;

  // Dormand-Prince 5(4) tableau
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
  double facold = 1e-4;
  Vec2 k1 = f(x, y);
  bool have_primary = false, last_rejected = false;
  double current_level = ctrl.blowup_threshold;
  double x_primary = 0.0;

  auto finish_projected = [&](double F) -> bool {
    // power-law projection H ~ C (x* - x)^{-m}; valid only while diverging
    const double H = y[0], W = y[1];
    const double denom = F * H - W * W;
    if (!(H >= 1e12 && W > 0.0 && denom > 0.0)) return false;
    const double m = W * W / denom;
    const double x_star = x + m * H / W;
    auto cross = [&](double level) {
      return x_star - (x_star - x) * std::pow(H / level, 1.0 / m);
    };
    const double xc1 = have_primary ? x_primary : cross(ctrl.blowup_threshold);
    const double xc2 = cross(10.0 * ctrl.blowup_threshold);
    res.status = Status::blew_up;
    res.projected = true;
    res.t_blow = map_t(log_mode, xc1);
    res.ln_t_blow = ln_of_t(log_mode, xc1);
    res.threshold_delta = map_t(log_mode, xc2) - res.t_blow;
    return true;
  };

  auto record_end = [&] {
    res.t_end = map_t(log_mode, x);
    res.H_end = y[0];
    res.Hp_end = log_mode ? y[1] / (res.t_end + 1.0) : y[1];
    res.last_step = h;
    if (res.trace.empty() || res.trace.back().t != res.t_end) push_sample(x, y);
  };

  while (true) {
    if (res.steps >= ctrl.max_steps) {
      res.status = Status::step_failure;
      break;
    }
    const double h_min = 1e-15 * (std::abs(x) + 1.0);
    if (h < h_min) {
      if (!finish_projected(f(x, y)[1])) res.status = Status::step_failure;
      break;
    }
    bool clipped = false;
    if (x + h >= x_end) {
      h = x_end - x;
      clipped = true;
    }

    const Vec2 k2 = f(x + c2 * h, y + h * (a21 * k1));
    const Vec2 k3 = f(x + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Vec2 k4 = f(x + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec2 k5 = f(x + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec2 k6 =
        f(x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec2 y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec2 k7 = f(x + h, y5);
    const Vec2 ev = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double sc = ctrl.atol + ctrl.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (ev[i] / sc) * (ev[i] / sc);
    }
    err = std::sqrt(0.5 * err);

    if (!std::isfinite(err)) {  // overflow in a stage: resolve by shrinking
      h *= 0.25;
      last_rejected = true;
      continue;
    }

    const double fac11 = std::pow(err, expo1);
    if (err <= 1.0) {
      ++res.steps;
      const double x_new = x + h;
      if (x_new == x) {  // step below one ulp: cannot advance further
        if (!finish_projected(k1[1])) res.status = Status::step_failure;
        break;
      }
      if (y5[0] >= current_level) {
        const double dx = hermite_crossing(h, y[0], k1[0], y5[0], k7[0], current_level);
        const double xc = x + dx;
        if (!have_primary) {
          have_primary = true;
          x_primary = xc;
          res.t_blow = map_t(log_mode, xc);
          res.ln_t_blow = ln_of_t(log_mode, xc);
          current_level = 10.0 * ctrl.blowup_threshold;
          if (y5[0] >= current_level) {  // both levels inside one step
            const double dx2 =
                hermite_crossing(h, y[0], k1[0], y5[0], k7[0], current_level);
            res.status = Status::blew_up;
            res.threshold_delta = map_t(log_mode, x + dx2) - res.t_blow;
            x = x_new;
            y = y5;
            record_end();
            return res;
          }
        } else {
          res.status = Status::blew_up;
          res.threshold_delta = map_t(log_mode, xc) - res.t_blow;
          x = x_new;
          y = y5;
          record_end();
          return res;
        }
      }
      x = x_new;
      y = y5;
      k1 = k7;
      const double lt = std::log1p(map_t(log_mode, x));
      if (lt >= next_trace && static_cast<int>(res.trace.size()) < cap - 1) {
        push_sample(x, y);
        next_trace = dsl * (std::floor(lt / dsl) + 1.0);
      }
      if (clipped || x >= x_end) {
        if (have_primary) {
          // horizon hit while chasing the 10x level: report what we have
          res.status = Status::blew_up;
          res.threshold_delta = std::numeric_limits<double>::quiet_NaN();
        } else {
          res.status = Status::reached_horizon;
        }
        break;
      }
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(0.1, std::min(5.0, fac / safe));
      double h_new = h / fac;
      if (last_rejected) h_new = std::min(h_new, h);
      facold = std::max(err, 1e-4);
      h = h_new;
      last_rejected = false;
    } else {
      h = h / std::min(5.0, fac11 / safe);
      last_rejected = true;
    }
  }

  record_end();
  if (have_primary && res.status == Status::step_failure) {
    // primary level was crossed; a later stall only loses the delta
    res.status = Status::blew_up;
  }
  return res;
}

MembershipReport membership_residuals(const BlowupResult& result, const OdeSpec& spec) {
  const auto rhs = make_rhs(spec);
  MembershipReport rep;
  // Residuals are normalized by max(1, |H''|, |bound|): late in a blow-up
  // the terms reach ~1e50 and an absolute difference is pure cancellation
  // noise, while the scaled residual still certifies dominance.
  for (const auto& s : result.trace) {
    if (!std::isfinite(s.H)) continue;
    const double second = rhs(s.t, s.H);
    const double fb = forcing_bound(spec, s.t);
    const double rf = (second - fb) / std::max({1.0, std::abs(second), std::abs(fb)});
    if (rf < rep.min_forcing_residual) {
      rep.min_forcing_residual = rf;
      rep.t_min_forcing = s.t;
    }
    if (s.t >= spec.T0) {
      const double kb = kernel_bound(spec, s.t) * pow_clamped(s.H, spec.p);
      const double rn = (second - kb) / std::max({1.0, std::abs(second), std::abs(kb)});
      if (rn < rep.min_nonlinear_residual) {
        rep.min_nonlinear_residual = rn;
        rep.t_min_nonlinear = s.t;
      }
    }
  }
  return rep;
}

SweepResult sweep_ode(const OdeSpec& base, const std::vector<double>& As,
                      const IntegratorControl& ctrl, int jobs) {
  if (As.size() < 3)
    throw std::invalid_argument("sweep_ode: need at least 3 amplitudes");
  if (base.variant == Variant::custom)
    throw std::invalid_argument("sweep_ode: sweeps are for the model variants");
  SweepResult out;
  out.rows.resize(As.size());
  parallel_for_indexed(static_cast<int>(As.size()), jobs, [&](int i) {
    OdeSpec spec = base;
    spec.A = As[i];
    const BlowupResult r = integrate_blowup(spec, ctrl);
    SweepRow row;
    row.A = As[i];
    row.status = r.status;
    row.excluded = r.status != Status::blew_up;
    if (!row.excluded) {
      row.t_blow = r.t_blow;
      row.ln_t_blow = r.ln_t_blow;
      if (base.variant == Variant::critical) {
        row.product = r.ln_t_blow * std::pow(As[i], base.p - 1.0);
      } else {
        const double d = 2.0 - (base.n - 1.0) * (base.p - 1.0);
        row.product = (r.t_blow + 1.0) * std::pow(As[i], 2.0 * (base.p - 1.0) / d);
      }
    }
    out.rows[i] = row;
  });

  if (base.variant == Variant::subcritical) {
    Eigen::ArrayXd lx(As.size()), ly(As.size());
    for (size_t i = 0; i < As.size(); ++i) {
      lx[i] = std::log(As[i]);
      ly[i] = out.rows[i].excluded ? std::numeric_limits<double>::quiet_NaN()
                                   : out.rows[i].ln_t_blow;
    }
    int usable = 0;
    for (size_t i = 0; i < As.size(); ++i)
      if (std::isfinite(ly[i])) ++usable;
    if (usable >= 3) out.loglog_fit = fit::fit_line(lx, ly);
  } else {
    // trend of the sharp products as A decreases
    std::vector<std::pair<double, double>> pa;  // (A, product)
    for (const auto& row : out.rows)
      if (!row.excluded) pa.emplace_back(row.A, row.product);
    if (pa.size() >= 2) {
      std::sort(pa.begin(), pa.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
      bool nondec = true;
      for (size_t i = 1; i < pa.size(); ++i)
        if (pa[i].second < pa[i - 1].second) nondec = false;
      out.products_nondecreasing = nondec;
    }
  }
  return out;
}

}  // namespace glassey::ode
