#include "glassey/front.hpp"

#include "glassey/odi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glassey::front {
namespace {

double powc(double h, double p) {
  if (p == 2.0) return h * h;
  if (p == 3.0) return h * h * h;
  return std::pow(std::max(h, 0.0), p);
}

// composite Simpson over [a, b]; m is forced even and >= 2
template <typename F>
double simpson(F&& f, double a, double b, int m) {
  if (b <= a) return 0.0;
  m = std::max(2, m + (m & 1));
  const double h = (b - a) / m;
  double acc = f(a) + f(b);
  for (int i = 1; i < m; ++i) acc += (i & 1 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

double interp(const wave::RadialField& field, double x) {
  const auto size = field.u.size();
  if (size == 0 || x < 0) return 0.0;
  const double pos = x / field.dr;
  auto i = static_cast<Eigen::Index>(pos);
  if (i >= size - 1) {
    // a radius within rounding of the last node still reads that node
    return pos <= size - 1 + 1e-9 ? field.u[size - 1] : 0.0;
  }
  const double w = pos - static_cast<double>(i);
  return field.u[i] * (1.0 - w) + field.u[i + 1] * w;
}

double transverse_weight(double rho, int n) {
  return n == 2 ? 1.0 : n == 3 ? rho : std::pow(rho, n - 2);
}

double star_grid(const wave::RadialField& field, int n, double r,
                 int refine) {
  const double s = field.support_radius;
  const double rho2 = s * s - r * r;
  if (rho2 <= 0) return 0.0;
  const double rho_max = std::sqrt(rho2);
  const int m = std::max(8, static_cast<int>(std::ceil(
                                rho_max / (0.5 * field.dr))) *
                                refine);
  const double sigma = transverse_sphere_measure(n);
  return sigma * simpson(
                     [&](double rho) {
                       return interp(field, std::hypot(r, rho)) *
                              transverse_weight(rho, n);
                     },
                     0.0, rho_max, m);
}

// U''(t_i) = int_{t+R0}^{t+R} r^{-beta} u*(t, r) dr
double upp_at(const wave::RadialField& field, int n,
              const FunctionalConfig& fcfg, int band_panels,
              int inner_refine) {
  const double t = field.t;
  return simpson(
      [&](double r) {
        return std::pow(r, -fcfg.beta) * star_grid(field, n, r, inner_refine);
      },
      t + fcfg.R0, t + fcfg.R, band_panels);
}

void validate(const FunctionalConfig& fcfg) {
  if (!(fcfg.R > 0) || !(fcfg.R0 > 0) || !(fcfg.R0 < fcfg.R))
    throw std::invalid_argument("front: need 0 < R0 < R");
  if (!(fcfg.beta >= 0)) throw std::invalid_argument("front: beta must be >= 0");
  if (!(fcfg.p > 1)) throw std::invalid_argument("front: p must exceed 1");
}

}  // namespace

double transverse_sphere_measure(int n) {
  if (n < 2) throw std::invalid_argument("front: transverse plane needs n >= 2");
  const double m = n - 1;
  return 2.0 * std::pow(M_PI, 0.5 * m) / std::exp(std::lgamma(0.5 * m));
}

StarSlice star_transform(const wave::RadialField& field, int n) {
  StarSlice slice;
  slice.t = field.t;
  const auto count = std::min<Eigen::Index>(
      field.u.size(),
      static_cast<Eigen::Index>(field.support_radius / field.dr) + 2);
  slice.r = Eigen::ArrayXd::LinSpaced(count, 0.0, (count - 1) * field.dr);
  slice.ustar.resize(count);
  for (Eigen::Index i = 0; i < count; ++i)
    slice.ustar[i] = star_grid(field, n, slice.r[i], 1);
  return slice;
}

Eigen::ArrayXd star_at(const wave::RadialField& field, int n,
                       const Eigen::Ref<const Eigen::ArrayXd>& radii) {
  Eigen::ArrayXd out(radii.size());
  for (Eigen::Index i = 0; i < radii.size(); ++i)
    out[i] = star_grid(field, n, radii[i], 1);
  return out;
}

double star_at(const std::function<double(double)>& u, double support, int n,
               double r, double step_hint) {
  if (n < 2) throw std::invalid_argument("front: transverse plane needs n >= 2");
  const double rho2 = support * support - r * r;
  if (rho2 <= 0) return 0.0;
  const double rho_max = std::sqrt(rho2);
  if (step_hint <= 0) step_hint = support / 2048.0;
  const int m = std::max(64, static_cast<int>(std::ceil(rho_max / step_hint)));
  const double sigma = transverse_sphere_measure(n);
  return sigma * simpson(
                     [&](double rho) {
                       return u(std::hypot(r, rho)) * transverse_weight(rho, n);
                     },
                     0.0, rho_max, m);
}

AfResult compute_A_f(const wave::DataProfile& profile, int n, double R0) {
  if (!(R0 > 0) || !(R0 < profile.R))
    throw std::invalid_argument("front: need 0 < R0 < R");
  const double hint = profile.R / 2048.0;
  auto fstar = [&](double r) {
    return star_at([&](double x) { return profile.f(x); }, profile.R, n, r,
                   hint);
  };
  AfResult out;
  out.assumption = simpson(fstar, 0.75 * profile.R, profile.R, 256);
  out.conservative = 0.5 * simpson(fstar, R0, profile.R, 256);
  return out;
}

FunctionalTrace compute_functional(const std::vector<wave::RadialField>& snaps,
                                   const FunctionalConfig& fcfg,
                                   const wave::WaveConfig& wcfg) {
  validate(fcfg);
  if (std::abs(fcfg.R - wcfg.profile.R) > 1e-12 * std::max(1.0, fcfg.R))
    throw std::invalid_argument("front: band radius R must match the data support");
  if (std::abs(fcfg.p - wcfg.p) > 1e-12)
    throw std::invalid_argument("front: bound exponent p must match the equation");
  const auto count = static_cast<Eigen::Index>(snaps.size());
  if (count < 3) throw std::invalid_argument("front: need at least 3 snapshots");
  if (std::abs(snaps.front().t) > 1e-9)
    throw std::invalid_argument("front: snapshots must start at t = 0");
  Eigen::Index early = 0;
  for (const auto& s : snaps) early += s.t < fcfg.R1() ? 1 : 0;
  if (early < 16)
    throw std::invalid_argument(
        "front: need at least 16 snapshots before R1 to resolve the early history");
  for (std::size_t i = 1; i < snaps.size(); ++i)
    if (!(snaps[i].t > snaps[i - 1].t))
      throw std::invalid_argument("front: snapshot times must increase");

  FunctionalTrace trace;
  trace.config = fcfg;
  trace.n = wcfg.n;
  trace.epsilon = wcfg.epsilon;
  trace.dr = wcfg.dr;
  trace.t.resize(count);
  trace.Upp.resize(count);
  trace.U.resize(count);

  constexpr int kBandPanels = 96;
  for (Eigen::Index i = 0; i < count; ++i) {
    trace.t[i] = snaps[i].t;
    trace.Upp[i] = upp_at(snaps[i], wcfg.n, fcfg, kBandPanels, 1);
  }

  // self-consistency of the quadrature: re-evaluate a few samples refined
  for (Eigen::Index i : {count / 4, count / 2, 3 * count / 4}) {
    if (i <= 0 || i >= count) continue;
    const double fine = upp_at(snaps[i], wcfg.n, fcfg, 2 * kBandPanels, 2);
    trace.quad_delta = std::max(trace.quad_delta, std::abs(fine - trace.Upp[i]));
  }

  // U(t_i) = int_0^{t_i} (t_i - tau) U''(tau) dtau, trapezoid on the
  // snapshot times (U and U' vanish at t = 0)
  trace.U[0] = 0.0;
  for (Eigen::Index i = 1; i < count; ++i) {
    const double ti = trace.t[i];
    double acc = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double h = trace.t[j + 1] - trace.t[j];
      acc += 0.5 * h *
             ((ti - trace.t[j]) * trace.Upp[j] +
              (ti - trace.t[j + 1]) * trace.Upp[j + 1]);
    }
    trace.U[i] = acc;
  }

  const AfResult af = compute_A_f(wcfg.profile, wcfg.n, fcfg.R0);
  trace.A_f = af.assumption;
  trace.A_f_conservative = af.conservative;
  return trace;
}

KernelConstants kernel_constants(int n, const FunctionalConfig& fcfg) {
  validate(fcfg);
  if (n < 2) throw std::invalid_argument("front: transverse plane needs n >= 2");
  const double R = fcfg.R, R0 = fcfg.R0, R1 = fcfg.R1();
  const double x = 0.5 * (n - 1) - fcfg.beta * fcfg.p_prime();
  const double pref = odi::unit_ball_volume(n - 1) *
                      std::pow(R1, 0.5 * (n + 3)) * std::pow(2.0, n + 1) *
                      std::pow(R0 / R, -fcfg.beta * fcfg.p_prime());
  KernelConstants out;
  if (std::abs(x + 1.0) <= 1e-12) {
    out.branch = 0;
    out.c = pref;
    out.jbar = [R](double t) { return (t + R) * std::log((t + R) / R); };
  } else if (x < -1.0) {
    out.branch = -1;
    out.c = pref * std::pow(R, x + 1.0) / (-(x + 1.0));
    out.jbar = [R](double t) { return t + R; };
  } else {
    out.branch = 1;
    out.c = pref / (x + 1.0);
    out.jbar = [R, x](double t) { return std::pow(t + R, x + 2.0); };
  }
  return out;
}

double compute_J(double t, int n, const FunctionalConfig& fcfg, int tau_panels,
                 int w_panels) {
  validate(fcfg);
  if (n < 2) throw std::invalid_argument("front: transverse plane needs n >= 2");
  if (!(t >= 0)) throw std::invalid_argument("front: J needs t >= 0");
  if (t == 0) return 0.0;
  if (tau_panels <= 0) tau_panels = 512;
  if (w_panels <= 0) w_panels = 128;
  const double R = fcfg.R, R0 = fcfg.R0;
  const double bpp = fcfg.beta * fcfg.p_prime();
  const double w_max = std::sqrt(R - R0);
  // lambda = tau + R - w^2 removes the half-power edge at lambda = tau + R:
  // ((tau+R)^2 - lambda^2)^{(n-1)/2} = w^{n-1} (tau + R + lambda)^{(n-1)/2}
  auto inner = [&](double tau) {
    return simpson(
        [&](double w) {
          const double lam = tau + R - w * w;
          return 2.0 * ((R - R0) - w * w) * std::pow(lam, -bpp) *
                 std::pow(w, n) * std::pow(tau + R + lam, 0.5 * (n - 1));
        },
        0.0, w_max, w_panels);
  };
  return odi::unit_ball_volume(n - 1) *
         simpson([&](double tau) { return (t - tau) * inner(tau); }, 0.0, t,
                 tau_panels);
}

BoundsReport verify_lower_bounds(const FunctionalTrace& trace, double t_lo,
                                 double t_hi) {
  const FunctionalConfig& fcfg = trace.config;
  const KernelConstants kc = kernel_constants(trace.n, fcfg);
  const double p = fcfg.p;
  const double fac = 1.0 - 2.0 * fcfg.beta * fcfg.R1() / fcfg.R0;
  if (!(fac > 0))
    throw std::invalid_argument(
        "front: nonlinear bound needs 1 - 2 beta R1 / R0 > 0");
  const double coef_nl = 0.5 * std::pow(kc.c, -(p - 1.0)) * std::pow(fac, p);
  const double nl_from = std::max(t_lo, fcfg.R1());

  BoundsReport report;
  double max_upp = 0.0;
  for (Eigen::Index i = 0; i < trace.t.size(); ++i) {
    const double t = trace.t[i];
    if (t > t_hi) break;
    max_upp = std::max(max_upp, std::abs(trace.Upp[i]));
    if (t >= t_lo) {
      const double lin = trace.Upp[i] - trace.epsilon * trace.A_f_conservative *
                                            std::pow(t + fcfg.R, -fcfg.beta);
      if (lin < report.min_linear_residual) {
        report.min_linear_residual = lin;
        report.t_min_linear = t;
      }
      if (lin < 0 && std::isnan(report.first_linear_violation))
        report.first_linear_violation = t;
    }
    if (t < nl_from || t <= 0) continue;
    const double nl =
        trace.Upp[i] - coef_nl * std::pow(t + fcfg.R, -fcfg.beta - 1.0) *
                           std::pow(kc.jbar(t), -(p - 1.0)) *
                           powc(trace.U[i], p);
    if (nl < report.min_nonlinear_residual) {
      report.min_nonlinear_residual = nl;
      report.t_min_nonlinear = t;
    }
    if (nl < 0 && std::isnan(report.first_nonlinear_violation))
      report.first_nonlinear_violation = t;
  }
  report.est_discretization_error =
      trace.quad_delta + trace.dr * trace.dr * max_upp;
  return report;
}

}  // namespace glassey::front
