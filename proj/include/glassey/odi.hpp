#pragma once
// Iteration ladders and sharp constants for Glassey-type lifespan estimates.
//
// Two regimes for the derivative nonlinearity |∇u|^p on R^n:
//   critical     p = p_c(n) = 1 + 2/(n-1): slow (iterated-log) amplification,
//                lifespan ln(T+1) ~ (C~_crit A)^{-(p-1)}
//   subcritical  1 < p < p_c(n): power-law amplification,
//                lifespan T+1 ~ (C~_sub A)^{-2(p-1)/(2-(n-1)(p-1))}
// The ladders iterate H(t) >= C_k (t+1) ln^{q_k}(t+1)  (critical)
// resp. H(t) >= C_k (t+1)^{q_k}  (subcritical) for t >= T_k.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace glassey::odi {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Volume of the unit ball in R^m (m >= 0): pi^{m/2} / Gamma(m/2 + 1).
inline double unit_ball_volume(int m) {
  if (m < 0) throw std::invalid_argument("unit_ball_volume: m < 0");
  return std::pow(M_PI, 0.5 * m) / std::exp(std::lgamma(0.5 * m + 1.0));
}

// Critical power p_c(n) = 1 + 2/(n-1); infinite for n = 1.
inline double critical_exponent(int n) {
  if (n < 1) throw std::invalid_argument("critical_exponent: n < 1");
  if (n == 1) return std::numeric_limits<double>::infinity();
  return 1.0 + 2.0 / (n - 1);
}

inline void require_p_supercritical_of_one(double p) {
  if (!(p > 1.0 + 1e-6))
    throw std::invalid_argument("p must exceed 1 by more than 1e-6");
}

// (p-1)^3 / max{p, 2(p-1)}: the contraction factor of the critical ladder.
inline double critical_m_factor(double p) {
  return std::pow(p - 1.0, 3) / std::max(p, 2.0 * (p - 1.0));
}

// -------------------------------------------------------------------------
// Sharp constants
// -------------------------------------------------------------------------

struct SharpConstants {
  int n = 0;
  double p = 0;
  double p_prime = kNaN;       // p / (p-1)
  double c_tilde_crit = kNaN;  // critical sharp constant (depends on p only)
  double remark_crit = kNaN;   // c_tilde_crit^{-(p-1)}
  bool subcritical_valid = false;  // p < p_c(n)
  double b0 = kNaN;            // 1/(p-1) - (n-1)/2 + max{0,(n+3)/2 - 1/(p-1)}/p
  double b1 = kNaN;            // 1/(p-1) - (n-1)/2 + max{0,(n+1)/2 - 1/(p-1)}/p
  double c_tilde_sub = kNaN;   // subcritical sharp constant
  double remark_sub = kNaN;    // c_tilde_sub^{-2(p-1)/(2-(n-1)(p-1))}
};

inline SharpConstants sharp_constants(int n, double p) {
  require_p_supercritical_of_one(p);
  if (n < 1) throw std::invalid_argument("sharp_constants: n < 1");
  SharpConstants sc;
  sc.n = n;
  sc.p = p;
  sc.p_prime = p / (p - 1.0);
  const double m = critical_m_factor(p);
  sc.c_tilde_crit = 0.5 * std::pow(m, 1.0 / (p - 1.0)) *
                    std::pow(p, -(2.0 * p - 1.0) / ((p - 1.0) * (p - 1.0)));
  sc.remark_crit = std::pow(sc.c_tilde_crit, -(p - 1.0));
  sc.subcritical_valid = p < critical_exponent(n) - 1e-6;
  if (sc.subcritical_valid) {
    const double inv = 1.0 / (p - 1.0), half = 0.5 * (n - 1.0);
    sc.b0 = inv - half + std::max(0.0, 0.5 * (n + 3.0) - inv) / p;
    sc.b1 = inv - half + std::max(0.0, 0.5 * (n + 1.0) - inv) / p;
    sc.c_tilde_sub = 0.125 * std::pow(4.0 * sc.b0 * sc.b1, -inv) *
                     std::pow(p, -2.0 * p * inv * inv);
    const double d = 2.0 - (n - 1.0) * (p - 1.0);
    sc.remark_sub = std::pow(sc.c_tilde_sub, -2.0 * (p - 1.0) / d);
  }
  return sc;
}

// Upper bound on ln(T+1) implied by the critical ladder: (c~_crit A)^{-(p-1)}.
inline double predict_lifespan_critical_ln(double A, double p) {
  if (!(A > 0)) throw std::invalid_argument("predict_lifespan: A <= 0");
  const SharpConstants sc = sharp_constants(2, p);
  return std::pow(sc.c_tilde_crit * A, -(p - 1.0));
}

// Upper bound on T+1 implied by the subcritical ladder:
// (c~_sub A)^{-2(p-1)/(2-(n-1)(p-1))}.
inline double predict_lifespan_subcritical(double A, int n, double p) {
  if (!(A > 0)) throw std::invalid_argument("predict_lifespan: A <= 0");
  const SharpConstants sc = sharp_constants(n, p);
  if (!sc.subcritical_valid)
    throw std::invalid_argument("predict_lifespan_subcritical: p >= p_c(n)");
  const double d = 2.0 - (n - 1.0) * (p - 1.0);
  return std::pow(sc.c_tilde_sub * A, -2.0 * (p - 1.0) / d);
}

// -------------------------------------------------------------------------
// Iteration ladders
// -------------------------------------------------------------------------

enum class Variant { critical, subcritical };

// Entries are indexed k = 1..K (array index k-1). ln_t stores ln(T_k + 1).
struct IterationLadder {
  Variant variant{};
  int n = 0;
  double p = 0, A = 0, T0 = 0;
  Eigen::ArrayXd q, ln_c, ln_t;
  double tilde_T_ln = kNaN;  // ln(T~ + 1); subcritical only
};

// Seed ln(T_1+1) = max{2, ln(T0+1), 2 sqrt(2/p), sqrt(2p)/(p-1)}.
inline double critical_ln_t1(double p, double T0) {
  return std::max(std::max(2.0, std::log1p(T0)),
                  std::max(2.0 * std::sqrt(2.0 / p), std::sqrt(2.0 * p) / (p - 1.0)));
}

// Recursion: q_{k+1} = p q_k - p + 2 (q_1 = 1);
//            C_{k+1} = M C_k^p / p^{k+1} (C_1 = A/2), M = (p-1)^3/max{p,2(p-1)};
//            ln(T_{k+1}+1) = (2p)^{1/q_{k+1}} p ln(T_k+1).
inline IterationLadder critical_ladder(double p, double A, double T0, int K) {
  require_p_supercritical_of_one(p);
  if (!(A > 0) || !(T0 >= 0) || K < 1 || K > 10000)
    throw std::invalid_argument("critical_ladder: bad A, T0 or K");
  IterationLadder L;
  L.variant = Variant::critical;
  L.n = 0;  // the critical ladder depends on p only
  L.p = p;
  L.A = A;
  L.T0 = T0;
  L.q.resize(K);
  L.ln_c.resize(K);
  L.ln_t.resize(K);
  const double ln_m = std::log(critical_m_factor(p)), ln_p = std::log(p);
  L.q[0] = 1.0;
  L.ln_c[0] = std::log(A / 2.0);
  L.ln_t[0] = critical_ln_t1(p, T0);
  for (int k = 1; k < K; ++k) {
    L.q[k] = p * L.q[k - 1] - p + 2.0;
    L.ln_c[k] = p * L.ln_c[k - 1] + ln_m - (k + 1) * ln_p;
    L.ln_t[k] = std::pow(2.0 * p, 1.0 / L.q[k]) * p * L.ln_t[k - 1];
  }
  return L;
}

// Closed forms (k >= 1): q_k = (p^{k-1} + p - 2)/(p-1);
// ln(T_k+1) = (2p)^{sum_{i=2}^{k} 1/q_i} p^{k-1} ln(T_1+1);
// ln C_k = p^{k-1} ln(c~_crit A) + ln B_k with
// ln B_k = [(k+1)(p-1)+1]/(p-1)^2 ln p - ln M/(p-1).
inline double critical_q_closed(double p, int k) {
  return (std::pow(p, k - 1) + p - 2.0) / (p - 1.0);
}

inline double critical_ln_t_closed(double p, double T0, int k) {
  double s = 0.0;
  for (int i = 2; i <= k; ++i) s += 1.0 / critical_q_closed(p, i);
  return std::pow(2.0 * p, s) * std::pow(p, k - 1) * critical_ln_t1(p, T0);
}

inline double critical_ln_c_closed(double p, double A, int k) {
  const double sc = std::log(sharp_constants(2, p).c_tilde_crit * A);
  const double ln_b = ((k + 1.0) * (p - 1.0) + 1.0) / ((p - 1.0) * (p - 1.0)) * std::log(p) -
                      std::log(critical_m_factor(p)) / (p - 1.0);
  return std::pow(p, k - 1) * sc + ln_b;
}

// Recursion: q_{k+1} = p(q_k - (n+3)/2) + (n+5)/2 (q_1 = 2);
//            C_{k+1} = C_k^p / (4 b0 b1 p^{2k}) (C_1 = A/8);
//            T_{k+1}+1 = 2^{1/(q_{k+1}-1) + 1/q_{k+1}} (T_k+1), T_1 = max{1, T0}.
inline IterationLadder subcritical_ladder(int n, double p, double A, double T0, int K) {
  require_p_supercritical_of_one(p);
  const double pc = critical_exponent(n);
  if (!(p < pc - 1e-6))
    throw std::invalid_argument("subcritical_ladder: p must be below p_c(n) by more than 1e-6");
  if (!(A > 0) || !(T0 >= 0) || K < 1 || K > 10000)
    throw std::invalid_argument("subcritical_ladder: bad A, T0 or K");
  const SharpConstants sc = sharp_constants(n, p);
  IterationLadder L;
  L.variant = Variant::subcritical;
  L.n = n;
  L.p = p;
  L.A = A;
  L.T0 = T0;
  L.q.resize(K);
  L.ln_c.resize(K);
  L.ln_t.resize(K);
  const double ln_p = std::log(p), ln_4bb = std::log(4.0 * sc.b0 * sc.b1);
  L.q[0] = 2.0;
  L.ln_c[0] = std::log(A / 8.0);
  L.ln_t[0] = std::log1p(std::max(1.0, T0));
  for (int k = 1; k < K; ++k) {
    L.q[k] = p * (L.q[k - 1] - 0.5 * (n + 3.0)) + 0.5 * (n + 5.0);
    L.ln_c[k] = p * L.ln_c[k - 1] - ln_4bb - 2.0 * k * ln_p;
    L.ln_t[k] = L.ln_t[k - 1] + (1.0 / (L.q[k] - 1.0) + 1.0 / L.q[k]) * M_LN2;
  }
  // ln(T~+1) = ln(T_1+1) + ln2 * sum_{k>=2} (1/q_k + 1/(q_k - 1)).
  // Terms shrink like p^{-k}; truncate when the geometric tail estimate
  // term/(p-1) drops below 1e-15 and add that estimate.
  double tail = L.ln_t[0];
  const double g = 1.0 / (p - 1.0) - 0.5 * (n - 1.0);  // growth rate q_k ~ p^{k-1} g
  for (int k = 2; k < 100000; ++k) {
    const double q = std::pow(p, k - 1) * g + 0.5 * (n + 3.0) - 1.0 / (p - 1.0);
    const double term = (1.0 / q + 1.0 / (q - 1.0)) * M_LN2;
    tail += term;
    if (term / (p - 1.0) < 1e-15) {
      tail += term / (p - 1.0);
      break;
    }
  }
  L.tilde_T_ln = tail;
  return L;
}

// Closed forms (k >= 1): q_k = p^{k-1}(1/(p-1) - (n-1)/2) + (n+3)/2 - 1/(p-1);
// ln C_k = p^{k-1} ln(c~_sub A) + ln D_k with
// ln D_k = ln(4 b0 b1)/(p-1) + 2[(k-1)(p-1)+p]/(p-1)^2 ln p;
// ln(T_k+1) = ln(T_1+1) + ln2 sum_{i=2}^{k} (1/q_i + 1/(q_i - 1)).
inline double subcritical_q_closed(int n, double p, int k) {
  const double inv = 1.0 / (p - 1.0);
  return std::pow(p, k - 1) * (inv - 0.5 * (n - 1.0)) + 0.5 * (n + 3.0) - inv;
}

inline double subcritical_ln_c_closed(int n, double p, double A, int k) {
  const SharpConstants sc = sharp_constants(n, p);
  const double inv = 1.0 / (p - 1.0);
  const double ln_d = std::log(4.0 * sc.b0 * sc.b1) * inv +
                      2.0 * ((k - 1.0) * (p - 1.0) + p) * inv * inv * std::log(p);
  return std::pow(p, k - 1) * std::log(sc.c_tilde_sub * A) + ln_d;
}

inline double subcritical_ln_t_closed(int n, double p, double T0, int k) {
  double s = std::log1p(std::max(1.0, T0));
  for (int i = 2; i <= k; ++i) {
    const double q = subcritical_q_closed(n, p, i);
    s += (1.0 / q + 1.0 / (q - 1.0)) * M_LN2;
  }
  return s;
}

// -------------------------------------------------------------------------
// Theorem-level constants (data-to-lifespan bounds for the PDE)
// -------------------------------------------------------------------------

// critical (present iff p = p_c(n), n >= 2):
//   4^{-(n+1)/(n-1)} R^{(n+3)/(n-1)} max{n+1,4} (n+1)^{(n+3)/2}
//     (n-1)^{-(n-1)/2} (A_f^{-1} alpha_{n-1})^{2/(n+1)}
//   bounding  eps^{p-1} ln(T(eps)/R)  from above asymptotically.
// subcritical (present iff p < p_c(n)):
//   [ 2^{-(n-1)p+n+5} (b0 b1)^2 p^{4p/(p-1)}
//     (R^{(n+3)/2} A_f^{-1} alpha_{n-1}/(n+1))^{2(p-1)} ]^{1/(2-(n-1)(p-1))}
//   bounding  eps^{2(p-1)/(2-(n-1)(p-1))} T(eps).
struct TheoremConstants {
  int n = 0;
  double p = 0, R = 0, A_f = 0;
  std::optional<double> critical;
  std::optional<double> subcritical;
};

inline TheoremConstants theorem_constants(int n, double p, double R, double A_f) {
  require_p_supercritical_of_one(p);
  if (n < 2 || !(R > 0) || !(A_f > 0))
    throw std::invalid_argument("theorem_constants: bad n, R or A_f");
  TheoremConstants tc;
  tc.n = n;
  tc.p = p;
  tc.R = R;
  tc.A_f = A_f;
  const double alpha = unit_ball_volume(n - 1);
  if (n >= 2 && std::abs(p - critical_exponent(n)) <= 1e-9) {
    tc.critical = std::pow(4.0, -(n + 1.0) / (n - 1.0)) *
                  std::pow(R, (n + 3.0) / (n - 1.0)) * std::max(n + 1.0, 4.0) *
                  std::pow(n + 1.0, 0.5 * (n + 3.0)) *
                  std::pow(n - 1.0, -0.5 * (n - 1.0)) *
                  std::pow(alpha / A_f, 2.0 / (n + 1.0));
  }
  const SharpConstants sc = sharp_constants(n, p);
  if (sc.subcritical_valid) {
    const double d = 2.0 - (n - 1.0) * (p - 1.0);
    tc.subcritical = std::pow(
        std::pow(2.0, -(n - 1.0) * p + n + 5.0) * std::pow(sc.b0 * sc.b1, 2.0) *
            std::pow(p, 4.0 * p / (p - 1.0)) *
            std::pow(std::pow(R, 0.5 * (n + 3.0)) * alpha / (A_f * (n + 1.0)),
                     2.0 * (p - 1.0)),
        1.0 / d);
  }
  return tc;
}

}  // namespace glassey::odi
