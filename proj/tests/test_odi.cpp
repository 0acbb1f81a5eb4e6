#include "glassey/odi.hpp"

#include <doctest.h>

#include <cmath>

using namespace glassey;

namespace {
bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}
}  // namespace

TEST_CASE("unit ball volumes") {
  CHECK(odi::unit_ball_volume(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(odi::unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(odi::unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(odi::unit_ball_volume(3) ==
        doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-15));
}

TEST_CASE("critical exponent") {
  CHECK(odi::critical_exponent(2) == doctest::Approx(3.0));
  CHECK(odi::critical_exponent(3) == doctest::Approx(2.0));
  CHECK(odi::critical_exponent(4) == doctest::Approx(5.0 / 3.0));
  CHECK(std::isinf(odi::critical_exponent(1)));
  CHECK_THROWS_AS(odi::critical_exponent(0), std::invalid_argument);
}

TEST_CASE("ladder contraction factor") {
  CHECK(odi::critical_m_factor(2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(odi::critical_m_factor(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(odi::critical_m_factor(1.2) ==
        doctest::Approx(0.008 / 1.2).epsilon(1e-14));
}

TEST_CASE("sharp constants: spot values") {
  const odi::SharpConstants c32 = odi::sharp_constants(3, 2.0);
  CHECK(c32.p_prime == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c32.c_tilde_crit == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
  CHECK(c32.remark_crit == doctest::Approx(32.0).epsilon(1e-14));
  CHECK_FALSE(c32.subcritical_valid);  // p sits on the critical line for n=3

  const odi::SharpConstants c22 = odi::sharp_constants(2, 2.0);
  CHECK(c22.subcritical_valid);
  CHECK(c22.b0 == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(c22.b1 == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(c22.c_tilde_sub == doctest::Approx(1.0 / 480.0).epsilon(1e-13));
  CHECK(c22.remark_sub == doctest::Approx(230400.0).epsilon(1e-12));
}

TEST_CASE("sharp constants: subcritical identity") {
  // c~_sub^{-2(p-1)} = 4^{3p-1} (b0 b1)^2 p^{4p/(p-1)}
  for (auto [n, p] : {std::pair{2, 2.0}, {3, 1.5}, {4, 1.2}}) {
    const odi::SharpConstants sc = odi::sharp_constants(n, p);
    const double lhs = std::pow(sc.c_tilde_sub, -2.0 * (p - 1.0));
    const double rhs = std::pow(4.0, 3.0 * p - 1.0) *
                       std::pow(sc.b0 * sc.b1, 2.0) *
                       std::pow(p, 4.0 * p / (p - 1.0));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("theorem constants") {
  const odi::TheoremConstants t32 = odi::theorem_constants(3, 2.0, 1.0, 1.0);
  REQUIRE(t32.critical.has_value());
  CHECK_FALSE(t32.subcritical.has_value());
  CHECK(*t32.critical ==
        doctest::Approx(8.0 * std::sqrt(M_PI)).epsilon(1e-13));

  const odi::TheoremConstants t22 = odi::theorem_constants(2, 2.0, 1.0, 1.0);
  REQUIRE(t22.subcritical.has_value());
  CHECK_FALSE(t22.critical.has_value());
  CHECK(*t22.subcritical == doctest::Approx(3200.0).epsilon(1e-12));

  // A_f enters the critical constant as (alpha_{n-1}/A_f)^{2/(n+1)}
  const odi::TheoremConstants half = odi::theorem_constants(3, 2.0, 1.0, 0.25);
  CHECK(*half.critical ==
        doctest::Approx(8.0 * std::sqrt(M_PI) * 2.0).epsilon(1e-13));

  CHECK_THROWS_AS(odi::theorem_constants(1, 2.0, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(odi::theorem_constants(3, 2.0, -1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("critical ladder: first rungs") {
  const odi::IterationLadder L = odi::critical_ladder(2.0, 1.0, 1.0, 5);
  CHECK(L.q[0] == doctest::Approx(1.0));
  CHECK(L.q[1] == doctest::Approx(2.0));  // p q - p + 2 at q = 1
  CHECK(L.ln_c[0] == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  // C_2 = M C_1^p / p^2 = (1/2)(1/4)/4 = 1/32
  CHECK(L.ln_c[1] == doctest::Approx(std::log(1.0 / 32.0)).epsilon(1e-14));
  // ln(T_1+1) = max{2, ln 2, 2 sqrt(2/p), sqrt(2p)/(p-1)} = 2 at p = 2, T0 = 1
  CHECK(L.ln_t[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("critical ladder: recursion matches closed forms") {
  for (double p : {1.2, 2.0, 3.0}) {
    const odi::IterationLadder L = odi::critical_ladder(p, 0.7, 0.5, 12);
    for (int k = 1; k <= 12; ++k) {
      CHECK(close(L.q[k - 1], odi::critical_q_closed(p, k), 1e-10));
      CHECK(close(L.ln_c[k - 1], odi::critical_ln_c_closed(p, 0.7, k), 1e-10));
      CHECK(close(L.ln_t[k - 1], odi::critical_ln_t_closed(p, 0.5, k), 1e-10));
    }
  }
}

TEST_CASE("subcritical ladder: first rungs and ratio bounds") {
  const int n = 2;
  const double p = 2.0, A = 1.0, T0 = 1.0;
  const odi::IterationLadder L = odi::subcritical_ladder(n, p, A, T0, 30);
  const odi::SharpConstants sc = odi::sharp_constants(n, p);
  CHECK(L.q[0] == doctest::Approx(2.0));
  CHECK(L.ln_c[0] == doctest::Approx(std::log(A / 8.0)).epsilon(1e-15));
  // q_{k+1} <= b0 p^k and q_{k+1} - 1 <= b1 p^k drive the T~ convergence
  for (int k = 2; k <= 30; ++k) {
    const double scale = std::pow(p, k - 1);
    CHECK(L.q[k - 1] / scale <= sc.b0 + 1e-12);
    CHECK((L.q[k - 1] - 1.0) / scale <= sc.b1 + 1e-12);
  }
}

TEST_CASE("subcritical ladder: recursion matches closed forms") {
  for (auto [n, p] : {std::pair{2, 2.0}, {3, 1.5}, {4, 1.2}}) {
    const odi::IterationLadder L = odi::subcritical_ladder(n, p, 0.3, 2.0, 12);
    for (int k = 1; k <= 12; ++k) {
      CHECK(close(L.q[k - 1], odi::subcritical_q_closed(n, p, k), 1e-10));
      CHECK(close(L.ln_c[k - 1], odi::subcritical_ln_c_closed(n, p, 0.3, k),
                  1e-10));
      CHECK(close(L.ln_t[k - 1], odi::subcritical_ln_t_closed(n, p, 2.0, k),
                  1e-10));
    }
  }
}

TEST_CASE("subcritical ladder: T~ truncation is stable and matches its sum") {
  const odi::IterationLadder a = odi::subcritical_ladder(2, 2.0, 1.0, 1.0, 40);
  const odi::IterationLadder b = odi::subcritical_ladder(2, 2.0, 1.0, 1.0, 80);
  CHECK(a.tilde_T_ln == doctest::Approx(b.tilde_T_ln).epsilon(1e-13));

  // direct evaluation: ln(T~+1) = ln(T_1+1) + ln 2 sum_{k>=2} (1/q_k + 1/(q_k-1))
  double s = std::log1p(std::max(1.0, 1.0));
  for (int k = 2; k <= 400; ++k) {
    const double q = odi::subcritical_q_closed(2, 2.0, k);
    s += std::log(2.0) * (1.0 / q + 1.0 / (q - 1.0));
  }
  CHECK(a.tilde_T_ln == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("lifespan predictors") {
  CHECK(odi::predict_lifespan_critical_ln(1.0, 2.0) ==
        doctest::Approx(32.0).epsilon(1e-13));
  // halving A scales ln(T+1) by 2^{p-1}
  CHECK(odi::predict_lifespan_critical_ln(0.5, 2.0) ==
        doctest::Approx(64.0).epsilon(1e-13));
  CHECK(odi::predict_lifespan_subcritical(1.0, 2, 2.0) ==
        doctest::Approx(230400.0).epsilon(1e-12));
  CHECK(odi::predict_lifespan_subcritical(0.5, 2, 2.0) ==
        doctest::Approx(4.0 * 230400.0).epsilon(1e-12));
  CHECK_THROWS_AS(odi::predict_lifespan_critical_ln(-1.0, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(odi::predict_lifespan_subcritical(1.0, 3, 2.0),
                  std::invalid_argument);
}

TEST_CASE("ladder guards") {
  CHECK_THROWS_AS(odi::critical_ladder(1.0, 1.0, 1.0, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(odi::critical_ladder(2.0, 0.0, 1.0, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(odi::critical_ladder(2.0, 1.0, 1.0, 0),
                  std::invalid_argument);
  // on the critical line the subcritical ladder is undefined
  CHECK_THROWS_AS(odi::subcritical_ladder(2, 3.0, 1.0, 1.0, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(odi::subcritical_ladder(3, 2.5, 1.0, 1.0, 5),
                  std::invalid_argument);
}
