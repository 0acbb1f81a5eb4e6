#include "glassey/fit.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <limits>

using namespace glassey;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TEST_CASE("exact line") {
  Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(5, 0.0, 4.0);
  Eigen::ArrayXd y = 3.0 * x - 2.0;
  const fit::FitResult r = fit::fit_line(x, y);
  CHECK(r.slope == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(r.intercept == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(r.r2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.n_used == 5);
  CHECK(r.excluded.empty());
}

TEST_CASE("non-finite pairs are excluded and recorded") {
  Eigen::ArrayXd x(6), y(6);
  x << 0, 1, 2, 3, 4, 5;
  y << 1, 3, kNaN, 7, 9, 11;
  x[4] = std::numeric_limits<double>::infinity();
  const fit::FitResult r = fit::fit_line(x, y);
  CHECK(r.n_used == 4);
  REQUIRE(r.excluded.size() == 2);
  CHECK(r.excluded[0] == 2);
  CHECK(r.excluded[1] == 4);
  CHECK(r.slope == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(r.intercept == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("constant y gives zero slope and r2 = 1") {
  Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(4, 0.0, 3.0);
  Eigen::ArrayXd y = Eigen::ArrayXd::Constant(4, 5.0);
  const fit::FitResult r = fit::fit_line(x, y);
  CHECK(r.slope == doctest::Approx(0.0));
  CHECK(r.r2 == doctest::Approx(1.0));
}

TEST_CASE("noise lowers r2 but keeps the trend") {
  Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(9, 0.0, 8.0);
  Eigen::ArrayXd y = 2.0 * x;
  for (int i = 0; i < 9; ++i) y[i] += (i % 2 ? 0.5 : -0.5);
  const fit::FitResult r = fit::fit_line(x, y);
  CHECK(r.slope == doctest::Approx(2.0).epsilon(0.05));
  CHECK(r.r2 > 0.9);
  CHECK(r.r2 < 1.0);
}

TEST_CASE("guards") {
  Eigen::ArrayXd tiny(2), ty(2);
  tiny << 0, 1;
  ty << 0, 1;
  CHECK_THROWS_AS(fit::fit_line(tiny, ty), std::invalid_argument);

  Eigen::ArrayXd x3(3), y4(4);
  x3.setZero();
  y4.setZero();
  CHECK_THROWS_AS(fit::fit_line(x3, y4), std::invalid_argument);

  Eigen::ArrayXd xc = Eigen::ArrayXd::Constant(4, 2.0);
  Eigen::ArrayXd yv = Eigen::ArrayXd::LinSpaced(4, 0.0, 3.0);
  CHECK_THROWS_AS(fit::fit_line(xc, yv), std::invalid_argument);

  // three points with one NaN leaves too few usable pairs
  Eigen::ArrayXd xn(3), yn(3);
  xn << 0, 1, 2;
  yn << 0, kNaN, 2;
  CHECK_THROWS_AS(fit::fit_line(xn, yn), std::invalid_argument);
}
