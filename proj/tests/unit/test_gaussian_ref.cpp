#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bhc/bogoliubov.hpp"
#include "bhc/errors.hpp"
#include "bhc/gaussian_ref.hpp"

using namespace bhc;
using std::numbers::pi;

namespace {
GaussianParams gp(double m, int d, double kappa, double w0 = 1.0) {
  GaussianParams g;
  g.m = m;
  g.omega0 = w0;
  g.d = d;
  g.kappa = kappa;
  return g;
}
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("two mode model") {
  CHECK(two_mode_complexity(0.0, 1.0) == 0.0);
  CHECK(two_mode_complexity(0.0, 2.0) == 0.0);
  CHECK(two_mode_complexity(std::tanh(1.0), 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(two_mode_complexity(1.0, 1.0), DomainError);

  Eigen::MatrixXd P(2, 2);
  P << 0, 0.5, 0.5, 0;
  ModeBlock b;
  b.M = Eigen::MatrixXd::Identity(2, 2);
  b.P = P;
  const auto r = diagonalize_block(b);
  const double c2 = r.thetas.squaredNorm();
  CHECK(std::abs(c2 - two_mode_complexity(0.5, 2.0)) <= 1e-10);
}

TEST_CASE("gas theta") {
  GasParams gas;
  gas.m = 0.7;
  gas.U = 0.3;
  const double g = 2 * gas.m * gas.U;
  CHECK(gas_theta(std::sqrt(g), gas).value == doctest::Approx(0.5 * std::atanh(0.5)).epsilon(1e-14));
  CHECK(gas_theta(0.0, gas).divergent);
  CHECK(gas_theta(1e8, gas).value < 1e-16);
  double prev = gas_theta(1e-4, gas).value;
  for (double p = 2e-4; p < 1e4; p *= 2) {
    const double v = gas_theta(p, gas).value;
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("gas c2 in d=3") {
  GasParams gas;
  gas.m = 1.0;
  gas.U = 0.5;  // 2mU = 1
  CHECK(gas_c2_d3_printed(gas) == doctest::Approx((2 - std::log(4.0)) / (48 * pi)).epsilon(1e-14));
  CHECK(rel(gas_c2_d3(gas), gas_c2_d3_quadrature(gas)) <= 1e-6);
  GasParams twice = gas;
  twice.U = 1.0;
  CHECK(gas_c2_d3(twice) / gas_c2_d3(gas) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-14));
  for (double U : {0.01, 0.2, 3.0}) {
    gas.U = U;
    CHECK(rel(gas_c2_d3(gas), gas_c2_d3_quadrature(gas)) <= 1e-6);
  }
}

TEST_CASE("closed forms at the ends of the mass range") {
  CHECK(c_kappa_quadrature(gp(1.0, 2, 1.0)) == 0.0);
  CHECK(std::abs(c_closed_form(gp(1.0, 2, 1.0)).value) < 1e-16);
  CHECK(std::abs(c_closed_form(gp(1.0, 2, 2.0)).value) < 1e-16);
  CHECK(c_closed_form(gp(0.0, 2, 1.0)).value == doctest::Approx(1 / (8 * pi)).epsilon(1e-14));
  CHECK(c_closed_form(gp(0.0, 3, 1.0)).value == doctest::Approx(1 / (18 * pi * pi)).epsilon(1e-14));
  CHECK(c_closed_form(gp(0.0, 3, 2.0)).value == doctest::Approx(1 / (54 * pi * pi)).epsilon(1e-14));
  CHECK_THROWS_AS(c_kappa_quadrature(gp(1.5, 2, 1.0)), DomainError);
  CHECK_THROWS_AS(c_closed_form(gp(0.1, 4, 1.0)), InvalidArgument);
}

TEST_CASE("quadrature matches the exact closed forms") {
  for (double m : {1e-4, 0.01, 0.1, 0.37, 0.8, 0.99})
    for (double w0 : {1.0, 2.5}) {
      CHECK(rel(c_kappa_quadrature(gp(m * w0, 2, 1.0, w0)), c_closed_form(gp(m * w0, 2, 1.0, w0)).value) <= 1e-8);
      CHECK(rel(c_kappa_quadrature(gp(m * w0, 2, 2.0, w0)), c_closed_form(gp(m * w0, 2, 2.0, w0)).value) <= 1e-8);
      CHECK(rel(c_kappa_quadrature(gp(m * w0, 3, 1.0, w0)), c_closed_form(gp(m * w0, 3, 1.0, w0)).value) <= 1e-8);
    }
}

TEST_CASE("d=3 c2 expansion error is fourth order in m") {
  const auto cf = c_closed_form(gp(0.01, 3, 2.0));
  CHECK_FALSE(cf.exact);
  CHECK(cf.truncation_order == 4);
  CHECK(rel(cf.value, c_kappa_quadrature(gp(0.01, 3, 2.0))) <= 1e-4);
  std::vector<double> scaled;
  for (double m : {0.005, 0.01, 0.02, 0.04}) {
    const double err = std::abs(c_closed_form(gp(m, 3, 2.0)).value - c_kappa_quadrature(gp(m, 3, 2.0)));
    scaled.push_back(err / std::pow(m, 4));
  }
  for (double s : scaled) CHECK(s < 1.0);
  CHECK(scaled.back() / scaled.front() > 0.5);
  CHECK(scaled.back() / scaled.front() < 2.0);
}

TEST_CASE("recursion between kappa orders") {
  CHECK(std::abs(recursion_residual(gp(0.1, 2, 2.0))) <= 1e-6);
  CHECK(std::abs(recursion_residual(gp(0.1, 3, 2.0, 1.0), true)) <= 1e-6);
  // closed-form d=3 residual is the truncation remainder: small and shrinking like m^4
  const double r1 = std::abs(recursion_residual(gp(0.1, 3, 2.0)));
  const double r2 = std::abs(recursion_residual(gp(0.05, 3, 2.0)));
  CHECK(r1 <= 2e-4);
  CHECK(r1 / r2 > 11.0);
  CHECK(r1 / r2 < 21.0);
  CHECK(std::abs(recursion_residual(gp(0.999, 2, 2.0))) <= 1e-4);
}

TEST_CASE("second difference in m^2 isolates the universal log term") {
  for (double m : {1e-3, 3e-3, 1e-2}) {
    const double s = m * m, h = 0.1 * s;
    auto c = [](double s2) { return c_kappa_quadrature(gp(std::sqrt(s2), 2, 1.0)); };
    const double second = s * (c(s + h) - 2 * c(s) + c(s - h)) / (h * h);
    CHECK(rel(second, 1 / (8 * pi)) <= 0.01);
  }
}

TEST_CASE("positivity") {
  for (int d : {1, 2, 3})
    for (double kappa : {1.0, 2.0, 3.0})
      for (double m = 0.0; m < 1.0; m += 0.05) CHECK(c_kappa_quadrature(gp(m, d, kappa)) >= 0.0);
  CHECK(omega_sphere(3) == doctest::Approx(4 * pi));
  CHECK(omega_sphere(2) == doctest::Approx(2 * pi));
}
