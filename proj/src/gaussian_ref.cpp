#include "bhc/gaussian_ref.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "bhc/errors.hpp"

namespace bhc {

namespace {

constexpr double pi = std::numbers::pi;

double kappa_power(double x, double kappa) {
  if (kappa == 1.0) return x;
  if (kappa == 2.0) return x * x;
  return std::pow(x, kappa);
}

}  // namespace

void GaussianParams::validate() const {
  if (!(d >= 1)) throw InvalidArgument("gaussian reference needs d >= 1");
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be >= 1");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidArgument("omega0 must be positive");
  if (!(m >= 0.0)) throw DomainError("mass must be non-negative");
  if (m > omega0) throw DomainError("mass above the reference frequency");
}

void GasParams::validate() const {
  if (!(m > 0.0) || !std::isfinite(m)) throw InvalidArgument("gas mass must be positive");
  if (!(U >= 0.0) || !std::isfinite(U)) throw InvalidArgument("gas interaction must be >= 0");
  if (d < 1) throw InvalidArgument("gas dimension must be >= 1");
}

double omega_sphere(int d) {
  if (d < 1) throw InvalidArgument("sphere dimension must be >= 1");
  return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double two_mode_complexity(double lambda, double kappa) {
  if (!(std::abs(lambda) < 1.0)) throw DomainError("two-mode coupling needs |lambda| < 1");
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  return std::pow(2.0, 1.0 - kappa) * kappa_power(std::abs(std::atanh(lambda)), kappa);
}

GasTheta gas_theta(double p, const GasParams& gas) {
  gas.validate();
  if (p < 0.0) throw InvalidArgument("momentum magnitude must be >= 0");
  const double g = 2.0 * gas.m * gas.U;
  if (g == 0.0) return {0.0, false};
  if (p == 0.0) return {std::numeric_limits<double>::infinity(), true};
  // atanh(g/(p^2+g)) = 1/2 ln((p^2+2g)/p^2)
  return {0.25 * std::log1p(2.0 * g / (p * p)), false};
}

double gas_c2_d3(const GasParams& gas) {
  gas.validate();
  return (2.0 - std::log(4.0)) * std::pow(4.0 * gas.m * gas.U, 1.5) / (48.0 * pi);
}

double gas_c2_d3_printed(const GasParams& gas) {
  gas.validate();
  return (2.0 - std::log(4.0)) * std::pow(2.0 * gas.m * gas.U, 1.5) / (48.0 * pi);
}

double gas_c2_d3_quadrature(const GasParams& gas, double p_max) {
  gas.validate();
  const double g = 2.0 * gas.m * gas.U;
  if (g == 0.0) return 0.0;
  // Integrate in q = p / sqrt(g); the measure contributes g^{3/2}.
  auto f = [](double q) {
    if (q == 0.0) return 0.0;
    const double th = q < 1.0 ? 0.25 * (std::log(q * q + 2.0) - 2.0 * std::log(q))
                              : 0.25 * std::log1p(2.0 / (q * q));
    return q * q * th * th;
  };
  double integral = 0.0;
  if (p_max > 0.0) {
    boost::math::quadrature::tanh_sinh<double> ts;
    integral = ts.integrate(f, 0.0, p_max / std::sqrt(g), 1e-13);
  } else {
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    integral = ts.integrate(f, 0.0, 1.0, 1e-13) + es.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-13);
  }
  return std::pow(g, 1.5) * integral / (2.0 * pi * pi);
}

double c_kappa_quadrature(const GaussianParams& g) {
  g.validate();
  const double w2 = g.omega0 * g.omega0;
  const double lambda2 = w2 - g.m * g.m;
  if (lambda2 <= 0.0) return 0.0;
  const double cutoff = std::sqrt(lambda2);
  const double m2 = g.m * g.m;
  // -ln(sqrt(p^2+m^2)/omega0) >= 0 on the range; log1p keeps the upper end exact.
  auto f = [&](double p) {
    const double p2 = p * p;
    double l;
    if (p2 + m2 > 0.5 * w2)
      l = -0.5 * std::log1p((p2 - lambda2) / w2);
    else
      l = -std::log(std::hypot(p, g.m) / g.omega0);
    if (!std::isfinite(l)) return 0.0;  // p = m = 0
    return std::pow(p, g.d - 1) * kappa_power(l, g.kappa);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double integral = ts.integrate(f, 0.0, cutoff, 1e-13);
  return std::pow(2.0, 1.0 - g.kappa) * omega_sphere(g.d) / std::pow(2.0 * pi, g.d) * integral;
}

ClosedForm c_closed_form(const GaussianParams& g) {
  g.validate();
  if (g.kappa != 1.0 && g.kappa != 2.0) throw InvalidArgument("closed forms exist for kappa 1 and 2");
  const double m = g.m, w = g.omega0;
  const double m2 = m * m, w2 = w * w;
  if (g.d == 2) {
    // x ln x with x -> 0 is 0.
    const double L = m > 0.0 ? std::log(m2 / w2) : 0.0;
    if (g.kappa == 1.0) return {(m2 * L - m2 + w2) / (8.0 * pi), true, 0};
    return {(w2 - 0.5 * m2 * L * L + m2 * L - m2) / (16.0 * pi), true, 0};
  }
  if (g.d == 3) {
    if (g.kappa == 1.0) {
      if (m == w) return {0.0, true, 0};
      const double s = std::sqrt(w2 - m2);
      const double v = (w2 * w2 / 3.0 - 5.0 / 3.0 * m2 * w2 + 4.0 / 3.0 * m2 * m2 +
                        m2 * m * s * std::asin(std::sqrt(1.0 - m2 / w2))) /
                       (s * 6.0 * pi * pi);
      return {v, true, 0};
    }
    const double lm = m > 0.0 ? m2 * m * std::log(m2) : 0.0;
    const double v = w2 * w / (54.0 * pi * pi) - w * m2 / (4.0 * pi * pi) - lm / (24.0 * pi) +
                     m2 * m / (36.0 * pi) * (1.5 * std::log(w2) - 1.5 * std::log(4.0) + 4.0);
    return {v, false, 4};
  }
  throw InvalidArgument("closed forms exist for d = 2 and d = 3");
}

double recursion_residual(const GaussianParams& g, bool use_quadrature) {
  g.validate();
  if (g.kappa < 2.0) throw InvalidArgument("recursion needs kappa >= 2");
  const bool closed = !use_quadrature && g.kappa == 2.0 && (g.d == 2 || g.d == 3);
  auto c = [&](double kappa, double w) {
    GaussianParams q = g;
    q.kappa = kappa;
    q.omega0 = w;
    return closed ? c_closed_form(q).value : c_kappa_quadrature(q);
  };
  const double w = g.omega0;
  const double h = 1e-5 * w;
  if (w - h < g.m) throw DomainError("recursion step crosses m = omega0");
  const double deriv = (c(g.kappa, w + h) - c(g.kappa, w - h)) / (2.0 * h);
  const double lower = c(g.kappa - 1.0, w);
  const double diff = lower - 2.0 * w / g.kappa * deriv;
  return lower != 0.0 ? diff / lower : diff;
}

}  // namespace bhc
