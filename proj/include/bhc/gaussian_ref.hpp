#pragma once

namespace bhc {

// Free relativistic scalar with gap m, regulated by |p| <= sqrt(omega0^2 - m^2).
struct GaussianParams {
  double m = 0.0;
  double omega0 = 1.0;
  int d = 2;
  double kappa = 1.0;

  void validate() const;  // 0 <= m <= omega0, d >= 1, kappa >= 1
};

// Weakly interacting Bose gas, U = n U0.
struct GasParams {
  double m = 1.0;
  double U = 0.0;
  int d = 3;

  void validate() const;
};

// Volume of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double omega_sphere(int d);

// Two coupled modes with ab + a^dag b^dag coupling lambda (|lambda| < 1):
// C_kappa = 2^{1-kappa} |atanh lambda|^kappa.
double two_mode_complexity(double lambda, double kappa);

struct GasTheta {
  double value = 0.0;
  bool divergent = false;  // p = 0: theta is +infinity
};

// theta_p = 1/2 atanh(2mU / (p^2 + 2mU)).
GasTheta gas_theta(double p, const GasParams& gas);

// c_2 density in d = 3, integral of d^3p/(2pi)^3 theta_p^2 over all p:
// (2 - ln 4) (4mU)^{3/2} / (48 pi).
double gas_c2_d3(const GasParams& gas);
// The same expression written with (2mU)^{3/2}; smaller than the integral by
// 2^{3/2}. Kept for comparison only.
double gas_c2_d3_printed(const GasParams& gas);
// Adaptive quadrature of the d = 3 integral. p_max <= 0 integrates to infinity.
double gas_c2_d3_quadrature(const GasParams& gas, double p_max = 0.0);

// (1/2^{kappa-1}) Omega_{d-1}/(2pi)^d int_0^Lambda p^{d-1} |ln(sqrt(p^2+m^2)/omega0)|^kappa dp
// by tanh-sinh quadrature, 1e-10 relative or better.
double c_kappa_quadrature(const GaussianParams& g);

struct ClosedForm {
  double value = 0.0;
  bool exact = true;
  // When !exact: the expansion drops terms of order m^truncation_order.
  int truncation_order = 0;
};

// d = 2: kappa 1 and 2 exact. d = 3: kappa 1 exact, kappa 2 the small-m
// expansion through m^3 (error O(m^4)).
ClosedForm c_closed_form(const GaussianParams& g);

// (c_{kappa-1} - (2 omega0/kappa) dc_kappa/domega0) / c_{kappa-1}, with a
// central difference of step 1e-5 omega0. Uses the closed forms for kappa = 2
// unless use_quadrature, quadrature otherwise. In d = 3 the closed-form value
// carries the O(m^4) truncation of c_2. Absolute residual when c_{kappa-1} = 0.
double recursion_residual(const GaussianParams& g, bool use_quadrature = false);

}  // namespace bhc
