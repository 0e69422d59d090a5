#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bhc/complexity.hpp"
#include "bhc/lattice.hpp"

namespace bhc {

struct GapPoint {
  double x = 0.0;
  bool ok = false;
  std::string error;
  double min_omega = 0.0;  // smallest non-zero omega over the grid and flavors
  Eigen::VectorXd gamma_omegas;   // k = 0 spectrum, ascending
  std::vector<bool> gamma_zero_modes;
  std::int64_t zero_modes = 0;    // over the whole grid
};

std::vector<GapPoint> gap_scan(const ModelParams& base, ScanAxis axis, double lo, double hi,
                               int steps, const ComplexitySettings& settings = {});
std::vector<GapPoint> gap_scan_points(const ModelParams& base, ScanAxis axis,
                                      const std::vector<double>& xs,
                                      const ComplexitySettings& settings = {});

struct SpectrumSample {
  std::vector<double> k;
  Eigen::VectorXd omegas;  // ascending
  std::vector<bool> zero_mode;
};

std::vector<SpectrumSample> spectrum_along(const ModelParams& params, const MeanFieldSolution& mfs,
                                           const std::vector<KPoint>& path,
                                           const BogoliubovOptions& opts = {});

// A flavor is gapless when its k = 0 frequency is a zero mode or below gapless_tol.
struct SpectrumClass {
  Eigen::VectorXd gamma_omegas;
  std::vector<bool> gamma_zero_modes;
  int gapless_flavors = 0;
  double min_omega = 0.0;  // over the full grid, zero modes excluded
  double phi = 0.0;
};

SpectrumClass classify_spectrum(const ModelParams& params, double gapless_tol = 1e-3,
                                const ComplexitySettings& settings = {});

struct PowerLaw {
  double exponent = 0.0;
  double prefactor = 0.0;
  double exponent_error = 0.0;
  int points = 0;
};

// Least squares of ln y = ln A + p ln x; all x, y must be positive.
PowerLaw power_law_fit(const std::vector<double>& x, const std::vector<double>& y);

struct DispersionFit {
  PowerLaw law;
  double omega_at_zero = 0.0;
  std::vector<double> k;
  std::vector<double> domega;
};

// omega_a(k) - omega_a(0) ~ c k^z on the cut k = (0, ..., 0, k), grid momenta
// with k_min <= k <= k_max. Flavors are indexed by ascending frequency.
DispersionFit dispersion_exponent(const ModelParams& params, int flavor, double k_min,
                                  double k_max, const SelfConsistencyOptions& mf = {},
                                  const BogoliubovOptions& opts = {});

enum class FitModel { log1, log2, quad, power32, purepow };
enum class Side { below, above };

FitModel parse_fit_model(const std::string& name);
std::string to_string(FitModel model);
std::string to_string(Side side);

//   log1     dc = u |d| ln(1/|d|)
//   log2     dc = u |d| ln^2 |d|
//   quad     dc = D d^2
//   power32  dc = a |d| + b |d|^{3/2}
//   purepow  dc = A |d|^p  (fitted in log-log)
struct FitSpec {
  FitModel model = FitModel::log1;
  Side side = Side::below;
  double window_lo = 2e-3;
  double window_hi = 2e-2;
  double critical_value = 0.0;
};

struct FitResult {
  FitModel model = FitModel::log1;
  Side side = Side::below;
  std::vector<std::string> names;
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  double residual_rms = 0.0;  // same units as dc
  double window_lo = 0.0;
  double window_hi = 0.0;
  int points = 0;
  double c_critical = 0.0;

  // log1/log2 coefficient if the logs were base 10 (x ln 10, x ln^2 10).
  std::optional<double> log10_coefficient() const;
};

// dc = c_critical - c(x) over the points with |x - critical_value| inside the
// window on the requested side. Without c_critical, the scan point closest to
// critical_value supplies it.
FitResult fit_scaling(const std::vector<double>& x, const std::vector<double>& c,
                      const FitSpec& spec, std::optional<double> c_critical = std::nullopt);

// Default |dt| windows: [2e-3, 2e-2] in d = 2, [5e-3, 5e-2] in d = 3.
std::pair<double, double> default_fit_window(int d);

struct NuCheck {
  double p_hat = 0.0;
  double nu_d = 0.0;  // gaussian nu = 1/2 times d
  double deviation = 0.0;
};

NuCheck nu_consistency(const FitResult& fit, int d);

}  // namespace bhc
