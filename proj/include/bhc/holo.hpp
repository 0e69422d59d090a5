#pragma once

#include <optional>

namespace bhc {

// Capped AdS_{d+2} toy model: the wall at radial position xi stands in for
// the correlation length.
struct HoloParams {
  int d = 2;
  double L = 1.0;        // AdS radius
  double G_N = 1.0;      // Newton constant in d + 2 dimensions
  double sigma_d = 1.0;  // boundary spatial volume
  double xi = 1.0;
  double nu = 0.5;
  std::optional<double> delta_t;  // when set, xi = |delta_t|^{-nu}

  void validate() const;
  double correlation_length() const;
};

struct CvDelta {
  double value = 0.0;  // C_V(xi -> inf) - C_V(xi) = sigma_d L^d / (d G_N) xi^{-d}
  double xi = 0.0;
  // With delta_t: the same number written as prefactor * |delta_t|^{nu d}.
  std::optional<double> exponent;
  std::optional<double> prefactor;
};

CvDelta cv_delta(const HoloParams& p);

}  // namespace bhc
