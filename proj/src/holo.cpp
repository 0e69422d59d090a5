#include "bhc/holo.hpp"

#include <cmath>

#include "bhc/errors.hpp"

namespace bhc {

void HoloParams::validate() const {
  if (d < 1) throw InvalidArgument("holographic toy model needs d >= 1");
  if (!(L > 0.0) || !(G_N > 0.0) || !(sigma_d > 0.0) || !(nu > 0.0))
    throw InvalidArgument("L, G_N, sigma_d and nu must be positive");
  if (delta_t) {
    if (!(*delta_t != 0.0) || !std::isfinite(*delta_t)) throw InvalidArgument("delta_t must be non-zero");
  } else if (!(xi > 0.0)) {
    throw InvalidArgument("xi must be positive");
  }
}

double HoloParams::correlation_length() const {
  return delta_t ? std::pow(std::abs(*delta_t), -nu) : xi;
}

CvDelta cv_delta(const HoloParams& p) {
  p.validate();
  CvDelta out;
  out.xi = p.correlation_length();
  const double pref = p.sigma_d * std::pow(p.L, p.d) / (p.d * p.G_N);
  out.value = std::isinf(out.xi) ? 0.0 : pref * std::pow(out.xi, -p.d);
  if (p.delta_t) {
    out.exponent = p.nu * p.d;
    out.prefactor = pref;
  }
  return out;
}

}  // namespace bhc
