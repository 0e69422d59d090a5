#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace bhc::numeric {

struct Minimum {
  double x;
  double value;
};

// Golden-section search for a minimum of a unimodal f on [a, b].
inline Minimum golden_section_min(const std::function<double(double)>& f,
                                  double a, double b, double tolerance,
                                  int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iterations && (b - a) > tolerance; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

// Bisection on a boolean predicate with pred(lo) == false, pred(hi) == true.
// Returns the midpoint of the final bracket.
inline double bisect_predicate(const std::function<bool(double)>& pred,
                               double lo, double hi, double tolerance,
                               int max_iterations = 200) {
  for (int it = 0; it < max_iterations && (hi - lo) > tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace bhc::numeric
