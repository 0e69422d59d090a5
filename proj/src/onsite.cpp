#include "bhc/onsite.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>

#include "bhc/errors.hpp"
#include "bhc/numeric.hpp"

namespace bhc {

long long ModelParams::site_count() const {
  long long n = 1;
  for (int e : extents) n *= e;
  return n;
}

void ModelParams::validate() const {
  std::ostringstream err;
  if (d < 1) err << "dimension must be >= 1 (got " << d << "); ";
  if (static_cast<int>(extents.size()) != d)
    err << "expected " << d << " lattice extents, got " << extents.size() << "; ";
  for (int e : extents)
    if (e < 2) err << "lattice extents must be >= 2 (got " << e << "); ";
  if (n_trunc < 2) err << "truncation n must be >= 2 (got " << n_trunc << "); ";
  if (!(t >= 0.0) || !std::isfinite(t)) err << "hopping t must be finite and >= 0; ";
  if (!std::isfinite(mu_bar)) err << "mu_bar must be finite; ";
  const auto msg = err.str();
  if (!msg.empty()) throw InvalidArgument("invalid model parameters: " + msg);
}

LadderOperators ladder_operators(int n) {
  if (n < 2) throw InvalidArgument("invalid truncation: n must be >= 2");
  LadderOperators ops;
  ops.b = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m + 1 < n; ++m) ops.b(m, m + 1) = std::sqrt(static_cast<double>(m + 1));
  ops.b_dagger = ops.b.transpose();
  ops.number = Eigen::VectorXd::LinSpaced(n, 0.0, n - 1.0).asDiagonal();
  return ops;
}

namespace {

Eigen::MatrixXd onsite_hamiltonian(const ModelParams& p, double phi) {
  const int n = p.n_trunc;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m) h(m, m) = 0.5 * m * (m - 1.0) - p.mu_bar * m;
  const double hop = p.t * phi;
  for (int m = 0; m + 1 < n; ++m) {
    const double v = -hop * std::sqrt(static_cast<double>(m + 1));
    h(m, m + 1) = v;
    h(m + 1, m) = v;
  }
  return h;
}

// Replaces a degenerate block of eigenvectors by the Gram-Schmidt image of
// the Fock basis vectors projected onto it, taken in index order.
void canonicalize_block(Eigen::MatrixXd& states, int first, int size) {
  const int n = static_cast<int>(states.rows());
  const Eigen::MatrixXd q = states.middleCols(first, size);
  Eigen::MatrixXd basis(n, size);
  int found = 0;
  for (int j = 0; j < n && found < size; ++j) {
    Eigen::VectorXd v = q * q.row(j).transpose();
    for (int c = 0; c < found; ++c) v -= basis.col(c).dot(v) * basis.col(c);
    const double norm = v.norm();
    if (norm > 1e-8) basis.col(found++) = v / norm;
  }
  states.middleCols(first, size) = basis;
}

void fix_signs(Eigen::MatrixXd& states) {
  for (int c = 0; c < states.cols(); ++c) {
    Eigen::Index idx = 0;
    states.col(c).cwiseAbs().maxCoeff(&idx);
    if (states(idx, c) < 0.0) states.col(c) *= -1.0;
  }
}

constexpr double kStabilityProbe = 1e-7;

double ground_b_expectation(const ModelParams& p, double phi) {
  const auto spec = solve_onsite(p, phi);
  const Eigen::VectorXd g = spec.states.col(0);
  double acc = 0.0;
  for (int m = 0; m + 1 < p.n_trunc; ++m)
    acc += g(m) * std::sqrt(static_cast<double>(m + 1)) * g(m + 1);
  return acc;
}

}  // namespace

OnsiteSpectrum solve_onsite(const ModelParams& params, double phi) {
  if (phi < 0.0) throw InvalidArgument("solve_onsite: phi must be >= 0 (gauge-fixed)");
  if (params.n_trunc < 2) throw InvalidArgument("invalid truncation: n must be >= 2");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(onsite_hamiltonian(params, phi));
  OnsiteSpectrum out{es.eigenvalues(), es.eigenvectors()};
  const int n = params.n_trunc;
  for (int i = 0; i < n;) {
    int j = i + 1;
    const double scale = std::max(1.0, std::abs(out.energies(i)));
    while (j < n && out.energies(j) - out.energies(i) <= 1e-12 * scale) ++j;
    if (j - i > 1) canonicalize_block(out.states, i, j - i);
    i = j;
  }
  fix_signs(out.states);
  return out;
}

double free_energy(const ModelParams& params, double phi) {
  const auto spec = solve_onsite(params, phi);
  return spec.energies(0) + params.t * phi * phi;
}

MeanFieldSolution mean_field_at(const ModelParams& params, double phi) {
  const auto spec = solve_onsite(params, phi);
  const auto ops = ladder_operators(params.n_trunc);
  MeanFieldSolution s;
  s.phi = phi;
  s.energies = spec.energies;
  s.states = spec.states;
  s.b_dagger_matrix = spec.states.transpose() * ops.b_dagger * spec.states;
  s.free_energy = spec.energies(0) + params.t * phi * phi;
  s.converged = true;
  return s;
}

namespace {

struct Candidate {
  double phi;
  double f;
  bool converged;
  int iterations;
};

Candidate damped_fixed_point(const ModelParams& p, const SelfConsistencyOptions& o) {
  double phi = o.initial_phi;
  double prev_step = 0.0;
  int slow = 0;
  for (int it = 1; it <= o.max_iterations; ++it) {
    const double step = o.damping * (ground_b_expectation(p, phi) - phi);
    phi = std::max(0.0, phi + step);
    if (std::abs(step) < o.tolerance) return {phi, free_energy(p, phi), true, it};
    // Stagnation: the contraction ratio approaches one near a continuous
    // transition and the iteration would crawl; hand over to the minimizer.
    if (it > 20 && prev_step != 0.0 && std::abs(step / prev_step) > 0.995) {
      if (++slow > 10) return {phi, free_energy(p, phi), false, it};
    } else {
      slow = 0;
    }
    prev_step = step;
  }
  return {phi, free_energy(p, phi), false, o.max_iterations};
}

// Polishes a minimizer of F by solving <b>(phi) = phi on a bracket grown
// around the estimate. Returns the estimate unchanged when no sign change of
// the residual is found.
double polish_root(const ModelParams& p, double estimate, double phi_max) {
  auto residual = [&](double x) { return ground_b_expectation(p, x) - x; };
  const double floor = 1e-12;
  double w = std::max(1e-9, 1e-6 * estimate);
  for (int grow = 0; grow < 80; ++grow, w *= 2.0) {
    const double lo = std::max(floor, estimate - w);
    const double hi = std::min(phi_max, estimate + w);
    const double rlo = residual(lo);
    const double rhi = residual(hi);
    if (rlo == 0.0) return lo;
    if (rhi == 0.0) return hi;
    if (rlo > 0.0 && rhi < 0.0) {
      boost::uintmax_t max_iter = 200;
      auto tol = boost::math::tools::eps_tolerance<double>(52);
      auto r = boost::math::tools::toms748_solve(residual, lo, hi, rlo, rhi, tol, max_iter);
      return 0.5 * (r.first + r.second);
    }
    if (lo <= floor && hi >= phi_max) break;
  }
  return estimate;
}

Candidate minimize_functional(const ModelParams& p, const SelfConsistencyOptions& o) {
  auto f = [&](double x) { return free_energy(p, x); };
  auto residual = [&](double x) { return ground_b_expectation(p, x) - x; };
  const int steps = 150;
  const double h = o.phi_max / steps;
  int best = 0;
  double best_f = f(0.0);
  for (int i = 1; i <= steps; ++i) {
    const double v = f(i * h);
    if (v < best_f) {
      best_f = v;
      best = i;
    }
  }
  if (best == 0) {
    // F is too flat near a continuous transition for the scan to resolve a
    // small minimizer; the sign of the residual at small phi decides.
    const double probe = kStabilityProbe;
    const double r_lo = residual(probe);
    if (r_lo <= 0.0) return {0.0, best_f, true, 0};
    double hi = h;
    double r_hi = residual(hi);
    while (r_hi >= 0.0 && hi < o.phi_max) r_hi = residual(hi = std::min(o.phi_max, 2 * hi));
    if (r_hi >= 0.0) return {hi, f(hi), false, 0};
    boost::uintmax_t max_iter = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    auto r = boost::math::tools::toms748_solve(residual, probe, hi, r_lo, r_hi, tol, max_iter);
    const double phi = 0.5 * (r.first + r.second);
    return {phi, f(phi), true, 0};
  }
  const double a = std::max(0.0, (best - 1) * h);
  const double b = std::min(o.phi_max, (best + 1) * h);
  const auto m = numeric::golden_section_min(f, a, b, 1e-10);
  const double phi = polish_root(p, m.x, o.phi_max);
  return {phi, f(phi), true, 0};
}

}  // namespace

MeanFieldSolution self_consistent_phi(const ModelParams& params,
                                      const SelfConsistencyOptions& opts) {
  params.validate();
  if (params.t == 0.0) {
    auto s = mean_field_at(params, 0.0);
    s.iterations = 0;
    return s;
  }

  // phi = 0 is always a fixed point; it is a minimum of F only when <b>
  // grows slower than phi.
  const bool zero_stable = ground_b_expectation(params, kStabilityProbe) <= kStabilityProbe;
  const Candidate zero{0.0, free_energy(params, 0.0), true, 0};
  Candidate fp = damped_fixed_point(params, opts);
  if (!fp.converged) {
    fp = minimize_functional(params, opts);
  } else if (fp.phi > opts.phi_zero_tolerance) {
    fp.phi = polish_root(params, fp.phi, opts.phi_max);
    fp.f = free_energy(params, fp.phi);
  }
  if (!fp.converged && zero_stable) fp = zero;
  if (!fp.converged) throw ConvergenceError("self-consistency failed", fp.phi);

  Candidate best = fp;
  if (zero_stable && zero.f <= fp.f) best = zero;
  if (best.phi < opts.phi_zero_tolerance) best = zero;

  auto s = mean_field_at(params, best.phi);
  s.iterations = fp.iterations;
  const double residual = std::abs(ground_b_expectation(params, best.phi) - best.phi);
  s.converged = residual <= 1e-10;
  if (!s.converged)
    throw ConvergenceError("self-consistency residual too large", best.phi);
  return s;
}

double locate_lobe_boundary(ModelParams params, double mu_bar, double tolerance,
                            double t_lo, double t_hi) {
  params.mu_bar = mu_bar;
  const SelfConsistencyOptions opts;
  auto superfluid = [&](double t) {
    params.t = t;
    return self_consistent_phi(params, opts).phi > opts.phi_zero_tolerance;
  };
  if (superfluid(t_lo) || !superfluid(t_hi)) {
    std::ostringstream msg;
    msg << "no Mott/superfluid sign change for mu_bar=" << mu_bar << " in t-bracket ["
        << t_lo << ", " << t_hi << "]";
    throw BracketError(msg.str());
  }
  return numeric::bisect_predicate(superfluid, t_lo, t_hi, tolerance);
}

LobeTip locate_tip(ModelParams params, int lobe, double mu_tolerance, double t_tolerance) {
  if (lobe < 1) throw InvalidArgument("lobe index must be >= 1");
  const double lo = lobe - 1.0 + 1e-3;
  const double hi = lobe - 1e-3;
  auto neg_boundary = [&](double mu) {
    return -locate_lobe_boundary(params, mu, t_tolerance, 0.0, 0.5);
  };
  const auto m = numeric::golden_section_min(neg_boundary, lo, hi, mu_tolerance);
  return {-m.value, m.x};
}

}  // namespace bhc
