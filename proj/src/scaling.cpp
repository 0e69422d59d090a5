#include "bhc/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bhc/errors.hpp"
#include "bhc/quadratic.hpp"

namespace bhc {

namespace {

GapPoint to_gap_point(const SweepPoint& sp) {
  GapPoint g;
  g.x = sp.x;
  g.ok = sp.ok;
  g.error = sp.error;
  if (sp.ok) {
    g.min_omega = sp.report.min_omega;
    g.gamma_omegas = sp.report.gamma_omegas;
    g.gamma_zero_modes = sp.report.gamma_zero_modes;
    g.zero_modes = sp.report.zero_modes_dropped;
  }
  return g;
}

ComplexitySettings light(ComplexitySettings s) {
  s.keep_per_mode = false;
  s.kappas = {1.0};
  return s;
}

}  // namespace

std::vector<GapPoint> gap_scan(const ModelParams& base, ScanAxis axis, double lo, double hi,
                               int steps, const ComplexitySettings& settings) {
  return gap_scan_points(base, axis, linspace(lo, hi, steps), settings);
}

std::vector<GapPoint> gap_scan_points(const ModelParams& base, ScanAxis axis,
                                      const std::vector<double>& xs,
                                      const ComplexitySettings& settings) {
  std::vector<GapPoint> out;
  for (const auto& sp : sweep_points(axis, xs, base, light(settings))) out.push_back(to_gap_point(sp));
  return out;
}

std::vector<SpectrumSample> spectrum_along(const ModelParams& params, const MeanFieldSolution& mfs,
                                           const std::vector<KPoint>& path,
                                           const BogoliubovOptions& opts) {
  std::vector<SpectrumSample> out;
  out.reserve(path.size());
  for (const auto& kp : path) {
    const double e = kp.index.empty() ? eta(kp.k) : eta_from_indices(kp.index, params.extents);
    auto blk = build_mode_block_eta(mfs, params, e);
    blk.k = kp.k;
    const auto r = diagonalize_block(blk, opts);
    out.push_back({kp.k, r.omegas, r.zero_mode});
  }
  return out;
}

SpectrumClass classify_spectrum(const ModelParams& params, double gapless_tol,
                                const ComplexitySettings& settings) {
  const auto rep = phase_point_complexity(params, light(settings));
  SpectrumClass sc;
  sc.gamma_omegas = rep.gamma_omegas;
  sc.gamma_zero_modes = rep.gamma_zero_modes;
  sc.min_omega = rep.min_omega;
  sc.phi = rep.phi;
  for (int a = 0; a < rep.gamma_omegas.size(); ++a)
    if (rep.gamma_zero_modes[a] || rep.gamma_omegas(a) < gapless_tol) ++sc.gapless_flavors;
  return sc;
}

PowerLaw power_law_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("power law fit: size mismatch");
  const auto n = static_cast<int>(x.size());
  if (n < 2) throw InvalidArgument("power law fit needs at least two points");
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw DomainError("power law fit needs positive data");
    A(i, 0) = 1.0;
    A(i, 1) = std::log(x[i]);
    b(i) = std::log(y[i]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 2) throw CollinearityError("power law fit: all abscissae are equal");
  const Eigen::VectorXd sol = qr.solve(b);
  PowerLaw law;
  law.prefactor = std::exp(sol(0));
  law.exponent = sol(1);
  law.points = n;
  if (n > 2) {
    const double s2 = (A * sol - b).squaredNorm() / (n - 2);
    const Eigen::MatrixXd cov = s2 * (A.transpose() * A).inverse();
    law.exponent_error = std::sqrt(std::max(0.0, cov(1, 1)));
  }
  return law;
}

DispersionFit dispersion_exponent(const ModelParams& params, int flavor, double k_min,
                                  double k_max, const SelfConsistencyOptions& mf,
                                  const BogoliubovOptions& opts) {
  params.validate();
  if (flavor < 0 || flavor >= params.n_trunc - 1) throw InvalidArgument("flavor out of range");
  if (!(0.0 < k_min && k_min < k_max)) throw InvalidArgument("dispersion window must satisfy 0 < k_min < k_max");
  const auto mfs = self_consistent_phi(params, mf);
  const int L = params.extents.back();
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<KPoint> path;
  path.push_back({std::vector<double>(params.d, 0.0), std::vector<int>(params.d, 0)});
  for (int j = 1; j <= L / 2; ++j) {
    const double k = two_pi * j / L;
    if (k < k_min * (1 - 1e-12) || k > k_max * (1 + 1e-12)) continue;
    KPoint kp{std::vector<double>(params.d, 0.0), std::vector<int>(params.d, 0)};
    kp.k.back() = k;
    kp.index.back() = j;
    path.push_back(kp);
  }
  if (path.size() < 5) throw InvalidArgument("degenerate dispersion window: fewer than 4 grid momenta");
  const auto spec = spectrum_along(params, mfs, path, opts);

  DispersionFit fit;
  fit.omega_at_zero = spec[0].zero_mode[flavor] ? 0.0 : spec[0].omegas(flavor);
  for (std::size_t i = 1; i < spec.size(); ++i) {
    fit.k.push_back(spec[i].k.back());
    fit.domega.push_back(spec[i].omegas(flavor) - fit.omega_at_zero);
  }
  fit.law = power_law_fit(fit.k, fit.domega);
  return fit;
}

FitModel parse_fit_model(const std::string& name) {
  if (name == "log1") return FitModel::log1;
  if (name == "log2") return FitModel::log2;
  if (name == "quad") return FitModel::quad;
  if (name == "power32") return FitModel::power32;
  if (name == "purepow") return FitModel::purepow;
  throw InvalidArgument("unknown fit model '" + name + "'");
}

std::string to_string(FitModel model) {
  switch (model) {
    case FitModel::log1: return "log1";
    case FitModel::log2: return "log2";
    case FitModel::quad: return "quad";
    case FitModel::power32: return "power32";
    case FitModel::purepow: return "purepow";
  }
  return "?";
}

std::string to_string(Side side) { return side == Side::below ? "below" : "above"; }

std::optional<double> FitResult::log10_coefficient() const {
  const double l10 = std::log(10.0);
  if (model == FitModel::log1) return coefficients.at(0) * l10;
  if (model == FitModel::log2) return coefficients.at(0) * l10 * l10;
  return std::nullopt;
}

FitResult fit_scaling(const std::vector<double>& x, const std::vector<double>& c,
                      const FitSpec& spec, std::optional<double> c_critical) {
  if (x.size() != c.size()) throw InvalidArgument("fit: x and c differ in length");
  if (!(0.0 < spec.window_lo && spec.window_lo < spec.window_hi))
    throw InvalidArgument("fit window must satisfy 0 < lo < hi");
  if (x.empty()) throw InvalidArgument("fit: empty scan");

  double cc;
  if (c_critical) {
    cc = *c_critical;
  } else {
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      if (std::abs(x[i] - spec.critical_value) < std::abs(x[best] - spec.critical_value)) best = i;
    cc = c[best];
  }

  std::vector<double> ds, dcs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double delta = x[i] - spec.critical_value;
    if (spec.side == Side::below ? delta >= 0.0 : delta <= 0.0) continue;
    const double a = std::abs(delta);
    // Relative slack so that log-spaced window edges survive the round trip through x.
    if (a < spec.window_lo * (1 - 1e-9) || a > spec.window_hi * (1 + 1e-9)) continue;
    ds.push_back(a);
    dcs.push_back(cc - c[i]);
  }
  const int n = static_cast<int>(ds.size());
  if (n < 5) throw InvalidArgument("fit needs at least 5 points in the window, got " + std::to_string(n));

  FitResult res;
  res.model = spec.model;
  res.side = spec.side;
  res.window_lo = spec.window_lo;
  res.window_hi = spec.window_hi;
  res.points = n;
  res.c_critical = cc;

  if (spec.model == FitModel::purepow) {
    const auto law = power_law_fit(ds, dcs);
    res.names = {"A", "p"};
    res.coefficients = {law.prefactor, law.exponent};
    res.standard_errors = {std::numeric_limits<double>::quiet_NaN(), law.exponent_error};
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = dcs[i] - law.prefactor * std::pow(ds[i], law.exponent);
      ss += r * r;
    }
    res.residual_rms = std::sqrt(ss / n);
    return res;
  }

  int cols = spec.model == FitModel::power32 ? 2 : 1;
  Eigen::MatrixXd A(n, cols);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double d = ds[i];
    switch (spec.model) {
      case FitModel::log1: A(i, 0) = -d * std::log(d); break;
      case FitModel::log2: A(i, 0) = d * std::log(d) * std::log(d); break;
      case FitModel::quad: A(i, 0) = d * d; break;
      case FitModel::power32:
        A(i, 0) = d;
        A(i, 1) = d * std::sqrt(d);
        break;
      case FitModel::purepow: break;
    }
    b(i) = dcs[i];
  }
  switch (spec.model) {
    case FitModel::log1:
    case FitModel::log2: res.names = {"upsilon"}; break;
    case FitModel::quad: res.names = {"D"}; break;
    case FitModel::power32: res.names = {"a", "b"}; break;
    case FitModel::purepow: break;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) throw CollinearityError("fit basis functions are collinear on the window");
  const Eigen::VectorXd sol = qr.solve(b);
  const Eigen::VectorXd r = A * sol - b;
  res.residual_rms = std::sqrt(r.squaredNorm() / n);
  const Eigen::MatrixXd ata_inv = (A.transpose() * A).inverse();
  const double s2 = n > cols ? r.squaredNorm() / (n - cols) : 0.0;
  for (int j = 0; j < cols; ++j) {
    res.coefficients.push_back(sol(j));
    res.standard_errors.push_back(std::sqrt(std::max(0.0, s2 * ata_inv(j, j))));
  }
  return res;
}

std::pair<double, double> default_fit_window(int d) {
  if (d == 3) return {5e-3, 5e-2};
  return {2e-3, 2e-2};
}

NuCheck nu_consistency(const FitResult& fit, int d) {
  if (fit.model != FitModel::purepow) throw InvalidArgument("nu_consistency needs a purepow fit");
  NuCheck out;
  out.p_hat = fit.coefficients.at(1);
  out.nu_d = 0.5 * d;
  out.deviation = out.p_hat - out.nu_d;
  return out;
}

}  // namespace bhc
