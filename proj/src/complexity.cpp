#include "bhc/complexity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bhc/errors.hpp"
#include "bhc/parallel.hpp"
#include "bhc/quadratic.hpp"

namespace bhc {

std::vector<double> mode_complexities(const BogoliubovResult& result,
                                      const std::vector<double>& kappas) {
  std::vector<double> out(kappas.size(), 0.0);
  for (std::size_t j = 0; j < kappas.size(); ++j)
    for (int a = 0; a < result.modes(); ++a)
      if (!result.zero_mode[a]) out[j] += std::pow(std::abs(result.thetas(a)), kappas[j]);
  return out;
}

int ComplexityReport::kappa_index(double kappa) const {
  for (std::size_t j = 0; j < kappas.size(); ++j)
    if (kappas[j] == kappa) return static_cast<int>(j);
  return -1;
}

double ComplexityReport::c_qc() const {
  const int j = kappa_index(2.0);
  if (j < 0) throw InvalidArgument("c_qc requires kappa = 2 in the report");
  return std::sqrt(totals[j]);
}

namespace {

void check_kappas(const std::vector<double>& kappas) {
  if (kappas.empty()) throw InvalidArgument("at least one kappa is required");
  for (double k : kappas)
    if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("kappa values must be positive");
}

std::string point_context(const ModelParams& p, double eta) {
  std::ostringstream s;
  s.precision(12);
  s << "t=" << p.t << ", mu_bar=" << p.mu_bar << ", eta_k=" << eta;
  return s.str();
}

}  // namespace

ComplexityReport phase_point_complexity(const ModelParams& params,
                                        const ComplexitySettings& settings) {
  params.validate();
  const MomentumGrid grid(params.d, params.extents);
  const auto classes = eta_classes(grid);
  const auto mfs = self_consistent_phi(params, settings.mean_field);
  return phase_point_complexity(params, mfs, grid, classes, settings);
}

ComplexityReport phase_point_complexity(const ModelParams& params, const MeanFieldSolution& mfs,
                                        const MomentumGrid& grid, const EtaClasses& classes,
                                        const ComplexitySettings& settings) {
  check_kappas(settings.kappas);
  const auto nk = settings.kappas.size();
  const auto nclass = static_cast<std::int64_t>(classes.values.size());
  std::vector<BogoliubovResult> results(static_cast<std::size_t>(nclass));

  parallel_for(nclass, settings.workers, [&](std::int64_t c) {
    const auto blk = build_mode_block_eta(mfs, params, classes.values[c]);
    try {
      results[c] = diagonalize_block(blk, settings.bogoliubov);
    } catch (const InstabilityError& e) {
      throw InstabilityError(std::string(e.what()) + " at " + point_context(params, blk.eta));
    }
  });

  ComplexityReport rep;
  rep.params = params;
  rep.kappas = settings.kappas;
  rep.sites = grid.size();
  rep.distinct_blocks = nclass;
  rep.phi = mfs.phi;
  rep.free_energy = mfs.free_energy;
  rep.energies = mfs.energies;
  rep.totals.assign(nk, 0.0);
  const int flavors = params.n_trunc - 1;
  rep.per_flavor.assign(nk, std::vector<double>(flavors, 0.0));
  rep.min_omega = std::numeric_limits<double>::infinity();

  // Sequential reduction in ascending-eta class order.
  std::vector<std::vector<double>> class_sums(static_cast<std::size_t>(nclass));
  for (std::int64_t c = 0; c < nclass; ++c) {
    const auto& r = results[c];
    const double mult = static_cast<double>(classes.multiplicity[c]);
    class_sums[c] = mode_complexities(r, settings.kappas);
    for (std::size_t j = 0; j < nk; ++j) {
      rep.totals[j] += mult * class_sums[c][j];
      for (int a = 0; a < flavors; ++a)
        if (!r.zero_mode[a])
          rep.per_flavor[j][a] += mult * std::pow(std::abs(r.thetas(a)), settings.kappas[j]);
    }
    rep.zero_modes_dropped += classes.multiplicity[c] * r.zero_mode_count;
    for (int a = 0; a < flavors; ++a)
      if (!r.zero_mode[a]) rep.min_omega = std::min(rep.min_omega, r.omegas(a));
  }
  rep.densities.resize(nk);
  for (std::size_t j = 0; j < nk; ++j)
    rep.densities[j] = rep.totals[j] / static_cast<double>(rep.sites);

  // eta = 1 is the largest class value and belongs to k = 0 only.
  const auto& gamma = results.back();
  rep.gamma_omegas = gamma.omegas;
  rep.gamma_zero_modes = gamma.zero_mode;

  if (settings.keep_per_mode) {
    rep.per_mode.assign(nk, std::vector<double>(static_cast<std::size_t>(grid.size())));
    for (std::int64_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = 0; j < nk; ++j)
        rep.per_mode[j][i] = class_sums[classes.class_of_point[i]][j];
  }
  return rep;
}

ScanAxis parse_scan_axis(const std::string& name) {
  if (name == "t") return ScanAxis::t;
  if (name == "mu" || name == "mu_bar") return ScanAxis::mu;
  throw InvalidArgument("unknown scan axis '" + name + "' (expected t or mu)");
}

std::string to_string(ScanAxis axis) { return axis == ScanAxis::t ? "t" : "mu"; }

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw InvalidArgument("scan needs at least one step");
  std::vector<double> xs(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    xs[i] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  return xs;
}

std::vector<SweepPoint> sweep(ScanAxis axis, double lo, double hi, int steps,
                              const ModelParams& base, const ComplexitySettings& settings) {
  return sweep_points(axis, linspace(lo, hi, steps), base, settings);
}

std::vector<SweepPoint> sweep_points(ScanAxis axis, const std::vector<double>& xs,
                                     const ModelParams& base, const ComplexitySettings& settings) {
  base.validate();
  check_kappas(settings.kappas);
  const MomentumGrid grid(base.d, base.extents);
  const auto classes = eta_classes(grid);
  std::vector<SweepPoint> out;
  for (double x : xs) {
    SweepPoint pt;
    pt.x = x;
    ModelParams p = base;
    (axis == ScanAxis::t ? p.t : p.mu_bar) = x;
    try {
      p.validate();
      const auto mfs = self_consistent_phi(p, settings.mean_field);
      pt.report = phase_point_complexity(p, mfs, grid, classes, settings);
      pt.ok = true;
    } catch (const Error& e) {
      pt.error = std::string(e.kind()) + ": " + e.what();
      pt.report.params = p;
    }
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<BranchTrace> momentum_branch_scan(const ModelParams& base,
                                              const std::vector<double>& t_values,
                                              const std::vector<std::vector<double>>& momenta,
                                              const std::vector<double>& kappas, bool snap) {
  base.validate();
  check_kappas(kappas);
  const MomentumGrid grid(base.d, base.extents);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<BranchTrace> traces;
  for (const auto& k : momenta) {
    if (static_cast<int>(k.size()) != base.d)
      throw InvalidArgument("branch momentum has wrong dimension");
    BranchTrace tr;
    for (int j = 0; j < base.d; ++j) {
      const int e = base.extents[j];
      const double exact = k[j] * e / two_pi;
      const long r = std::lround(exact);
      if (!snap && std::abs(exact - static_cast<double>(r)) > 1e-9)
        throw InvalidArgument("branch momentum is not on the grid");
      tr.k_index.push_back(static_cast<int>(((r % e) + e) % e));
    }
    for (int j = 0; j < base.d; ++j) tr.k.push_back(two_pi * tr.k_index[j] / base.extents[j]);
    tr.values.assign(kappas.size(), {});
    traces.push_back(std::move(tr));
  }
  for (double t : t_values) {
    ModelParams p = base;
    p.t = t;
    const auto mfs = self_consistent_phi(p);
    for (auto& tr : traces) {
      const auto blk = build_mode_block_eta(mfs, p, eta_from_indices(tr.k_index, p.extents));
      const auto vals = mode_complexities(diagonalize_block(blk), kappas);
      for (std::size_t j = 0; j < kappas.size(); ++j) tr.values[j].push_back(vals[j]);
    }
  }
  return traces;
}

FlavorTraces flavor_breakdown(const std::vector<SweepPoint>& points) {
  FlavorTraces out;
  for (const auto& pt : points) {
    if (!pt.ok) continue;
    const auto& pf = pt.report.per_flavor;
    if (out.values.empty()) {
      out.values.assign(pf.size(), std::vector<std::vector<double>>(pf.empty() ? 0 : pf[0].size()));
    }
    if (pf.size() != out.values.size())
      throw InvalidArgument("flavor_breakdown: inconsistent kappa lists across points");
    out.x.push_back(pt.x);
    for (std::size_t j = 0; j < pf.size(); ++j)
      for (std::size_t a = 0; a < pf[j].size(); ++a) out.values[j][a].push_back(pf[j][a] / pt.report.sites);
  }
  return out;
}

}  // namespace bhc
