#include "bhc/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "bhc/complexity.hpp"
#include "bhc/errors.hpp"
#include "bhc/exact_oracle.hpp"
#include "bhc/gaussian_ref.hpp"
#include "bhc/holo.hpp"
#include "bhc/lattice.hpp"
#include "bhc/scaling.hpp"

#ifndef BHC_VERSION
#define BHC_VERSION "0.0.0"
#endif

namespace bhc::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kSubcommands{"meanfield", "spectrum", "sweep", "branches",
                                            "flavors",   "gap",      "fit",   "gaussian-ref",
                                            "holo",      "oracle",   "verify"};

std::vector<double> split_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("not a number: '" + item + "'");
    }
  }
  return out;
}

std::pair<double, double> as_range(const std::vector<double>& v, const char* what) {
  if (v.size() != 2) throw InvalidArgument(std::string(what) + " needs exactly two values lo,hi");
  return {v[0], v[1]};
}

template <class T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument("config key '" + key + "' has the wrong type");
  }
}

std::vector<double> numbers_or_csv(const json& v, const std::string& key) {
  if (v.is_string()) return split_doubles(v.get<std::string>());
  if (v.is_number()) return {v.get<double>()};
  return get_as<std::vector<double>>(v, key);
}

struct CsvFile {
  std::string name;
  std::ostringstream body;

  void header(const std::string& subcommand, const std::string& echo,
              const std::vector<std::string>& columns) {
    body << "# bhc " << BHC_VERSION << " " << subcommand << "\n";
    body << "# config " << echo << "\n";
    row(columns);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) body << (i ? "," : "") << cells[i];
    body << "\n";
  }
};

struct PointRecord {
  double x = 0.0;
  bool ok = true;
  std::string error;
  long long zero_modes = 0;
};

struct RunOutput {
  std::vector<CsvFile> files;
  std::vector<PointRecord> points;
  json extra = json::object();
};

std::string fmt(double x) { return format_number(x); }
std::string fmt_int(long long x) { return std::to_string(x); }

ModelParams model_of(const RunConfig& cfg) {
  ModelParams p;
  p.d = static_cast<int>(cfg.lattice.size());
  p.extents = cfg.lattice;
  p.n_trunc = cfg.n_trunc;
  return p;
}

ComplexitySettings settings_of(const RunConfig& cfg) {
  ComplexitySettings s;
  s.kappas = cfg.kappas;
  s.workers = cfg.workers;
  s.bogoliubov = cfg.bogoliubov;
  s.mean_field = cfg.mean_field;
  return s;
}

// (t, mu) of the run; absent coordinates come from the located lobe tip.
std::pair<double, double> coordinates(const RunConfig& cfg, const ModelParams& p) {
  if (cfg.t && cfg.mu) return {*cfg.t, *cfg.mu};
  const auto tip = locate_tip(p);
  return {cfg.t.value_or(tip.t_c), cfg.mu.value_or(tip.mu_bar_c)};
}

std::string kappa_label(double k) { return "c_" + format_number(k); }

// ---- subcommands ----------------------------------------------------------

RunOutput run_meanfield(const RunConfig& cfg, const std::string& echo) {
  ModelParams p = model_of(cfg);
  std::tie(p.t, p.mu_bar) = coordinates(cfg, p);
  p.validate();
  const auto mfs = self_consistent_phi(p, cfg.mean_field);
  RunOutput out;
  CsvFile mf{"meanfield.csv", {}};
  mf.header("meanfield", echo, {"t", "mu_bar", "phi", "free_energy", "converged", "iterations"});
  mf.row({fmt(p.t), fmt(p.mu_bar), fmt(mfs.phi), fmt(mfs.free_energy), mfs.converged ? "1" : "0",
          fmt_int(mfs.iterations)});
  CsvFile lv{"levels.csv", {}};
  lv.header("meanfield", echo, {"alpha", "epsilon", "B_alpha0", "B_0alpha"});
  for (int a = 0; a < mfs.energies.size(); ++a)
    lv.row({fmt_int(a), fmt(mfs.energies(a)), fmt(mfs.b_dagger_matrix(a, 0)), fmt(mfs.b_dagger_matrix(0, a))});
  CsvFile bm{"bmatrix.csv", {}};
  bm.header("meanfield", echo, {"beta", "alpha", "B"});
  for (int b = 0; b < mfs.b_dagger_matrix.rows(); ++b)
    for (int a = 0; a < mfs.b_dagger_matrix.cols(); ++a)
      bm.row({fmt_int(b), fmt_int(a), fmt(mfs.b_dagger_matrix(b, a))});
  out.files.push_back(std::move(mf));
  out.files.push_back(std::move(lv));
  out.files.push_back(std::move(bm));
  out.points.push_back({p.t, true, "", 0});
  return out;
}

RunOutput run_spectrum(const RunConfig& cfg, const std::string& echo) {
  ModelParams p = model_of(cfg);
  std::tie(p.t, p.mu_bar) = coordinates(cfg, p);
  p.validate();
  const double two_pi = 2.0 * std::numbers::pi;
  auto ends = cfg.path;
  if (ends.empty()) {
    ends = {std::vector<double>(p.d, 0.0), std::vector<double>(p.d, 0.0)};
    ends[1].back() = 0.5;
  }
  for (auto& e : ends) {
    if (static_cast<int>(e.size()) != p.d) throw InvalidArgument("path point has the wrong dimension");
    for (auto& x : e) x *= two_pi;
  }
  const MomentumGrid grid(p.d, p.extents);
  const auto path = k_path(ends, cfg.path_samples, &grid);
  const auto mfs = self_consistent_phi(p, cfg.mean_field);
  const auto spec = spectrum_along(p, mfs, path, cfg.bogoliubov);

  RunOutput out;
  CsvFile f{"spectrum.csv", {}};
  std::vector<std::string> cols{"index"};
  for (int j = 0; j < p.d; ++j) cols.push_back("k_" + std::to_string(j + 1));
  for (int a = 1; a < p.n_trunc; ++a) cols.push_back("omega_" + std::to_string(a));
  cols.push_back("zero_modes");
  f.header("spectrum", echo, cols);
  long long zm_total = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    std::vector<std::string> row{fmt_int(static_cast<long long>(i))};
    for (double k : spec[i].k) row.push_back(fmt(k / two_pi));
    int zm = 0;
    for (int a = 0; a < spec[i].omegas.size(); ++a) {
      row.push_back(fmt(spec[i].zero_mode[a] ? 0.0 : spec[i].omegas(a)));
      zm += spec[i].zero_mode[a];
    }
    row.push_back(fmt_int(zm));
    zm_total += zm;
    f.row(row);
  }
  out.files.push_back(std::move(f));
  out.points.push_back({p.t, true, "", zm_total});
  out.extra["phi"] = mfs.phi;
  return out;
}

std::pair<double, double> scan_range_or(const RunConfig& cfg, double lo, double hi) {
  return cfg.scan_range.value_or(std::make_pair(lo, hi));
}

struct ScanSetup {
  ModelParams base;
  ScanAxis axis;
  std::pair<double, double> range;
};

ScanSetup scan_setup(const RunConfig& cfg) {
  ScanSetup s;
  s.base = model_of(cfg);
  s.axis = parse_scan_axis(cfg.scan_axis);
  // Only the fixed coordinate is needed.
  RunConfig c = cfg;
  if (s.axis == ScanAxis::t) c.t = c.t.value_or(0.0);
  else c.mu = c.mu.value_or(0.0);
  std::tie(s.base.t, s.base.mu_bar) = coordinates(c, s.base);
  s.range = s.axis == ScanAxis::t ? scan_range_or(cfg, 0.0, 0.3) : scan_range_or(cfg, 0.0, 1.0);
  s.base.validate();
  return s;
}

RunOutput run_sweep(const RunConfig& cfg, const std::string& echo, bool flavors) {
  const auto s = scan_setup(cfg);
  auto settings = settings_of(cfg);
  settings.keep_per_mode = false;
  const auto pts = sweep(s.axis, s.range.first, s.range.second, cfg.scan_steps, s.base, settings);

  RunOutput out;
  const bool has2 = std::find(cfg.kappas.begin(), cfg.kappas.end(), 2.0) != cfg.kappas.end();
  if (!flavors) {
    CsvFile f{"sweep.csv", {}};
    std::vector<std::string> cols{"x", "t", "mu_bar", "status", "phi"};
    for (double k : cfg.kappas) cols.push_back(kappa_label(k));
    if (has2) cols.push_back("C_QC");
    for (const char* c : {"zero_modes", "min_omega", "distinct_blocks"}) cols.push_back(c);
    f.header("sweep", echo, cols);
    for (const auto& pt : pts) {
      const auto& r = pt.report;
      std::vector<std::string> row{fmt(pt.x), fmt(r.params.t), fmt(r.params.mu_bar), pt.ok ? "ok" : "failed"};
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.push_back(fmt(pt.ok ? r.phi : nan));
      for (std::size_t j = 0; j < cfg.kappas.size(); ++j) row.push_back(fmt(pt.ok ? r.densities[j] : nan));
      if (has2) row.push_back(fmt(pt.ok ? r.c_qc() : nan));
      row.push_back(fmt_int(pt.ok ? r.zero_modes_dropped : 0));
      row.push_back(fmt(pt.ok ? r.min_omega : nan));
      row.push_back(fmt_int(pt.ok ? r.distinct_blocks : 0));
      f.row(row);
    }
    out.files.push_back(std::move(f));
  } else {
    const auto tr = flavor_breakdown(pts);
    CsvFile f{"flavors.csv", {}};
    f.header("flavors", echo, {"x", "kappa", "flavor", "c"});
    for (std::size_t p = 0; p < tr.x.size(); ++p)
      for (std::size_t j = 0; j < tr.values.size(); ++j)
        for (std::size_t a = 0; a < tr.values[j].size(); ++a)
          f.row({fmt(tr.x[p]), fmt(cfg.kappas[j]), fmt_int(static_cast<long long>(a + 1)), fmt(tr.values[j][a][p])});
    out.files.push_back(std::move(f));
  }
  for (const auto& pt : pts) out.points.push_back({pt.x, pt.ok, pt.error, pt.report.zero_modes_dropped});
  return out;
}

RunOutput run_branches(const RunConfig& cfg, const std::string& echo) {
  ModelParams base = model_of(cfg);
  RunConfig c = cfg;
  c.t = c.t.value_or(0.0);
  std::tie(base.t, base.mu_bar) = coordinates(c, base);
  base.validate();
  const auto range = scan_range_or(cfg, 0.0, 0.3);
  const double two_pi = 2.0 * std::numbers::pi;
  auto momenta = cfg.momenta;
  if (momenta.empty()) {
    for (double f : {0.0, 0.125, 0.25, 0.5}) {
      std::vector<double> k(base.d, 0.0);
      k.back() = f;
      momenta.push_back(k);
    }
  }
  for (auto& k : momenta) {
    if (static_cast<int>(k.size()) != base.d) throw InvalidArgument("branch momentum has the wrong dimension");
    for (auto& x : k) x *= two_pi;
  }
  const auto ts = linspace(range.first, range.second, cfg.scan_steps);
  const auto traces = momentum_branch_scan(base, ts, momenta, cfg.kappas, true);

  RunOutput out;
  CsvFile f{"branches.csv", {}};
  std::vector<std::string> cols{"t"};
  for (int j = 0; j < base.d; ++j) cols.push_back("k_" + std::to_string(j + 1));
  cols.push_back("kappa");
  cols.push_back("c");
  f.header("branches", echo, cols);
  for (std::size_t p = 0; p < ts.size(); ++p)
    for (const auto& tr : traces)
      for (std::size_t j = 0; j < cfg.kappas.size(); ++j) {
        std::vector<std::string> row{fmt(ts[p])};
        for (double k : tr.k) row.push_back(fmt(k / two_pi));
        row.push_back(fmt(cfg.kappas[j]));
        row.push_back(fmt(tr.values[j][p]));
        f.row(row);
      }
  out.files.push_back(std::move(f));
  for (double t : ts) out.points.push_back({t, true, "", 0});
  return out;
}

RunOutput run_gap(const RunConfig& cfg, const std::string& echo) {
  const auto s = scan_setup(cfg);
  const auto pts = gap_scan(s.base, s.axis, s.range.first, s.range.second, cfg.scan_steps, settings_of(cfg));
  RunOutput out;
  CsvFile f{"gap.csv", {}};
  std::vector<std::string> cols{"x", "t", "mu_bar", "status", "min_omega"};
  for (int a = 1; a < s.base.n_trunc; ++a) cols.push_back("omega_gamma_" + std::to_string(a));
  cols.push_back("gamma_zero_modes");
  cols.push_back("zero_modes");
  f.header("gap", echo, cols);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& g : pts) {
    const double t = s.axis == ScanAxis::t ? g.x : s.base.t;
    const double mu = s.axis == ScanAxis::mu ? g.x : s.base.mu_bar;
    std::vector<std::string> row{fmt(g.x), fmt(t), fmt(mu), g.ok ? "ok" : "failed", fmt(g.ok ? g.min_omega : nan)};
    int gz = 0;
    for (int a = 0; a < s.base.n_trunc - 1; ++a) {
      if (!g.ok) {
        row.push_back(fmt(nan));
        continue;
      }
      row.push_back(fmt(g.gamma_zero_modes[a] ? 0.0 : g.gamma_omegas(a)));
      gz += g.gamma_zero_modes[a];
    }
    row.push_back(fmt_int(gz));
    row.push_back(fmt_int(g.zero_modes));
    f.row(row);
    out.points.push_back({g.x, g.ok, g.error, g.zero_modes});
  }
  out.files.push_back(std::move(f));
  return out;
}

RunOutput run_fit(const RunConfig& cfg, const std::string& echo) {
  ModelParams base = model_of(cfg);
  double tc, muc;
  std::tie(tc, muc) = coordinates(cfg, base);
  const ScanAxis axis = parse_scan_axis(cfg.scan_axis);
  const double crit = axis == ScanAxis::t ? tc : muc;
  base.t = tc;
  base.mu_bar = muc;
  base.validate();
  const auto window = cfg.fit_window.value_or(default_fit_window(base.d));
  if (!(0.0 < window.first && window.first < window.second))
    throw InvalidArgument("fit window must satisfy 0 < lo < hi");
  if (cfg.fit_points < 5) throw InvalidArgument("fit needs at least 5 points per side");

  std::vector<Side> sides;
  if (cfg.fit_side == "both" || cfg.fit_side == "below") sides.push_back(Side::below);
  if (cfg.fit_side == "both" || cfg.fit_side == "above") sides.push_back(Side::above);

  // Log-spaced offsets on each requested side plus the critical point itself.
  std::vector<double> offsets;
  for (int i = 0; i < cfg.fit_points; ++i)
    offsets.push_back(window.first * std::pow(window.second / window.first, i / double(cfg.fit_points - 1)));
  std::vector<double> xs;
  if (std::find(sides.begin(), sides.end(), Side::below) != sides.end())
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) xs.push_back(crit - *it);
  xs.push_back(crit);
  if (std::find(sides.begin(), sides.end(), Side::above) != sides.end())
    for (double o : offsets) xs.push_back(crit + o);

  auto settings = settings_of(cfg);
  settings.keep_per_mode = false;
  const auto pts = sweep_points(axis, xs, base, settings);
  const SweepPoint* critical = nullptr;
  for (const auto& pt : pts)
    if (pt.x == crit) critical = &pt;
  if (!critical || !critical->ok)
    throw ConvergenceError("critical-point evaluation failed: " + (critical ? critical->error : std::string("missing")), crit);

  RunOutput out;
  CsvFile pf{"fit_points.csv", {}};
  std::vector<std::string> cols{"x", "delta", "status"};
  for (double k : cfg.kappas) cols.push_back(kappa_label(k));
  pf.header("fit", echo, cols);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& pt : pts) {
    std::vector<std::string> row{fmt(pt.x), fmt(pt.x - crit), pt.ok ? "ok" : "failed"};
    for (std::size_t j = 0; j < cfg.kappas.size(); ++j) row.push_back(fmt(pt.ok ? pt.report.densities[j] : nan));
    pf.row(row);
    out.points.push_back({pt.x, pt.ok, pt.error, pt.report.zero_modes_dropped});
  }

  CsvFile ff{"fit.csv", {}};
  ff.header("fit", echo, {"kappa", "side", "model", "coefficient", "value", "std_error", "log10_value",
                          "residual_rms", "points", "window_lo", "window_hi", "critical_value", "c_critical"});
  for (std::size_t j = 0; j < cfg.kappas.size(); ++j) {
    std::vector<double> x, c;
    for (const auto& pt : pts)
      if (pt.ok) {
        x.push_back(pt.x);
        c.push_back(pt.report.densities[j]);
      }
    for (const auto& model_name : cfg.fit_models) {
      const FitModel model = parse_fit_model(model_name);
      for (Side side : sides) {
        FitSpec spec{model, side, window.first, window.second, crit};
        const auto res = fit_scaling(x, c, spec, critical->report.densities[j]);
        const auto l10 = res.log10_coefficient();
        for (std::size_t q = 0; q < res.coefficients.size(); ++q)
          ff.row({fmt(cfg.kappas[j]), to_string(side), to_string(model), res.names[q], fmt(res.coefficients[q]),
                  fmt(res.standard_errors[q]), fmt(q == 0 && l10 ? *l10 : nan), fmt(res.residual_rms),
                  fmt_int(res.points), fmt(res.window_lo), fmt(res.window_hi), fmt(crit), fmt(res.c_critical)});
      }
    }
  }
  out.files.push_back(std::move(ff));
  out.files.push_back(std::move(pf));
  out.extra["critical"] = {{"t", tc}, {"mu_bar", muc}};
  return out;
}

RunOutput run_gaussian(const RunConfig& cfg, const std::string& echo) {
  RunOutput out;
  CsvFile f{"gaussian.csv", {}};
  f.header("gaussian-ref", echo, {"d", "kappa", "m", "omega0", "quadrature", "closed_form", "closed_exact",
                                  "truncation_order", "rel_diff", "recursion_residual"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int d : cfg.gauss_dims)
    for (double k : cfg.kappas)
      for (double m : cfg.masses) {
        GaussianParams g{m, cfg.omega0, d, k};
        const double q = c_kappa_quadrature(g);
        double cf = nan, rel = nan, rec = nan;
        std::string exact = "", order = "";
        if ((k == 1.0 || k == 2.0) && (d == 2 || d == 3)) {
          const auto c = c_closed_form(g);
          cf = c.value;
          exact = c.exact ? "1" : "0";
          order = fmt_int(c.truncation_order);
          rel = q != 0.0 ? (cf - q) / q : cf - q;
        }
        if (k >= 2.0 && m < cfg.omega0 * (1.0 - 2e-5)) rec = recursion_residual(g);
        f.row({fmt_int(d), fmt(k), fmt(m), fmt(cfg.omega0), fmt(q), fmt(cf), exact, order, fmt(rel), fmt(rec)});
      }
  out.files.push_back(std::move(f));
  return out;
}

RunOutput run_holo(const RunConfig& cfg, const std::string& echo) {
  RunOutput out;
  CsvFile f{"holo.csv", {}};
  f.header("holo", echo, {"d", "xi", "delta_t", "cv_delta", "exponent"});
  HoloParams hp;
  hp.d = cfg.holo_d;
  hp.L = cfg.holo_L;
  hp.G_N = cfg.holo_G_N;
  hp.sigma_d = cfg.holo_sigma_d;
  hp.nu = cfg.holo_nu;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!cfg.delta_t.empty()) {
    for (double dt : cfg.delta_t) {
      hp.delta_t = dt;
      const auto r = cv_delta(hp);
      f.row({fmt_int(hp.d), fmt(r.xi), fmt(dt), fmt(r.value), fmt(*r.exponent)});
    }
  } else {
    for (double xi : cfg.xi) {
      hp.xi = xi;
      const auto r = cv_delta(hp);
      f.row({fmt_int(hp.d), fmt(r.xi), fmt(nan), fmt(r.value), fmt(nan)});
    }
  }
  out.files.push_back(std::move(f));
  return out;
}

RunOutput run_oracle(const RunConfig& cfg, const std::string& echo) {
  SmallLatticeSpec spec;
  spec.geometry = parse_geometry(cfg.geometry);
  spec.sites = spec.geometry == Geometry::plaquette ? 4 : cfg.sites;
  spec.n = cfg.n_trunc_override.value_or(3);
  spec.mu_bar = cfg.mu.value_or(0.5);
  std::vector<double> ts;
  if (cfg.t) ts = {*cfg.t};
  else {
    const auto r = scan_range_or(cfg, 0.0, 0.02);
    ts = linspace(r.first, r.second, cfg.scan_range ? cfg.scan_steps : 5);
  }
  RunOutput out;
  CsvFile f{"oracle.csv", {}};
  f.header("oracle", echo, {"geometry", "sites", "n", "t", "mu_bar", "E_exact", "E_mean_field", "E_quadratic",
                            "rel_mean_field", "rel_quadratic", "phi", "variational_ok"});
  for (double t : ts) {
    spec.t = t;
    const auto c = compare_energy(spec);
    f.row({to_string(spec.geometry), fmt_int(spec.sites), fmt_int(spec.n), fmt(t), fmt(spec.mu_bar), fmt(c.exact),
           fmt(c.mean_field), fmt(c.quadratic), fmt(c.rel_mean_field), fmt(c.rel_quadratic), fmt(c.phi),
           c.mean_field >= c.exact - 1e-12 * std::abs(c.exact) ? "1" : "0"});
    out.points.push_back({t, true, "", c.zero_modes});
  }
  out.files.push_back(std::move(f));
  return out;
}

RunOutput dispatch(const RunConfig& cfg) {
  const std::string echo = config_echo(cfg);
  const auto& s = cfg.subcommand;
  if (s == "meanfield") return run_meanfield(cfg, echo);
  if (s == "spectrum") return run_spectrum(cfg, echo);
  if (s == "sweep") return run_sweep(cfg, echo, false);
  if (s == "flavors") return run_sweep(cfg, echo, true);
  if (s == "branches") return run_branches(cfg, echo);
  if (s == "gap") return run_gap(cfg, echo);
  if (s == "fit") return run_fit(cfg, echo);
  if (s == "gaussian-ref") return run_gaussian(cfg, echo);
  if (s == "holo") return run_holo(cfg, echo);
  if (s == "oracle") return run_oracle(cfg, echo);
  throw InvalidArgument("unknown subcommand '" + s + "'");
}

json config_json(const RunConfig& c, bool with_io) {
  json j;
  j["subcommand"] = c.subcommand;
  j["lattice"] = c.lattice;
  j["n_trunc"] = c.n_trunc_override.value_or(c.n_trunc);
  j["t"] = c.t ? json(*c.t) : json(nullptr);
  j["mu"] = c.mu ? json(*c.mu) : json(nullptr);
  j["kappa"] = c.kappas;
  j["scan_axis"] = c.scan_axis;
  j["scan_range"] = c.scan_range ? json({c.scan_range->first, c.scan_range->second}) : json(nullptr);
  j["scan_steps"] = c.scan_steps;
  j["fit_model"] = c.fit_models;
  j["fit_window"] = c.fit_window ? json({c.fit_window->first, c.fit_window->second}) : json(nullptr);
  j["fit_side"] = c.fit_side;
  j["fit_points"] = c.fit_points;
  j["path"] = c.path;
  j["path_samples"] = c.path_samples;
  j["momenta"] = c.momenta;
  j["gauss_dims"] = c.gauss_dims;
  j["omega0"] = c.omega0;
  j["masses"] = c.masses;
  j["holo_d"] = c.holo_d;
  j["holo_L"] = c.holo_L;
  j["holo_G_N"] = c.holo_G_N;
  j["holo_sigma_d"] = c.holo_sigma_d;
  j["holo_nu"] = c.holo_nu;
  j["xi"] = c.xi;
  j["delta_t"] = c.delta_t;
  j["geometry"] = c.geometry;
  j["sites"] = c.sites;
  j["damping"] = c.mean_field.damping;
  j["mf_tolerance"] = c.mean_field.tolerance;
  j["max_iterations"] = c.mean_field.max_iterations;
  j["initial_phi"] = c.mean_field.initial_phi;
  j["omega_tol"] = c.bogoliubov.omega_tol;
  j["shift_factor"] = c.bogoliubov.shift_factor;
  if (with_io) {
    j["out"] = c.out;
    j["workers"] = c.workers;
  }
  return j;
}

std::string hex(const unsigned char* data, unsigned len) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += digits[data[i] >> 4];
    s += digits[data[i] & 15];
  }
  return s;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream o(p, std::ios::binary | std::ios::trunc);
  if (!o) throw InvalidArgument("cannot write '" + p.string() + "'");
  o << bytes;
  if (!o) throw InvalidArgument("write failed for '" + p.string() + "'");
}

json error_record(const std::string& kind, const std::string& message, int code) {
  return {{"status", "error"}, {"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
}

}  // namespace

void RunConfig::validate() const {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end())
    throw InvalidArgument("unknown subcommand '" + subcommand + "'");
  if (lattice.empty()) throw InvalidArgument("lattice must have at least one extent");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  if (scan_steps < 1) throw InvalidArgument("scan_steps must be >= 1");
  if (kappas.empty()) throw InvalidArgument("kappa list is empty");
  for (double k : kappas)
    if (!(k > 0.0)) throw InvalidArgument("kappa values must be positive");
  if (fit_side != "both" && fit_side != "below" && fit_side != "above")
    throw InvalidArgument("fit_side must be both, below or above");
  for (const auto& m : fit_models) parse_fit_model(m);
  parse_scan_axis(scan_axis);
  parse_geometry(geometry);
  if (path_samples < 2) throw InvalidArgument("path_samples must be >= 2");
  if (out.empty()) throw InvalidArgument("output directory is empty");
}

std::vector<int> parse_lattice(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, 'x')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InvalidArgument("bad lattice '" + text + "' (expected e.g. 100x100)");
    }
  }
  if (out.empty()) throw InvalidArgument("bad lattice '" + text + "'");
  return out;
}

RunConfig apply_config_json(const std::string& text, RunConfig c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (v.is_null()) continue;
    if (k == "subcommand") c.subcommand = get_as<std::string>(v, k);
    else if (k == "lattice") c.lattice = v.is_string() ? parse_lattice(v.get<std::string>()) : get_as<std::vector<int>>(v, k);
    else if (k == "n_trunc") c.n_trunc = *(c.n_trunc_override = get_as<int>(v, k));
    else if (k == "t") c.t = get_as<double>(v, k);
    else if (k == "mu") c.mu = get_as<double>(v, k);
    else if (k == "kappa") c.kappas = numbers_or_csv(v, k);
    else if (k == "workers") c.workers = get_as<int>(v, k);
    else if (k == "out") c.out = get_as<std::string>(v, k);
    else if (k == "scan_axis") c.scan_axis = get_as<std::string>(v, k);
    else if (k == "scan_range") c.scan_range = as_range(numbers_or_csv(v, k), "scan_range");
    else if (k == "scan_steps") c.scan_steps = get_as<int>(v, k);
    else if (k == "fit_model") {
      if (v.is_string()) {
        c.fit_models.clear();
        std::stringstream ss(v.get<std::string>());
        std::string m;
        while (std::getline(ss, m, ',')) c.fit_models.push_back(m);
      } else {
        c.fit_models = get_as<std::vector<std::string>>(v, k);
      }
    } else if (k == "fit_window") c.fit_window = as_range(numbers_or_csv(v, k), "fit_window");
    else if (k == "fit_side") c.fit_side = get_as<std::string>(v, k);
    else if (k == "fit_points") c.fit_points = get_as<int>(v, k);
    else if (k == "path") c.path = get_as<std::vector<std::vector<double>>>(v, k);
    else if (k == "path_samples") c.path_samples = get_as<int>(v, k);
    else if (k == "momenta") c.momenta = get_as<std::vector<std::vector<double>>>(v, k);
    else if (k == "gauss_dims") c.gauss_dims = get_as<std::vector<int>>(v, k);
    else if (k == "omega0") c.omega0 = get_as<double>(v, k);
    else if (k == "masses") c.masses = numbers_or_csv(v, k);
    else if (k == "holo_d") c.holo_d = get_as<int>(v, k);
    else if (k == "holo_L") c.holo_L = get_as<double>(v, k);
    else if (k == "holo_G_N") c.holo_G_N = get_as<double>(v, k);
    else if (k == "holo_sigma_d") c.holo_sigma_d = get_as<double>(v, k);
    else if (k == "holo_nu") c.holo_nu = get_as<double>(v, k);
    else if (k == "xi") c.xi = numbers_or_csv(v, k);
    else if (k == "delta_t") c.delta_t = numbers_or_csv(v, k);
    else if (k == "geometry") c.geometry = get_as<std::string>(v, k);
    else if (k == "sites") c.sites = get_as<int>(v, k);
    else if (k == "damping") c.mean_field.damping = get_as<double>(v, k);
    else if (k == "mf_tolerance") c.mean_field.tolerance = get_as<double>(v, k);
    else if (k == "max_iterations") c.mean_field.max_iterations = get_as<int>(v, k);
    else if (k == "initial_phi") c.mean_field.initial_phi = get_as<double>(v, k);
    else if (k == "omega_tol") c.bogoliubov.omega_tol = get_as<double>(v, k);
    else if (k == "shift_factor") c.bogoliubov.shift_factor = get_as<double>(v, k);
    else throw InvalidArgument("unknown config key '" + k + "'");
  }
  return c;
}

std::string config_echo(const RunConfig& cfg) { return config_json(cfg, false).dump(); }

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  return hex(md, len);
}

std::vector<std::string> verify_manifest(const std::string& dir) {
  const json m = json::parse(read_file(fs::path(dir) / "manifest.json"));
  std::vector<std::string> bad;
  for (const auto& f : m.at("files")) {
    const auto name = f.at("path").get<std::string>();
    const fs::path p = fs::path(dir) / name;
    if (!fs::exists(p) || sha256_hex(read_file(p)) != f.at("sha256").get<std::string>()) bad.push_back(name);
  }
  return bad;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circuit complexity of the Bose-Hubbard ground state around its mean-field solution"};
  app.set_version_flag("--version", BHC_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, kappa, lattice, scan_axis, scan_range, fit_model, fit_window, fit_side;
  int workers = 0, n_trunc = 0, scan_steps = 0, fit_points = 0;
  double t = 0.0, mu = 0.0;
  auto* o_config = app.add_option("--config", config_path, "JSON config file ('-' reads stdin)");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_workers = app.add_option("--workers", workers, "worker threads");
  auto* o_kappa = app.add_option("--kappa", kappa, "comma-separated kappa list, e.g. 1,2");
  auto* o_lattice = app.add_option("--lattice", lattice, "extents, e.g. 100x100");
  auto* o_ntrunc = app.add_option("--n-trunc", n_trunc, "local Fock truncation");
  auto* o_t = app.add_option("--t", t, "t = fJ/U");
  auto* o_mu = app.add_option("--mu", mu, "mu/U");
  auto* o_axis = app.add_option("--scan-axis", scan_axis, "t or mu");
  auto* o_range = app.add_option("--scan-range", scan_range, "lo,hi");
  auto* o_steps = app.add_option("--scan-steps", scan_steps, "number of scan points");
  auto* o_model = app.add_option("--fit-model", fit_model, "log1, log2, quad, power32, purepow (comma list)");
  auto* o_window = app.add_option("--fit-window", fit_window, "lo,hi in |x - x_c|");
  auto* o_side = app.add_option("--fit-side", fit_side, "both, below or above");
  auto* o_points = app.add_option("--fit-points", fit_points, "log-spaced points per side");

  std::vector<CLI::App*> subs;
  for (const auto& name : kSubcommands) subs.push_back(app.add_subcommand(name, ""));
  subs[0]->description("phi, on-site levels and the B matrix");
  subs[1]->description("normal-mode frequencies along a momentum path");
  subs[2]->description("complexity densities along a t or mu scan");
  subs[3]->description("per-momentum complexity along a t scan");
  subs[4]->description("per-flavor complexity along a scan");
  subs[5]->description("gap along a scan");
  subs[6]->description("critical scaling fits around the lobe tip");
  subs[7]->description("gaussian field theory references");
  subs[8]->description("capped-AdS volume deficit");
  subs[9]->description("exact diagonalization of a tiny lattice vs the pipeline");
  subs[10]->description("re-check the checksums in --out/manifest.json");

  int code = 0;
  std::string kind = "config", message;
  RunConfig cfg;
  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForVersion& e) {
      out << BHC_VERSION << "\n";
      return 0;
    } catch (const CLI::ParseError& e) {
      throw InvalidArgument(e.what());
    }
    for (auto* s : subs)
      if (s->parsed()) cfg.subcommand = s->get_name();

    if (o_config->count()) {
      const std::string text = config_path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                                  : read_file(config_path);
      const std::string sub = cfg.subcommand;
      cfg = apply_config_json(text, cfg);
      if (cfg.subcommand != sub) throw InvalidArgument("config subcommand '" + cfg.subcommand + "' contradicts the command line");
    }
    if (o_out->count()) cfg.out = out_dir;
    if (o_workers->count()) cfg.workers = workers;
    if (o_kappa->count()) cfg.kappas = split_doubles(kappa);
    if (o_lattice->count()) cfg.lattice = parse_lattice(lattice);
    if (o_ntrunc->count()) cfg.n_trunc = *(cfg.n_trunc_override = n_trunc);
    if (o_t->count()) cfg.t = t;
    if (o_mu->count()) cfg.mu = mu;
    if (o_axis->count()) cfg.scan_axis = scan_axis;
    if (o_range->count()) cfg.scan_range = as_range(split_doubles(scan_range), "--scan-range");
    if (o_steps->count()) cfg.scan_steps = scan_steps;
    if (o_model->count()) cfg = apply_config_json(json{{"fit_model", fit_model}}.dump(), cfg);
    if (o_window->count()) cfg.fit_window = as_range(split_doubles(fit_window), "--fit-window");
    if (o_side->count()) cfg.fit_side = fit_side;
    if (o_points->count()) cfg.fit_points = fit_points;
    cfg.validate();

    if (cfg.subcommand == "verify") {
      const auto bad = verify_manifest(cfg.out);
      for (const auto& b : bad) err << "checksum mismatch: " << b << "\n";
      out << (bad.empty() ? "ok" : "failed") << "\n";
      return bad.empty() ? 0 : 3;
    }

    kind = "numerical";
    const auto start = std::chrono::steady_clock::now();
    RunOutput res = dispatch(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    fs::create_directories(cfg.out);
    json manifest;
    manifest["tool"] = "bhc";
    manifest["version"] = BHC_VERSION;
    manifest["subcommand"] = cfg.subcommand;
    manifest["config"] = config_json(cfg, true);
    manifest["wall_time_seconds"] = wall;
    json files = json::array();
    for (const auto& f : res.files) {
      const std::string bytes = f.body.str();
      write_file(fs::path(cfg.out) / f.name, bytes);
      files.push_back({{"path", f.name}, {"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}});
    }
    manifest["files"] = files;
    json points = json::array();
    long long zm = 0, failed = 0;
    for (const auto& p : res.points) {
      json pj{{"x", p.x}, {"status", p.ok ? "ok" : "failed"}, {"zero_modes", p.zero_modes}};
      if (!p.ok) pj["error"] = p.error;
      points.push_back(pj);
      zm += p.zero_modes;
      failed += !p.ok;
    }
    manifest["points"] = points;
    manifest["zero_modes_total"] = zm;
    manifest["failed_points"] = failed;
    manifest["status"] = failed ? "partial" : "ok";
    if (!res.extra.empty()) manifest["extra"] = res.extra;
    write_file(fs::path(cfg.out) / "manifest.json", manifest.dump(2) + "\n");
    for (const auto& f : res.files) out << (fs::path(cfg.out) / f.name).string() << "\n";
    return 0;
  } catch (const InvalidArgument& e) {
    code = 2;
    kind = e.kind();
    message = e.what();
  } catch (const Error& e) {
    code = 3;
    kind = e.kind();
    message = e.what();
  } catch (const std::exception& e) {
    code = kind == "config" ? 2 : 3;
    message = e.what();
  }
  const json record = error_record(kind, message, code);
  err << record.dump() << "\n";
  // Best effort: leave the record next to the outputs as well.
  try {
    if (!cfg.out.empty() && cfg.subcommand != "verify" && !cfg.subcommand.empty()) {
      fs::create_directories(cfg.out);
      write_file(fs::path(cfg.out) / "error.json", record.dump(2) + "\n");
    }
  } catch (...) {
  }
  return code;
}

}  // namespace bhc::cli
