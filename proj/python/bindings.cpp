#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bhc/bogoliubov.hpp"
#include "bhc/cli.hpp"
#include "bhc/complexity.hpp"
#include "bhc/errors.hpp"
#include "bhc/exact_oracle.hpp"
#include "bhc/gaussian_ref.hpp"
#include "bhc/holo.hpp"
#include "bhc/onsite.hpp"
#include "bhc/scaling.hpp"

namespace py = pybind11;
using namespace bhc;

namespace {

ModelParams make_params(std::vector<int> extents, int n_trunc, double t, double mu) {
  ModelParams p;
  p.d = static_cast<int>(extents.size());
  p.extents = std::move(extents);
  p.n_trunc = n_trunc;
  p.t = t;
  p.mu_bar = mu;
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_bhc, m) {
  m.doc() = "Bose-Hubbard circuit complexity engine";

  // Translators run newest first, so the derived type goes last.
  py::register_exception<Error>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def(
      "mean_field",
      [](double t, double mu, int n_trunc) {
        ModelParams p = make_params({2, 2}, n_trunc, t, mu);  // mean field ignores the grid
        const auto s = self_consistent_phi(p);
        py::dict d;
        d["phi"] = s.phi;
        d["energies"] = s.energies;
        d["b_dagger"] = s.b_dagger_matrix;
        d["free_energy"] = s.free_energy;
        d["converged"] = s.converged;
        return d;
      },
      py::arg("t"), py::arg("mu"), py::arg("n_trunc") = 6);

  m.def(
      "locate_tip",
      [](int n_trunc) {
        ModelParams p;
        p.n_trunc = n_trunc;
        const auto tip = bhc::locate_tip(p);
        return py::make_tuple(tip.t_c, tip.mu_bar_c);
      },
      py::arg("n_trunc") = 6);

  m.def(
      "complexity",
      [](std::vector<int> extents, double t, double mu, int n_trunc, std::vector<double> kappas, int workers) {
        ComplexitySettings s;
        s.kappas = std::move(kappas);
        s.workers = workers;
        s.keep_per_mode = false;
        const auto r = phase_point_complexity(make_params(std::move(extents), n_trunc, t, mu), s);
        py::dict d;
        d["kappas"] = r.kappas;
        d["totals"] = r.totals;
        d["densities"] = r.densities;
        d["per_flavor"] = r.per_flavor;
        d["phi"] = r.phi;
        d["zero_modes"] = r.zero_modes_dropped;
        d["sites"] = r.sites;
        d["min_omega"] = r.min_omega;
        return d;
      },
      py::arg("extents"), py::arg("t"), py::arg("mu"), py::arg("n_trunc") = 6,
      py::arg("kappas") = std::vector<double>{1.0, 2.0}, py::arg("workers") = 1);

  m.def(
      "diagonalize",
      [](const Eigen::MatrixXd& M, const Eigen::MatrixXd& P) {
        ModeBlock blk;
        blk.M = M;
        blk.P = P;
        const auto r = diagonalize_block(blk);
        py::dict d;
        d["omegas"] = r.omegas;
        d["thetas"] = r.thetas;
        d["G"] = r.G;
        d["zero_modes"] = r.zero_mode_count;
        d["symplectic_residual"] = symplectic_check(r.G);
        return d;
      },
      py::arg("M"), py::arg("P"));

  m.def("two_mode_complexity", &two_mode_complexity, py::arg("lam"), py::arg("kappa"));
  m.def(
      "c_kappa_quadrature",
      [](double mass, double omega0, int d, double kappa) {
        return bhc::c_kappa_quadrature({mass, omega0, d, kappa});
      },
      py::arg("m"), py::arg("omega0"), py::arg("d"), py::arg("kappa"));
  m.def(
      "c_closed_form",
      [](double mass, double omega0, int d, double kappa) {
        return bhc::c_closed_form({mass, omega0, d, kappa}).value;
      },
      py::arg("m"), py::arg("omega0"), py::arg("d"), py::arg("kappa"));
  m.def(
      "gas_c2_d3", [](double mass, double U) { return bhc::gas_c2_d3({mass, U, 3}); }, py::arg("m"),
      py::arg("U"));
  m.def(
      "cv_delta",
      [](int d, double xi, double L, double G_N, double sigma_d) {
        HoloParams h;
        h.d = d;
        h.xi = xi;
        h.L = L;
        h.G_N = G_N;
        h.sigma_d = sigma_d;
        return bhc::cv_delta(h).value;
      },
      py::arg("d"), py::arg("xi"), py::arg("L") = 1.0, py::arg("G_N") = 1.0, py::arg("sigma_d") = 1.0);

  m.def(
      "compare_energy",
      [](int sites, int n, double t, double mu, const std::string& geometry) {
        SmallLatticeSpec s;
        s.geometry = parse_geometry(geometry);
        s.sites = sites;
        s.n = n;
        s.t = t;
        s.mu_bar = mu;
        const auto c = bhc::compare_energy(s);
        py::dict d;
        d["exact"] = c.exact;
        d["mean_field"] = c.mean_field;
        d["quadratic"] = c.quadratic;
        d["phi"] = c.phi;
        return d;
      },
      py::arg("sites") = 2, py::arg("n") = 3, py::arg("t") = 0.0, py::arg("mu") = 0.5,
      py::arg("geometry") = "chain");

  m.def(
      "fit",
      [](std::vector<double> x, std::vector<double> c, const std::string& model, const std::string& side,
         double lo, double hi, double critical, std::optional<double> c_critical) {
        if (side != "above" && side != "below") throw InvalidArgument("side must be 'below' or 'above'");
        FitSpec spec{parse_fit_model(model), side == "above" ? Side::above : Side::below, lo, hi, critical};
        const auto r = fit_scaling(x, c, spec, c_critical);
        py::dict d;
        d["names"] = r.names;
        d["coefficients"] = r.coefficients;
        d["standard_errors"] = r.standard_errors;
        d["residual_rms"] = r.residual_rms;
        d["points"] = r.points;
        return d;
      },
      py::arg("x"), py::arg("c"), py::arg("model"), py::arg("side"), py::arg("lo"), py::arg("hi"),
      py::arg("critical"), py::arg("c_critical") = py::none());

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "bhc");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
