#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bhc/bogoliubov.hpp"
#include "bhc/lattice.hpp"
#include "bhc/onsite.hpp"

namespace bhc {

struct ComplexitySettings {
  std::vector<double> kappas{1.0, 2.0};
  int workers = 1;
  bool keep_per_mode = true;
  BogoliubovOptions bogoliubov{};
  SelfConsistencyOptions mean_field{};
};

// sum_a |theta_a|^kappa over the non-zero modes, one entry per kappa.
std::vector<double> mode_complexities(const BogoliubovResult& result,
                                      const std::vector<double>& kappas);

struct ComplexityReport {
  ModelParams params;
  std::vector<double> kappas;
  std::vector<double> totals;     // C_kappa, full Brillouin zone
  std::vector<double> densities;  // C_kappa / N
  // per_mode[j][i]: sum_a |theta_{k_i, a}|^kappa_j in grid order (only when
  // keep_per_mode). per_flavor[j][a]: sum_k |theta_{k, a}|^kappa_j, flavors
  // indexed by ascending frequency at each k.
  std::vector<std::vector<double>> per_mode;
  std::vector<std::vector<double>> per_flavor;
  std::int64_t zero_modes_dropped = 0;
  std::int64_t sites = 0;
  std::int64_t distinct_blocks = 0;

  double phi = 0.0;
  double free_energy = 0.0;
  Eigen::VectorXd energies;
  // Smallest non-zero frequency over all (k, a), and the spectrum at k = 0.
  double min_omega = 0.0;
  Eigen::VectorXd gamma_omegas;
  std::vector<bool> gamma_zero_modes;

  int kappa_index(double kappa) const;  // -1 when absent
  double c_qc() const;                  // sqrt(C_2); requires kappa = 2
};

// Solves the mean field, diagonalizes every grid block (once per distinct
// eta) and sums over the full zone with the multiplicities of each class.
ComplexityReport phase_point_complexity(const ModelParams& params,
                                        const ComplexitySettings& settings = {});
ComplexityReport phase_point_complexity(const ModelParams& params, const MeanFieldSolution& mfs,
                                        const MomentumGrid& grid, const EtaClasses& classes,
                                        const ComplexitySettings& settings);

enum class ScanAxis { t, mu };

ScanAxis parse_scan_axis(const std::string& name);
std::string to_string(ScanAxis axis);

struct SweepPoint {
  double x = 0.0;
  bool ok = false;
  std::string error;
  ComplexityReport report;
};

// Evenly spaced points over [lo, hi] (steps points; steps == 1 evaluates lo).
// Every point re-solves the mean field from scratch; per-point failures are
// recorded and the sweep continues.
std::vector<SweepPoint> sweep(ScanAxis axis, double lo, double hi, int steps,
                              const ModelParams& base, const ComplexitySettings& settings);
// Same over an explicit list of axis values.
std::vector<SweepPoint> sweep_points(ScanAxis axis, const std::vector<double>& xs,
                                     const ModelParams& base, const ComplexitySettings& settings);

std::vector<double> linspace(double lo, double hi, int steps);

struct BranchTrace {
  std::vector<int> k_index;
  std::vector<double> k;
  // values[j][p]: sum over flavors of |theta|^kappa_j at scan point p.
  std::vector<std::vector<double>> values;
};

// Per-momentum complexity traces along a t-scan. Momenta not on the grid are
// snapped when `snap` is set, otherwise rejected.
std::vector<BranchTrace> momentum_branch_scan(const ModelParams& base,
                                              const std::vector<double>& t_values,
                                              const std::vector<std::vector<double>>& momenta,
                                              const std::vector<double>& kappas, bool snap = true);

struct FlavorTraces {
  std::vector<double> x;
  // values[j][a][p] for kappa j, flavor a, point p, divided by the site count.
  std::vector<std::vector<std::vector<double>>> values;
};

FlavorTraces flavor_breakdown(const std::vector<SweepPoint>& points);

}  // namespace bhc
