#pragma once

#include <Eigen/Dense>
#include <vector>

namespace bhc {

// Physical inputs. Energies are in units of the on-site repulsion U.
struct ModelParams {
  int d = 2;
  std::vector<int> extents{100, 100};
  int n_trunc = 6;
  double t = 0.0;       // f*J/U
  double mu_bar = 0.0;  // mu/U

  int coordination() const { return 2 * d; }
  long long site_count() const;
  // Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

struct LadderOperators {
  Eigen::MatrixXd b;
  Eigen::MatrixXd b_dagger;
  Eigen::MatrixXd number;
};

LadderOperators ladder_operators(int n);

// Eigensystem of the on-site mean-field Hamiltonian
//   H_MF = -t*phi*(b + b^dagger) + n(n-1)/2 - mu_bar*n
// with ascending energies and real eigenvectors (columns), each with its
// largest-magnitude component positive. Degenerate levels are re-expanded in
// the Fock basis by index order before the sign convention is applied.
struct OnsiteSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;
};

OnsiteSpectrum solve_onsite(const ModelParams& params, double phi);

// Per-site mean-field energy functional F(phi) = eps_0(phi) + t*phi^2. Its
// stationary points are the self-consistent solutions phi = <b>.
double free_energy(const ModelParams& params, double phi);

struct MeanFieldSolution {
  double phi = 0.0;
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;
  // B(beta, alpha) = <beta| b^dagger |alpha> in the eigenbasis.
  Eigen::MatrixXd b_dagger_matrix;
  bool converged = false;
  double free_energy = 0.0;
  int iterations = 0;
};

struct SelfConsistencyOptions {
  double damping = 0.5;
  double tolerance = 1e-12;
  int max_iterations = 10000;
  double initial_phi = 0.5;
  double phi_zero_tolerance = 1e-8;
  double phi_max = 3.0;
};

// Assembles the solution record (eigensystem, B, F) at a given phi without
// iterating. Used for warm starts and by tests.
MeanFieldSolution mean_field_at(const ModelParams& params, double phi);

MeanFieldSolution self_consistent_phi(const ModelParams& params,
                                      const SelfConsistencyOptions& opts = {});

// Hopping t at which the Mott region (phi = 0) ends for fixed mu_bar.
// Bisection on the indicator [phi > phi_tol] over [t_lo, t_hi].
double locate_lobe_boundary(ModelParams params, double mu_bar,
                            double tolerance = 1e-6, double t_lo = 0.0,
                            double t_hi = 0.5);

struct LobeTip {
  double t_c = 0.0;
  double mu_bar_c = 0.0;
};

// Maximizes the lobe boundary over mu_bar by golden-section search. lobe = k
// searches mu_bar in (k-1, k), the lobe with k bosons per site.
LobeTip locate_tip(ModelParams params, int lobe = 1, double mu_tolerance = 1e-7,
                   double t_tolerance = 1e-10);

}  // namespace bhc
