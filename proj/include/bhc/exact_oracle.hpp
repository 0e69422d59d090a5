#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "bhc/complexity.hpp"

namespace bhc {

enum class Geometry { chain, plaquette };

Geometry parse_geometry(const std::string& name);
std::string to_string(Geometry g);

// Periodic chain of up to 4 sites (coordination 2) or the periodic 2 x 2
// plaquette (coordination 4). Every neighbour slot is a separate bond, so a
// 2-site chain carries the 0-1 bond twice. n is the local Fock truncation.
struct SmallLatticeSpec {
  Geometry geometry = Geometry::chain;
  int sites = 2;
  int n = 3;
  double t = 0.0;
  double mu_bar = 0.0;

  void validate() const;
  std::int64_t dimension() const;  // n^sites, capped at 1e4
  int coordination() const;
  // Same couplings as a ModelParams on the matching momentum grid.
  ModelParams model_params() const;
};

struct ExactGroundState {
  double energy = 0.0;
  Eigen::VectorXd vector;
  Eigen::VectorXd b_expectation;  // <b_i>
  Eigen::MatrixXd two_point;      // <b_i^dag b_j>
  double number_mean = 0.0;
  double number_variance = 0.0;
  double hermiticity_defect = 0.0;  // max |H - H^T|
  double gap = 0.0;                 // E_1 - E_0
};

Eigen::MatrixXd build_hamiltonian(const SmallLatticeSpec& spec);
Eigen::MatrixXd total_number(const SmallLatticeSpec& spec);

ExactGroundState exact_ground_state(const SmallLatticeSpec& spec);

struct EnergyComparison {
  double exact = 0.0;
  double mean_field = 0.0;  // N (eps_0 + t phi^2)
  double quadratic = 0.0;   // mean field + 1/2 sum_k (sum_a omega_ka - tr M(k))
  double phi = 0.0;
  double rel_mean_field = 0.0;  // |E_MF - E_0| / |E_0|
  double rel_quadratic = 0.0;
  std::int64_t zero_modes = 0;
};

EnergyComparison compare_energy(const SmallLatticeSpec& spec);

}  // namespace bhc
