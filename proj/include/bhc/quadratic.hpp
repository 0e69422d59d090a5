#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "bhc/onsite.hpp"

namespace bhc {

// Quadratic fluctuation block at one momentum, over the n-1 excited on-site
// levels ("flavors"). The 2(n-1) x 2(n-1) Hamiltonian is [[M, P], [P, M]].
struct ModeBlock {
  std::vector<double> k;
  double eta = 0.0;
  Eigen::MatrixXd M;
  Eigen::MatrixXd P;

  int flavors() const { return static_cast<int>(M.rows()); }
  Eigen::MatrixXd h2() const;
};

//   M_ab = (eps_a - eps_0) delta_ab - t eta (B_a0 B_b0 + B_0a B_0b)
//   P_ab = -t eta (B_0a B_b0 + B_0b B_a0),  a, b = 1..n-1
ModeBlock build_mode_block_eta(const MeanFieldSolution& mfs, const ModelParams& params,
                               double eta);
ModeBlock build_mode_block(const MeanFieldSolution& mfs, const ModelParams& params,
                           std::span<const double> k);

}  // namespace bhc
