#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bhc/quadratic.hpp"

namespace bhc {

struct BogoliubovOptions {
  // Frequencies below this are zero modes (Goldstone or exactly critical).
  double omega_tol = 1e-8;
  // Relative diagonal shift applied once when H2 fails the Cholesky test.
  double shift_factor = 1e-12;
};

// Symplectic diagonalization of one ModeBlock.
//
// Normal modes are indexed in ascending order of omega. `thetas` is aligned
// with `omegas`; zero-mode entries are flagged in `zero_mode`, hold 0 and are
// not part of any complexity sum.
struct BogoliubovResult {
  Eigen::VectorXd omegas;
  Eigen::VectorXd thetas;
  std::vector<bool> zero_mode;
  Eigen::MatrixXd G;  // [[u, v], [v, u]]
  int zero_mode_count = 0;
  bool shifted = false;
  double shift = 0.0;

  int modes() const { return static_cast<int>(omegas.size()); }
};

BogoliubovResult diagonalize_block(const ModeBlock& block, const BogoliubovOptions& opts = {});

// kappa = diag(+1 (x m), -1 (x m)) for a 2m x 2m problem.
Eigen::MatrixXd kappa_metric(int m);

// max |G kappa G^T - kappa|.
double symplectic_check(const Eigen::MatrixXd& G);

// max |G^{-1} kappa H2 G - diag(omega, -omega)|, evaluated on the matrix the
// transformation was built for (H2 plus the shift, when one was applied).
double similarity_residual(const ModeBlock& block, const BogoliubovResult& result);

}  // namespace bhc
