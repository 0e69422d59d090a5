#include "bhc/quadratic.hpp"

#include "bhc/errors.hpp"
#include "bhc/lattice.hpp"

namespace bhc {

Eigen::MatrixXd ModeBlock::h2() const {
  const int m = flavors();
  Eigen::MatrixXd h(2 * m, 2 * m);
  h << M, P, P, M;
  return h;
}

ModeBlock build_mode_block_eta(const MeanFieldSolution& mfs, const ModelParams& params,
                               double eta_value) {
  const int n = static_cast<int>(mfs.energies.size());
  if (n < 2 || mfs.b_dagger_matrix.rows() != n)
    throw InvalidArgument("build_mode_block: malformed mean-field solution");
  const int m = n - 1;
  const auto& B = mfs.b_dagger_matrix;
  const Eigen::VectorXd x = B.col(0).tail(m);              // B_{a0}
  const Eigen::VectorXd y = B.row(0).tail(m).transpose();  // B_{0a}
  const double g = params.t * eta_value;

  ModeBlock blk;
  blk.eta = eta_value;
  blk.M = (mfs.energies.tail(m).array() - mfs.energies(0)).matrix().asDiagonal();
  blk.M -= g * (x * x.transpose() + y * y.transpose());
  blk.P = -g * (y * x.transpose() + x * y.transpose());
  blk.M = 0.5 * (blk.M + blk.M.transpose()).eval();
  blk.P = 0.5 * (blk.P + blk.P.transpose()).eval();
  return blk;
}

ModeBlock build_mode_block(const MeanFieldSolution& mfs, const ModelParams& params,
                           std::span<const double> k) {
  if (static_cast<int>(k.size()) != params.d)
    throw InvalidArgument("build_mode_block: momentum has wrong dimension");
  auto blk = build_mode_block_eta(mfs, params, eta(k));
  blk.k.assign(k.begin(), k.end());
  return blk;
}

}  // namespace bhc
