#include "bhc/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "bhc/errors.hpp"

namespace bhc {

Eigen::MatrixXd kappa_metric(int m) {
  Eigen::VectorXd diag(2 * m);
  diag.head(m).setOnes();
  diag.tail(m).setConstant(-1.0);
  return diag.asDiagonal();
}

double symplectic_check(const Eigen::MatrixXd& G) {
  if (G.rows() != G.cols() || G.rows() % 2 != 0)
    throw InvalidArgument("symplectic_check: G must be square with even dimension");
  const auto k = kappa_metric(static_cast<int>(G.rows() / 2));
  return (G * k * G.transpose() - k).cwiseAbs().maxCoeff();
}

namespace {

// Pairs singular values of u+ with normal modes by greedy maximum overlap of
// the right singular vectors (normal-mode space) with the mode axes.
std::vector<int> assign_singular_values(const Eigen::MatrixXd& right_vectors) {
  const int m = static_cast<int>(right_vectors.rows());
  std::vector<std::tuple<double, int, int>> overlaps;
  overlaps.reserve(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int j = 0; j < m; ++j) overlaps.emplace_back(std::abs(right_vectors(a, j)), a, j);
  std::stable_sort(overlaps.begin(), overlaps.end(), [](const auto& l, const auto& r) {
    if (std::get<0>(l) != std::get<0>(r)) return std::get<0>(l) > std::get<0>(r);
    if (std::get<1>(l) != std::get<1>(r)) return std::get<1>(l) < std::get<1>(r);
    return std::get<2>(l) < std::get<2>(r);
  });
  std::vector<int> mode_to_sv(m, -1);
  std::vector<bool> sv_used(m, false);
  int assigned = 0;
  for (const auto& [w, a, j] : overlaps) {
    if (mode_to_sv[a] >= 0 || sv_used[j]) continue;
    mode_to_sv[a] = j;
    sv_used[j] = true;
    if (++assigned == m) break;
  }
  return mode_to_sv;
}

}  // namespace

BogoliubovResult diagonalize_block(const ModeBlock& block, const BogoliubovOptions& opts) {
  const int m = block.flavors();
  if (m < 1 || block.P.rows() != m || block.P.cols() != m || block.M.cols() != m)
    throw InvalidArgument("diagonalize_block: malformed block");
  Eigen::MatrixXd h = block.h2();
  const double hmax = h.cwiseAbs().maxCoeff();

  BogoliubovResult res;
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) {
    res.shifted = true;
    res.shift = opts.shift_factor * std::max(hmax, 1e-300);
    h.diagonal().array() += res.shift;
    llt.compute(h);
    if (llt.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "quadratic form is not positive semidefinite (eta=" << block.eta << ")";
      throw InstabilityError(msg.str());
    }
  }
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd kappa = kappa_metric(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.transpose() * kappa * L);
  const Eigen::VectorXd& s = es.eigenvalues();
  if (!(s(m - 1) < 0.0 && s(m) > 0.0)) {
    std::ostringstream msg;
    msg << "eigenvalues of kappa*H2 do not split into +/- pairs (eta=" << block.eta << ")";
    throw InstabilityError(msg.str());
  }

  res.omegas = s.tail(m);
  // Positive-frequency columns (u; v) of G; the negative partners are (v; u).
  const Eigen::MatrixXd X =
      L.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors().rightCols(m)) *
      res.omegas.cwiseSqrt().asDiagonal();
  const Eigen::MatrixXd u = X.topRows(m);
  const Eigen::MatrixXd v = X.bottomRows(m);
  res.G.resize(2 * m, 2 * m);
  res.G << u, v, v, u;

  // A numerically vanishing eigenvalue e of H2 shows up as omega ~ sqrt(e*|H2|),
  // so the zero-mode cut sits above the noise floor of the shift scale.
  const double zero_cut =
      std::max(opts.omega_tol, 10.0 * std::sqrt(opts.shift_factor) * hmax);
  res.zero_mode.assign(m, false);
  for (int a = 0; a < m; ++a) {
    if (res.omegas(a) < zero_cut) {
      res.zero_mode[a] = true;
      ++res.zero_mode_count;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u + v, Eigen::ComputeFullV);
  const auto mode_to_sv = assign_singular_values(svd.matrixV());
  // Sign: (u+v)(u-v)^T = I, so -ln sigma(u+v) is ln sigma of the inverse map's u+v.
  // That orientation gives theta = +1/2 ln(w~/w0) for a stiffened oscillator.
  res.thetas.resize(m);
  for (int a = 0; a < m; ++a)
    res.thetas(a) = res.zero_mode[a] ? 0.0 : -std::log(svd.singularValues()(mode_to_sv[a]));
  return res;
}

double similarity_residual(const ModeBlock& block, const BogoliubovResult& result) {
  const int m = block.flavors();
  Eigen::MatrixXd h = block.h2();
  if (result.shifted) h.diagonal().array() += result.shift;
  const Eigen::MatrixXd k = kappa_metric(m);
  const Eigen::MatrixXd d = result.G.partialPivLu().solve(k * h * result.G);
  Eigen::VectorXd target(2 * m);
  target << result.omegas, -result.omegas;
  Eigen::MatrixXd diff = d;
  diff.diagonal() -= target;
  return diff.cwiseAbs().maxCoeff();
}

}  // namespace bhc
