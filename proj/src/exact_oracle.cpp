#include "bhc/exact_oracle.hpp"

#include <cmath>
#include <vector>

#include "bhc/errors.hpp"
#include "bhc/lattice.hpp"
#include "bhc/quadratic.hpp"

namespace bhc {

namespace {

// Directed neighbour slots i -> j (one entry per slot, duplicates kept).
std::vector<std::pair<int, int>> neighbour_slots(const SmallLatticeSpec& s) {
  std::vector<std::pair<int, int>> out;
  if (s.geometry == Geometry::chain) {
    for (int i = 0; i < s.sites; ++i) {
      out.emplace_back(i, (i + 1) % s.sites);
      out.emplace_back(i, (i + s.sites - 1) % s.sites);
    }
  } else {
    // sites (x, y) -> 2 x + y on the 2 x 2 torus; +-x and +-y hit the same site.
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const int i = 2 * x + y;
        const int jx = 2 * (1 - x) + y;
        const int jy = 2 * x + (1 - y);
        out.emplace_back(i, jx);
        out.emplace_back(i, jx);
        out.emplace_back(i, jy);
        out.emplace_back(i, jy);
      }
  }
  return out;
}

std::vector<int> digits(std::int64_t state, int sites, int n) {
  std::vector<int> occ(sites);
  for (int i = sites - 1; i >= 0; --i) {
    occ[i] = static_cast<int>(state % n);
    state /= n;
  }
  return occ;
}

std::int64_t encode(const std::vector<int>& occ, int n) {
  std::int64_t s = 0;
  for (int o : occ) s = s * n + o;
  return s;
}

}  // namespace

Geometry parse_geometry(const std::string& name) {
  if (name == "chain") return Geometry::chain;
  if (name == "plaquette") return Geometry::plaquette;
  throw InvalidArgument("unknown geometry '" + name + "' (chain or plaquette)");
}

std::string to_string(Geometry g) { return g == Geometry::chain ? "chain" : "plaquette"; }

void SmallLatticeSpec::validate() const {
  if (geometry == Geometry::chain && (sites < 2 || sites > 4))
    throw InvalidArgument("oracle chain needs 2 to 4 sites");
  if (geometry == Geometry::plaquette && sites != 4)
    throw InvalidArgument("the plaquette has exactly 4 sites");
  if (n < 2 || n > 5) throw InvalidArgument("oracle truncation must be between 2 and 5");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("t must be >= 0");
  if (!std::isfinite(mu_bar)) throw InvalidArgument("mu_bar must be finite");
  if (dimension() > 10000) throw InvalidArgument("oracle Hilbert space exceeds 1e4 states");
}

std::int64_t SmallLatticeSpec::dimension() const {
  std::int64_t dim = 1;
  for (int i = 0; i < sites; ++i) {
    dim *= n;
    if (dim > 10000) return dim;
  }
  return dim;
}

int SmallLatticeSpec::coordination() const { return geometry == Geometry::chain ? 2 : 4; }

ModelParams SmallLatticeSpec::model_params() const {
  ModelParams p;
  if (geometry == Geometry::chain) {
    p.d = 1;
    p.extents = {sites};
  } else {
    p.d = 2;
    p.extents = {2, 2};
  }
  p.n_trunc = n;
  p.t = t;
  p.mu_bar = mu_bar;
  return p;
}

Eigen::MatrixXd build_hamiltonian(const SmallLatticeSpec& spec) {
  spec.validate();
  const auto dim = spec.dimension();
  const double J = spec.t / spec.coordination();
  const auto slots = neighbour_slots(spec);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (std::int64_t s = 0; s < dim; ++s) {
    auto occ = digits(s, spec.sites, spec.n);
    for (int o : occ) H(s, s) += 0.5 * o * (o - 1) - spec.mu_bar * o;
    // -J b_i^dag b_j for every slot (i, j); the reverse slot supplies h.c.
    for (auto [i, j] : slots) {
      if (occ[j] == 0 || occ[i] == spec.n - 1) continue;
      const double amp = std::sqrt(static_cast<double>(occ[j])) * std::sqrt(static_cast<double>(occ[i] + 1));
      auto nxt = occ;
      --nxt[j];
      ++nxt[i];
      H(encode(nxt, spec.n), s) += -J * amp;
    }
  }
  return H;
}

Eigen::MatrixXd total_number(const SmallLatticeSpec& spec) {
  spec.validate();
  const auto dim = spec.dimension();
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(dim, dim);
  for (std::int64_t s = 0; s < dim; ++s)
    for (int o : digits(s, spec.sites, spec.n)) N(s, s) += o;
  return N;
}

ExactGroundState exact_ground_state(const SmallLatticeSpec& spec) {
  const Eigen::MatrixXd H = build_hamiltonian(spec);
  ExactGroundState gs;
  gs.hermiticity_defect = (H - H.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense diagonalization failed", 0.0);
  gs.energy = es.eigenvalues()(0);
  gs.gap = H.rows() > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0) : 0.0;
  gs.vector = es.eigenvectors().col(0);
  // Fix the overall sign: largest component positive.
  Eigen::Index imax;
  gs.vector.cwiseAbs().maxCoeff(&imax);
  if (gs.vector(imax) < 0) gs.vector = -gs.vector;

  const int L = spec.sites, n = spec.n;
  const auto dim = spec.dimension();
  gs.b_expectation = Eigen::VectorXd::Zero(L);
  gs.two_point = Eigen::MatrixXd::Zero(L, L);
  double n1 = 0.0, n2 = 0.0;
  for (std::int64_t s = 0; s < dim; ++s) {
    const double cs = gs.vector(s);
    if (cs == 0.0) continue;
    const auto occ = digits(s, L, n);
    int tot = 0;
    for (int o : occ) tot += o;
    n1 += cs * cs * tot;
    n2 += cs * cs * tot * tot;
    for (int i = 0; i < L; ++i) {
      gs.two_point(i, i) += cs * cs * occ[i];
      if (occ[i] > 0) {
        // <s'| b_i |s> with s' = s - e_i
        auto lower = occ;
        --lower[i];
        gs.b_expectation(i) += gs.vector(encode(lower, n)) * std::sqrt(static_cast<double>(occ[i])) * cs;
      }
      for (int j = 0; j < L; ++j) {
        if (i == j || occ[j] == 0 || occ[i] == n - 1) continue;
        auto nxt = occ;
        --nxt[j];
        ++nxt[i];
        gs.two_point(i, j) += gs.vector(encode(nxt, n)) * std::sqrt(static_cast<double>(occ[j])) *
                              std::sqrt(static_cast<double>(occ[i] + 1)) * cs;
      }
    }
  }
  gs.number_mean = n1;
  gs.number_variance = n2 - n1 * n1;
  return gs;
}

EnergyComparison compare_energy(const SmallLatticeSpec& spec) {
  const auto gs = exact_ground_state(spec);
  const ModelParams p = spec.model_params();
  const auto mfs = self_consistent_phi(p);
  const MomentumGrid grid(p.d, p.extents);
  const double N = static_cast<double>(grid.size());

  EnergyComparison cmp;
  cmp.exact = gs.energy;
  cmp.phi = mfs.phi;
  cmp.mean_field = N * (mfs.energies(0) + p.t * mfs.phi * mfs.phi);
  double zero_point = 0.0;
  for (std::int64_t i = 0; i < grid.size(); ++i) {
    const auto blk = build_mode_block(mfs, p, grid.momentum(i));
    const auto r = diagonalize_block(blk);
    zero_point += 0.5 * (r.omegas.sum() - blk.M.trace());
    cmp.zero_modes += r.zero_mode_count;
  }
  cmp.quadratic = cmp.mean_field + zero_point;
  const double scale = std::abs(cmp.exact) > 0.0 ? std::abs(cmp.exact) : 1.0;
  cmp.rel_mean_field = std::abs(cmp.mean_field - cmp.exact) / scale;
  cmp.rel_quadratic = std::abs(cmp.quadratic - cmp.exact) / scale;
  return cmp;
}

}  // namespace bhc
