#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bhc/onsite.hpp"
#include "bhc/quadratic.hpp"

using namespace bhc;

namespace {
ModelParams at(double t, double mu) {
  ModelParams p;
  p.t = t;
  p.mu_bar = mu;
  return p;
}
}  // namespace

TEST_CASE("no hopping: M is the excitation ladder and P vanishes") {
  const auto p = at(0.0, 0.3);
  const auto mfs = self_consistent_phi(p);
  const std::vector<double> k{0.4, 1.1};
  const auto blk = build_mode_block(mfs, p, k);
  REQUIRE(blk.flavors() == 5);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      const double expect = a == b ? mfs.energies(a + 1) - mfs.energies(0) : 0.0;
      CHECK(blk.M(a, b) == doctest::Approx(expect).epsilon(1e-14));
      CHECK(blk.P(a, b) == 0.0);
    }
}

TEST_CASE("Mott pairing only couples the 0 and 2 boson flavors") {
  const auto p = at(0.1, std::sqrt(2.0) - 1.0);
  const auto mfs = self_consistent_phi(p);
  REQUIRE(mfs.phi == 0.0);
  // flavors 1 and 2 (index 0, 1) are |0> and |2> in the n=1 lobe at this mu
  const std::vector<double> k{0.2, 0.0};
  const auto blk = build_mode_block(mfs, p, k);
  for (int a = 0; a < blk.flavors(); ++a)
    for (int b = 0; b < blk.flavors(); ++b)
      if (a > 1 || b > 1) CHECK(blk.P(a, b) == 0.0);
  CHECK(std::abs(blk.P(0, 1)) > 0.0);
}

TEST_CASE("k and -k give identical blocks") {
  const auto p = at(0.2, 0.3);
  const auto mfs = self_consistent_phi(p);
  const std::vector<double> k{0.7, 2.2}, mk{2 * std::numbers::pi - 0.7, 2 * std::numbers::pi - 2.2};
  const auto a = build_mode_block(mfs, p, k), b = build_mode_block(mfs, p, mk);
  CHECK((a.M - b.M).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((a.P - b.P).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("H2 is symmetric and affine in eta") {
  for (double t : {0.05, 0.17, 0.3})
    for (double mu : {0.2, 0.41, 0.7}) {
      const auto p = at(t, mu);
      const auto mfs = self_consistent_phi(p);
      const auto b0 = build_mode_block_eta(mfs, p, -0.6);
      const auto b1 = build_mode_block_eta(mfs, p, 0.1);
      const auto b2 = build_mode_block_eta(mfs, p, 0.8);
      const Eigen::MatrixXd h = b1.h2();
      CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
      // collinearity: b1 = b0 + (0.7/1.4)(b2 - b0)
      const Eigen::MatrixXd lin = b0.h2() + 0.5 * (b2.h2() - b0.h2());
      CHECK((h - lin).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
