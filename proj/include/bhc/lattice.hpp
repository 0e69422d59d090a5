#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bhc {

// Periodic d-dimensional cubic lattice momenta k_j = 2*pi*m_j / L_j stored as
// integer index vectors in lexicographic order of (m_1, ..., m_d), with the
// last component varying fastest.
class MomentumGrid {
 public:
  MomentumGrid(int d, std::vector<int> extents);

  int dimension() const { return d_; }
  const std::vector<int>& extents() const { return extents_; }
  std::int64_t size() const { return size_; }

  std::span<const int> index(std::int64_t i) const {
    return {indices_.data() + i * d_, static_cast<std::size_t>(d_)};
  }
  std::vector<double> momentum(std::int64_t i) const;
  // Position of -k (mod 2*pi) in the grid.
  std::int64_t negate(std::int64_t i) const;
  bool self_conjugate(std::int64_t i) const;
  std::int64_t position(std::span<const int> idx) const;
  double eta(std::int64_t i) const;

 private:
  int d_;
  std::vector<int> extents_;
  std::int64_t size_;
  std::vector<int> indices_;
};

// eta_k = (1/d) sum_j cos k_j. The cosines are summed in ascending order so
// the value is invariant under permutations of the components.
double eta(std::span<const double> k);
// Same, from grid indices; m and L-m give bitwise-identical results.
double eta_from_indices(std::span<const int> m, std::span<const int> extents);

// Grid points grouped by bitwise-equal eta. Blocks depend on k only through
// eta, so each class is diagonalized once.
struct EtaClasses {
  std::vector<double> values;                // ascending
  std::vector<std::int64_t> multiplicity;    // points per class
  std::vector<std::int32_t> class_of_point;  // grid order
};

EtaClasses eta_classes(const MomentumGrid& grid);

struct KPoint {
  std::vector<double> k;
  std::vector<int> index;  // grid index vector; empty when not snapped
};

// Piecewise-linear path through the endpoints with samples_per_segment points
// per segment (endpoints included). With a grid, points are snapped to the
// nearest grid momenta and consecutive duplicates removed.
std::vector<KPoint> k_path(const std::vector<std::vector<double>>& endpoints,
                           int samples_per_segment, const MomentumGrid* grid = nullptr);

}  // namespace bhc
