#include "bhc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "bhc/errors.hpp"

namespace bhc {

MomentumGrid::MomentumGrid(int d, std::vector<int> extents)
    : d_(d), extents_(std::move(extents)), size_(1) {
  if (d_ < 1 || static_cast<int>(extents_.size()) != d_)
    throw InvalidArgument("momentum grid: extents must have d entries");
  for (int e : extents_) {
    if (e < 2) throw InvalidArgument("momentum grid: extents must be >= 2");
    size_ *= e;
  }
  indices_.resize(static_cast<std::size_t>(size_ * d_));
  std::vector<int> m(d_, 0);
  for (std::int64_t i = 0; i < size_; ++i) {
    std::copy(m.begin(), m.end(), indices_.begin() + i * d_);
    for (int j = d_ - 1; j >= 0; --j) {
      if (++m[j] < extents_[j]) break;
      m[j] = 0;
    }
  }
}

std::vector<double> MomentumGrid::momentum(std::int64_t i) const {
  std::vector<double> k(d_);
  auto m = index(i);
  for (int j = 0; j < d_; ++j) k[j] = 2.0 * std::numbers::pi * m[j] / extents_[j];
  return k;
}

std::int64_t MomentumGrid::position(std::span<const int> idx) const {
  std::int64_t pos = 0;
  for (int j = 0; j < d_; ++j) {
    const int e = extents_[j];
    pos = pos * e + ((idx[j] % e) + e) % e;
  }
  return pos;
}

std::int64_t MomentumGrid::negate(std::int64_t i) const {
  std::vector<int> m(index(i).begin(), index(i).end());
  for (int j = 0; j < d_; ++j) m[j] = (extents_[j] - m[j]) % extents_[j];
  return position(m);
}

bool MomentumGrid::self_conjugate(std::int64_t i) const { return negate(i) == i; }

double MomentumGrid::eta(std::int64_t i) const { return eta_from_indices(index(i), extents_); }

namespace {

double mean_sorted(std::vector<double>& c) {
  std::sort(c.begin(), c.end());
  double s = 0.0;
  for (double v : c) s += v;
  return s / static_cast<double>(c.size());
}

}  // namespace

double eta(std::span<const double> k) {
  if (k.empty()) throw InvalidArgument("eta: empty momentum");
  std::vector<double> c;
  c.reserve(k.size());
  for (double v : k) c.push_back(std::cos(v));
  return mean_sorted(c);
}

double eta_from_indices(std::span<const int> m, std::span<const int> extents) {
  std::vector<double> c;
  c.reserve(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    const int e = extents[j];
    const int r = ((m[j] % e) + e) % e;
    const int folded = std::min(r, e - r);
    c.push_back(std::cos(2.0 * std::numbers::pi * folded / e));
  }
  return mean_sorted(c);
}

EtaClasses eta_classes(const MomentumGrid& grid) {
  std::map<double, std::int64_t> counts;
  std::vector<double> per_point(static_cast<std::size_t>(grid.size()));
  for (std::int64_t i = 0; i < grid.size(); ++i) {
    per_point[i] = grid.eta(i);
    ++counts[per_point[i]];
  }
  EtaClasses out;
  std::map<double, std::int32_t> slot;
  for (const auto& [v, c] : counts) {
    slot[v] = static_cast<std::int32_t>(out.values.size());
    out.values.push_back(v);
    out.multiplicity.push_back(c);
  }
  out.class_of_point.resize(per_point.size());
  for (std::size_t i = 0; i < per_point.size(); ++i) out.class_of_point[i] = slot[per_point[i]];
  return out;
}

std::vector<KPoint> k_path(const std::vector<std::vector<double>>& endpoints,
                           int samples_per_segment, const MomentumGrid* grid) {
  if (endpoints.empty()) throw InvalidArgument("k_path: empty path");
  const std::size_t d = endpoints.front().size();
  const double two_pi = 2.0 * std::numbers::pi;
  for (const auto& p : endpoints) {
    if (p.size() != d) throw InvalidArgument("k_path: inconsistent endpoint dimensions");
    for (double v : p)
      if (v < -1e-12 || v >= two_pi) throw InvalidArgument("k_path: endpoint outside [0, 2pi)");
  }
  if (grid && static_cast<std::size_t>(grid->dimension()) != d)
    throw InvalidArgument("k_path: grid dimension does not match endpoints");

  std::vector<std::vector<double>> raw;
  if (endpoints.size() == 1) {
    raw.push_back(endpoints.front());
  } else {
    if (samples_per_segment < 2) throw InvalidArgument("k_path: need >= 2 samples per segment");
    for (std::size_t s = 0; s + 1 < endpoints.size(); ++s) {
      const auto& a = endpoints[s];
      const auto& b = endpoints[s + 1];
      for (int i = (s == 0 ? 0 : 1); i < samples_per_segment; ++i) {
        const double f = static_cast<double>(i) / (samples_per_segment - 1);
        std::vector<double> k(d);
        for (std::size_t j = 0; j < d; ++j) k[j] = a[j] + f * (b[j] - a[j]);
        raw.push_back(std::move(k));
      }
    }
  }

  std::vector<KPoint> out;
  for (auto& k : raw) {
    if (!grid) {
      out.push_back({std::move(k), {}});
      continue;
    }
    std::vector<int> idx(d);
    for (std::size_t j = 0; j < d; ++j) {
      const int e = grid->extents()[j];
      idx[j] = static_cast<int>(std::lround(k[j] * e / two_pi)) % e;
    }
    if (!out.empty() && out.back().index == idx) continue;
    std::vector<double> snapped(d);
    for (std::size_t j = 0; j < d; ++j) snapped[j] = two_pi * idx[j] / grid->extents()[j];
    out.push_back({std::move(snapped), std::move(idx)});
  }
  return out;
}

}  // namespace bhc
