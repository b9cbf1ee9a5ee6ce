#pragma once

// Centre-of-mass pair histograms and their normalisation into g(r) and
// cumulative coordination numbers.
//
// Collection: every unordered molecule pair at minimum-image distance
// r <= rmax lands in bin n = 1 + NINT(r/dr) of both the (a, b) and (b, a)
// histograms. Bin n is centred on r_n = (n - 1) dr.
//
// Averaging, per ordered type pair (a, b):
//   hbar(n) = counts(n) / (frames * N_a)
//   g(n)    = hbar(n) / (V_shell(n) * rho_b),  rho_b = N_b / <V>
//   pop(n)  = sum_{k <= n} hbar(k)
// with V_shell(n) the volume between max(r_n - dr/2, 0) and min(r_n + dr/2, rmax).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "comrdf/field.hpp"
#include "comrdf/geometry.hpp"

namespace comrdf {

// 1-based histogram bin for distance r.
inline long long bin_index(double r, double dr) {
  return 1 + static_cast<long long>(nint(r / dr));
}

inline std::size_t bin_count(double rmax, double dr) {
  return static_cast<std::size_t>(bin_index(rmax, dr));
}

// Volume of the part of bin n's shell where pairs are counted: the shell is
// clipped below at r = 0 and above at the cutoff.
inline double shell_volume(long long n, double dr,
                           double rmax = std::numeric_limits<double>::infinity()) {
  const double center = static_cast<double>(n - 1) * dr;
  const double outer = std::min(center + 0.5 * dr, rmax);
  const double inner = std::max(center - 0.5 * dr, 0.0);
  if (!(outer > inner))
    return 0.0;
  return 4.0 / 3.0 * std::numbers::pi * (outer * outer * outer - inner * inner * inner);
}

class PairHistogram {
public:
  PairHistogram() = default;
  PairHistogram(std::size_t ntypes, double rmax, double dr)
    : ntypes_(ntypes), rmax_(rmax), dr_(dr), nbins_(bin_count(rmax, dr)),
      counts_(ntypes * ntypes * nbins_, 0) {
    if (!(dr > 0.0) || !(rmax > 0.0))
      throw std::invalid_argument("PairHistogram: rmax and dr must be positive");
  }

  std::size_t type_count() const { return ntypes_; }
  std::size_t bins() const { return nbins_; }
  double rmax() const { return rmax_; }
  double dr() const { return dr_; }
  long long frames_used() const { return frames_used_; }
  double volume_sum() const { return volume_sum_; }
  // Set once any accumulated frame had rmax beyond its minimum-image-safe
  // radius.
  bool rmax_exceeded_safe_radius() const { return beyond_safe_radius_; }

  // Types are 0-based here; n is the 1-based bin.
  std::uint64_t count(std::size_t a, std::size_t b, long long n) const {
    return counts_[index(a, b, static_cast<std::size_t>(n - 1))];
  }
  std::span<const std::uint64_t> raw_counts() const { return counts_; }

  void add_pair(std::size_t a, std::size_t b, long long n) {
    const auto k = static_cast<std::size_t>(n - 1);
    ++counts_[index(a, b, k)];
    ++counts_[index(b, a, k)];
  }

  void add_frame(double volume, bool beyond_safe_radius) {
    volume_sum_ += volume;
    ++frames_used_;
    beyond_safe_radius_ = beyond_safe_radius_ || beyond_safe_radius;
  }

  bool same_shape(const PairHistogram& o) const {
    return ntypes_ == o.ntypes_ && nbins_ == o.nbins_ && dr_ == o.dr_ && rmax_ == o.rmax_;
  }

  PairHistogram& operator+=(const PairHistogram& o) {
    if (!same_shape(o))
      throw std::logic_error("PairHistogram merge: histogram shapes differ");
    for (std::size_t i = 0; i < counts_.size(); ++i)
      counts_[i] += o.counts_[i];
    frames_used_ += o.frames_used_;
    volume_sum_ += o.volume_sum_;
    beyond_safe_radius_ = beyond_safe_radius_ || o.beyond_safe_radius_;
    return *this;
  }

  friend bool operator==(const PairHistogram&, const PairHistogram&) = default;

private:
  std::size_t index(std::size_t a, std::size_t b, std::size_t k) const {
    return (a * ntypes_ + b) * nbins_ + k;
  }

  std::size_t ntypes_ = 0;
  double rmax_ = 0.0;
  double dr_ = 0.0;
  std::size_t nbins_ = 0;
  std::vector<std::uint64_t> counts_;
  long long frames_used_ = 0;
  double volume_sum_ = 0.0;
  bool beyond_safe_radius_ = false;
};

inline PairHistogram merge(PairHistogram a, const PairHistogram& b) {
  a += b;
  return a;
}

struct TypedPoint {
  std::size_t type = 0; // 0-based molecule type
  Vec3 position;
};

// Adds one configuration. Points are expected to be wrapped into the cell.
inline void accumulate_frame(PairHistogram& hist, std::span<const TypedPoint> coms,
                             const CellTensor& cell) {
  const double rmax = hist.rmax();
  const double dr = hist.dr();
  const bool periodic = cell.periodic();
  const ImageConvention conv = cell.imcon();

  std::vector<Vec3> red(coms.size());
  for (std::size_t i = 0; i < coms.size(); ++i) {
    if (coms[i].type >= hist.type_count())
      throw std::out_of_range("accumulate_frame: molecule type out of range");
    red[i] = periodic ? cell.to_reduced(coms[i].position).s : coms[i].position;
  }

  for (std::size_t i = 0; i + 1 < coms.size(); ++i) {
    for (std::size_t j = i + 1; j < coms.size(); ++j) {
      double r;
      if (periodic) {
        const Vec3 d = min_image_displacement({red[i]}, {red[j]}, conv);
        r = cell.to_real({d}).length();
      } else {
        r = (red[j] - red[i]).length();
      }
      if (r <= rmax)
        hist.add_pair(coms[i].type, coms[j].type, bin_index(r, dr));
    }
  }
  hist.add_frame(cell_volume(cell), rmax > min_image_safe_radius(cell));
}

// Five-point least-squares quadratic smoothing. The two points at each end
// pass through unchanged; sequences shorter than five are returned as is.
inline std::vector<double> smooth_rdf(std::span<const double> g) {
  std::vector<double> out(g.begin(), g.end());
  if (g.size() < 5)
    return out;
  for (std::size_t n = 2; n + 2 < g.size(); ++n)
    out[n] = (-3.0 * g[n - 2] + 12.0 * g[n - 1] + 17.0 * g[n] + 12.0 * g[n + 1] -
              3.0 * g[n + 2]) /
             35.0;
  return out;
}

struct RdfTable {
  double dr = 0.0;
  std::vector<double> bin_centers;
  std::vector<std::pair<int, int>> pair_labels; // 1-based type numbers
  std::vector<std::vector<double>> g;           // [pair][bin]
  std::vector<std::vector<double>> pop;         // [pair][bin]
  double mean_volume = 0.0;
  long long frames_used = 0;
  std::vector<int> excluded_types;              // 1-based, massless types
};

// Column order: like pairs (1,1), (2,2), ... then unlike pairs (1,2),
// (1,3), ..., (2,3), ... Types not in `included` are left out.
inline std::vector<std::pair<int, int>> pair_order(const std::vector<bool>& included) {
  std::vector<std::pair<int, int>> out;
  const int nt = static_cast<int>(included.size());
  for (int a = 0; a < nt; ++a)
    if (included[static_cast<std::size_t>(a)])
      out.emplace_back(a + 1, a + 1);
  for (int a = 0; a < nt; ++a)
    for (int b = a + 1; b < nt; ++b)
      if (included[static_cast<std::size_t>(a)] && included[static_cast<std::size_t>(b)])
        out.emplace_back(a + 1, b + 1);
  return out;
}

// molecule_counts[t] is N for type t (0-based). Throws std::runtime_error
// when no frames were accumulated.
inline RdfTable finalize(const PairHistogram& hist, std::span<const long long> molecule_counts,
                         const std::vector<bool>& included, bool smooth) {
  if (hist.frames_used() < 1)
    throw std::runtime_error("no configurations processed");
  if (molecule_counts.size() != hist.type_count() || included.size() != hist.type_count())
    throw std::invalid_argument("finalize: type count does not match the histogram");

  RdfTable t;
  t.dr = hist.dr();
  t.frames_used = hist.frames_used();
  t.mean_volume = hist.volume_sum() / static_cast<double>(hist.frames_used());
  if (!(t.mean_volume > 0.0))
    throw std::runtime_error("cannot normalise g(r): the trajectory has no periodic cell volume");
  for (std::size_t k = 0; k < included.size(); ++k)
    if (!included[k])
      t.excluded_types.push_back(static_cast<int>(k) + 1);

  const std::size_t nb = hist.bins();
  t.bin_centers.resize(nb);
  for (std::size_t k = 0; k < nb; ++k)
    t.bin_centers[k] = static_cast<double>(k) * hist.dr();

  const double frames = static_cast<double>(hist.frames_used());
  t.pair_labels = pair_order(included);
  for (const auto& [a1, b1] : t.pair_labels) {
    const auto a = static_cast<std::size_t>(a1 - 1);
    const auto b = static_cast<std::size_t>(b1 - 1);
    const double na = static_cast<double>(molecule_counts[a]);
    const double rho_b = static_cast<double>(molecule_counts[b]) / t.mean_volume;
    std::vector<double> g(nb), pop(nb);
    double cumulative = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      const auto n = static_cast<long long>(k) + 1;
      const double hbar = static_cast<double>(hist.count(a, b, n)) / (frames * na);
      const double vshell = shell_volume(n, hist.dr(), hist.rmax());
      g[k] = vshell > 0.0 ? hbar / (vshell * rho_b) : 0.0;
      cumulative += hbar;
      pop[k] = cumulative;
    }
    t.g.push_back(smooth ? smooth_rdf(g) : std::move(g));
    t.pop.push_back(std::move(pop));
  }
  return t;
}

// Molecule types whose sites are all massless have no centre of mass and
// are excluded.
inline std::vector<bool> types_with_mass(const Topology& topo) {
  std::vector<bool> out;
  for (const auto& m : topo.molecules)
    out.push_back(m.total_mass() > 0.0);
  return out;
}

inline std::vector<long long> molecule_counts(const Topology& topo) {
  std::vector<long long> out;
  for (const auto& m : topo.molecules)
    out.push_back(m.count);
  return out;
}

inline RdfTable finalize(const PairHistogram& hist, const Topology& topo, bool smooth) {
  const auto counts = molecule_counts(topo);
  return finalize(hist, counts, types_with_mass(topo), smooth);
}

} // namespace comrdf
