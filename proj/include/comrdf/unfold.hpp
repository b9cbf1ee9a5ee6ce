#pragma once

// Rebuilding molecules split across periodic images, and their centres of
// mass.
//
// No connectivity is used. Each site i is compared with its predecessor
// i - 1 in declaration order; if the reduced displacement b between them is
// not already the minimum image d = b - NINT(b), site i is moved by the
// lattice vector -NINT(b). Sweeps repeat until one makes no change. This is
// correct as long as every pair of consecutive sites is closer than half
// the shortest periodic cell width.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "comrdf/error.hpp"
#include "comrdf/geometry.hpp"

namespace comrdf {

// Reduced-squared units. Far below any real bond in reduced coordinates,
// far above round-off.
inline constexpr double kDefaultUnfoldTol = 1e-6;

struct MoleculeSnapshot {
  std::vector<Vec3> site_positions;
  std::vector<double> site_masses;
};

struct UnfoldResult {
  std::vector<Vec3> positions;
  int sweeps = 0;  // including the final sweep that changed nothing
  int updates = 0; // number of site moves over all sweeps
};

// max_sweeps defaults to the site count + 2. Throws UnfoldError when the
// limit is hit, which means the molecule is too large for the cell.
inline UnfoldResult unfold_molecule(std::span<const Vec3> sites, const CellTensor& cell,
                                    double tol = kDefaultUnfoldTol,
                                    std::optional<int> max_sweeps = {},
                                    const std::string& label = "molecule") {
  UnfoldResult res;
  res.positions.assign(sites.begin(), sites.end());
  if (!cell.periodic() || sites.size() < 2) {
    res.sweeps = 1;
    return res;
  }
  const int limit = max_sweeps.value_or(static_cast<int>(sites.size()) + 2);
  const ImageConvention conv = cell.imcon();
  const int np = periodic_dims(conv);

  std::vector<ReducedCoords> s(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i)
    s[i] = cell.to_reduced(sites[i]);

  bool folded = true;
  while (folded) {
    if (res.sweeps >= limit)
      throw UnfoldError(label + " could not be unfolded within " + std::to_string(limit) +
                        " sweeps; it is probably larger than half the cell");
    ++res.sweeps;
    folded = false;
    for (std::size_t i = 1; i < s.size(); ++i) {
      const Vec3 b = s[i].s - s[i - 1].s;
      Vec3 shift; // NINT(b) on periodic components
      if (np >= 1)
        shift.x = nint(b.x);
      if (np >= 2)
        shift.y = nint(b.y);
      if (np >= 3)
        shift.z = nint(b.z);
      const Vec3 d = b - shift;
      if (std::abs(b.length_sq() - d.length_sq()) > tol) {
        folded = true;
        ++res.updates;
        s[i].s -= shift;
        res.positions[i] -= cell.to_real({shift});
      }
    }
  }
  return res;
}

inline UnfoldResult unfold_molecule(const MoleculeSnapshot& mol, const CellTensor& cell,
                                    double tol = kDefaultUnfoldTol) {
  return unfold_molecule(mol.site_positions, cell, tol);
}

// Mass-weighted mean position. Zero-mass sites drop out; returns nullopt
// when the molecule has no mass at all.
inline std::optional<Vec3> center_of_mass(std::span<const Vec3> positions,
                                          std::span<const double> masses) {
  if (positions.size() != masses.size())
    throw std::invalid_argument("center_of_mass: positions and masses differ in length");
  double total = 0.0;
  Vec3 acc;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (masses[i] == 0.0)
      continue;
    acc += positions[i] * masses[i];
    total += masses[i];
  }
  if (total == 0.0)
    return std::nullopt;
  if (positions.size() == 1)
    return positions[0];
  return Vec3{acc.x / total, acc.y / total, acc.z / total};
}

inline std::optional<Vec3> center_of_mass(const MoleculeSnapshot& mol) {
  return center_of_mass(mol.site_positions, mol.site_masses);
}

// Unfold, take the centre of mass, and put it back inside the cell.
inline std::optional<Vec3> molecule_com_wrapped(std::span<const Vec3> sites,
                                                std::span<const double> masses,
                                                const CellTensor& cell,
                                                double tol = kDefaultUnfoldTol,
                                                const std::string& label = "molecule") {
  const auto unfolded = unfold_molecule(sites, cell, tol, std::nullopt, label);
  const auto com = center_of_mass(unfolded.positions, masses);
  if (!com)
    return std::nullopt;
  return wrap_point(*com, cell);
}

inline std::optional<Vec3> molecule_com_wrapped(const MoleculeSnapshot& mol,
                                                const CellTensor& cell,
                                                double tol = kDefaultUnfoldTol) {
  return molecule_com_wrapped(mol.site_positions, mol.site_masses, cell, tol);
}

} // namespace comrdf
