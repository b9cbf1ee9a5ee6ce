#pragma once

// Cell-tensor algebra for the DL_POLY periodic conventions handled here:
// none (0), cubic (1), orthorhombic (2), parallelepiped (3) and slab (6).
//
// The lattice vectors a, b, c are stored as rows. A point with reduced
// coordinates s sits at r = s.x*a + s.y*b + s.z*c. Cells are centred on the
// origin: a wrapped point has periodic reduced components in [-0.5, 0.5).

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "comrdf/error.hpp"

namespace comrdf {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double f) { x *= f; y *= f; z *= f; return *this; }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(Vec3 a, double f) { return a *= f; }
  friend Vec3 operator*(double f, Vec3 a) { return a *= f; }
  friend bool operator==(const Vec3&, const Vec3&) = default;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double length_sq() const { return dot(*this); }
  double length() const { return std::sqrt(length_sq()); }
  bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

// Fractional coordinates. Kept as a distinct type so real and reduced
// vectors cannot be mixed up silently.
struct ReducedCoords {
  Vec3 s;
  friend bool operator==(const ReducedCoords&, const ReducedCoords&) = default;
};

enum class ImageConvention : int {
  none = 0,
  cubic = 1,
  orthorhombic = 2,
  parallelepiped = 3,
  slab = 6,
};

inline bool is_supported_imcon(int code) {
  return code == 0 || code == 1 || code == 2 || code == 3 || code == 6;
}

inline ImageConvention image_convention_from_code(int code) {
  if (!is_supported_imcon(code))
    throw InputError("unsupported periodic boundary key imcon=" + std::to_string(code) +
                     " (supported: 0, 1, 2, 3, 6)");
  return static_cast<ImageConvention>(code);
}

// Number of leading lattice directions that are periodic.
constexpr int periodic_dims(ImageConvention c) {
  switch (c) {
  case ImageConvention::none: return 0;
  case ImageConvention::slab: return 2;
  default: return 3;
  }
}

// Nearest integer, ties away from zero (Fortran NINT).
inline double nint(double v) { return std::round(v); }

class CellTensor {
public:
  CellTensor() = default;

  // Throws InputError if a periodic cell is singular or violates the shape
  // implied by its convention.
  CellTensor(const Vec3& a, const Vec3& b, const Vec3& c, ImageConvention imcon)
    : rows_{a, b, c}, imcon_(imcon) {
    validate();
    compute_inverse();
  }

  static CellTensor cubic(double length) {
    return {{length, 0, 0}, {0, length, 0}, {0, 0, length}, ImageConvention::cubic};
  }
  static CellTensor orthorhombic(double lx, double ly, double lz) {
    return {{lx, 0, 0}, {0, ly, 0}, {0, 0, lz}, ImageConvention::orthorhombic};
  }

  const Vec3& a() const { return rows_[0]; }
  const Vec3& b() const { return rows_[1]; }
  const Vec3& c() const { return rows_[2]; }
  const Vec3& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  ImageConvention imcon() const { return imcon_; }
  bool periodic() const { return imcon_ != ImageConvention::none; }

  double determinant() const { return rows_[0].dot(rows_[1].cross(rows_[2])); }

  Vec3 to_real(const ReducedCoords& r) const {
    return rows_[0] * r.s.x + rows_[1] * r.s.y + rows_[2] * r.s.z;
  }

  ReducedCoords to_reduced(const Vec3& r) const {
    if (!invertible_)
      throw InputError("cannot compute reduced coordinates: cell tensor is singular");
    return {{inv_[0][0] * r.x + inv_[0][1] * r.y + inv_[0][2] * r.z,
             inv_[1][0] * r.x + inv_[1][1] * r.y + inv_[1][2] * r.z,
             inv_[2][0] * r.x + inv_[2][1] * r.y + inv_[2][2] * r.z}};
  }

  bool invertible() const { return invertible_; }

private:
  void validate() const {
    if (imcon_ == ImageConvention::none)
      return;
    for (const auto& r : rows_)
      if (!r.is_finite())
        throw InputError("cell vector is not finite");
    const bool diagonal = rows_[0].y == 0 && rows_[0].z == 0 && rows_[1].x == 0 &&
                          rows_[1].z == 0 && rows_[2].x == 0 && rows_[2].y == 0;
    if (imcon_ == ImageConvention::cubic &&
        !(diagonal && rows_[0].x == rows_[1].y && rows_[1].y == rows_[2].z))
      throw InputError("imcon=1 requires a cubic cell (equal diagonal, zero off-diagonal)");
    if (imcon_ == ImageConvention::orthorhombic && !diagonal)
      throw InputError("imcon=2 requires a diagonal cell tensor");
    if (determinant() == 0.0)
      throw InputError("cell tensor is singular (zero determinant)");
  }

  // Inverse via the adjugate. Row-vector lattice, so M = [a b c] as columns
  // and M^-1 rows are (b x c, c x a, a x b) / det.
  void compute_inverse() {
    const double det = determinant();
    if (det == 0.0 || !std::isfinite(det)) {
      invertible_ = false;
      return;
    }
    const Vec3 bc = rows_[1].cross(rows_[2]);
    const Vec3 ca = rows_[2].cross(rows_[0]);
    const Vec3 ab = rows_[0].cross(rows_[1]);
    const double inv_det = 1.0 / det;
    inv_ = {{{bc.x * inv_det, bc.y * inv_det, bc.z * inv_det},
             {ca.x * inv_det, ca.y * inv_det, ca.z * inv_det},
             {ab.x * inv_det, ab.y * inv_det, ab.z * inv_det}}};
    invertible_ = true;
  }

  std::array<Vec3, 3> rows_{};
  ImageConvention imcon_ = ImageConvention::none;
  std::array<std::array<double, 3>, 3> inv_{};
  bool invertible_ = false;
};

inline ReducedCoords to_reduced(const Vec3& r, const CellTensor& cell) {
  return cell.to_reduced(r);
}

inline Vec3 to_real(const ReducedCoords& s, const CellTensor& cell) {
  return cell.to_real(s);
}

// d = b - NINT(b) on the periodic components of b = to - from.
inline Vec3 min_image_displacement(const ReducedCoords& from, const ReducedCoords& to,
                                   ImageConvention imcon) {
  Vec3 d = to.s - from.s;
  const int np = periodic_dims(imcon);
  if (np >= 1)
    d.x -= nint(d.x);
  if (np >= 2)
    d.y -= nint(d.y);
  if (np >= 3)
    d.z -= nint(d.z);
  return d;
}

inline Vec3 min_image_displacement(const ReducedCoords& from, const ReducedCoords& to,
                                   int imcon_code) {
  return min_image_displacement(from, to, image_convention_from_code(imcon_code));
}

// Integer lattice shift that brings reduced coordinates into [-0.5, 0.5).
inline Vec3 wrap_shift(const ReducedCoords& r, ImageConvention imcon) {
  Vec3 k;
  const int np = periodic_dims(imcon);
  if (np >= 1)
    k.x = std::floor(r.s.x + 0.5);
  if (np >= 2)
    k.y = std::floor(r.s.y + 0.5);
  if (np >= 3)
    k.z = std::floor(r.s.z + 0.5);
  return k;
}

// Translates r by a lattice vector so that it lies in the origin-centred
// cell. The point is returned untouched when no shift is needed.
inline Vec3 wrap_point(const Vec3& r, const CellTensor& cell) {
  if (!cell.periodic())
    return r;
  const Vec3 k = wrap_shift(cell.to_reduced(r), cell.imcon());
  if (k == Vec3{})
    return r;
  return r - cell.to_real({k});
}

inline double cell_volume(const CellTensor& cell) { return std::abs(cell.determinant()); }

// Radius of the largest sphere that fits inside the cell, i.e. the largest
// distance for which the minimum-image convention is exact. Infinite when
// there is no periodicity.
inline double min_image_safe_radius(const CellTensor& cell) {
  const int np = periodic_dims(cell.imcon());
  if (np == 0)
    return std::numeric_limits<double>::infinity();
  const double vol = cell_volume(cell);
  const Vec3 faces[3] = {cell.b().cross(cell.c()), cell.c().cross(cell.a()),
                         cell.a().cross(cell.b())};
  double width = std::numeric_limits<double>::infinity();
  for (int i = 0; i < np; ++i)
    width = std::min(width, vol / faces[i].length());
  return 0.5 * width;
}

// Minimum-image distance between two real-space points.
inline double min_image_distance(const Vec3& p, const Vec3& q, const CellTensor& cell) {
  if (!cell.periodic())
    return (q - p).length();
  const Vec3 d = min_image_displacement(cell.to_reduced(p), cell.to_reduced(q), cell.imcon());
  return cell.to_real({d}).length();
}

} // namespace comrdf
