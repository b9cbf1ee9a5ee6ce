#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace comrdf;
namespace ts = testing_support;

TEST(ToReduced, CubicDiagonalScaling) {
  const auto cell = CellTensor::cubic(10.0);
  const auto s = to_reduced({5, 5, 5}, cell);
  EXPECT_DOUBLE_EQ(s.s.x, 0.5);
  EXPECT_DOUBLE_EQ(s.s.y, 0.5);
  EXPECT_DOUBLE_EQ(s.s.z, 0.5);
  EXPECT_EQ(to_reduced({0, 0, 0}, cell).s, (Vec3{0, 0, 0}));
}

TEST(ToReduced, TriclinicMatchesLinearSolve) {
  const Vec3 a{10, 0, 0}, b{2, 10, 0}, c{0, 1, 10};
  const CellTensor cell(a, b, c, ImageConvention::parallelepiped);
  const Vec3 expected = ts::solve_reduced(a, b, c, {1, 2, 3});
  const auto s = to_reduced({1, 2, 3}, cell);
  EXPECT_NEAR(s.s.x, expected.x, 1e-15);
  EXPECT_NEAR(s.s.y, expected.y, 1e-15);
  EXPECT_NEAR(s.s.z, expected.z, 1e-15);
  // back substitution by hand: s3 = 0.3, s2 = (2 - 0.3)/10, s1 = (1 - 2 s2)/10
  EXPECT_NEAR(s.s.z, 0.3, 1e-15);
  EXPECT_NEAR(s.s.y, 0.17, 1e-15);
  EXPECT_NEAR(s.s.x, 0.066, 1e-15);
}

TEST(ToReduced, SingularCellRejected) {
  EXPECT_THROW(CellTensor({1, 0, 0}, {2, 0, 0}, {0, 0, 1}, ImageConvention::parallelepiped),
               InputError);
  EXPECT_THROW(CellTensor({10, 0, 0}, {0, 11, 0}, {0, 0, 10}, ImageConvention::cubic), InputError);
  EXPECT_THROW(CellTensor({10, 1, 0}, {0, 11, 0}, {0, 0, 10}, ImageConvention::orthorhombic),
               InputError);
  EXPECT_THROW(to_reduced({1, 1, 1}, CellTensor()), InputError);
}

TEST(ToReal, Examples) {
  const auto cell = CellTensor::cubic(10.0);
  EXPECT_EQ(to_real({{0.5, 0.5, 0.5}}, cell), (Vec3{5, 5, 5}));
  EXPECT_EQ(to_real({{0, 0, 0}}, cell), (Vec3{0, 0, 0}));
}

TEST(ToReal, RoundTripRandomPoints) {
  for (int trial = 0; trial < 10; ++trial) {
    const auto cell = ts::random_triclinic(25.0);
    const double L = std::max({cell.a().length(), cell.b().length(), cell.c().length()});
    for (int i = 0; i < 1000; ++i) {
      const Vec3 r{ts::uniform(-40, 40), ts::uniform(-40, 40), ts::uniform(-40, 40)};
      const Vec3 back = to_real(to_reduced(r, cell), cell);
      EXPECT_NEAR(back.x, r.x, 1e-12 * L);
      EXPECT_NEAR(back.y, r.y, 1e-12 * L);
      EXPECT_NEAR(back.z, r.z, 1e-12 * L);
    }
  }
}

TEST(MinImage, Examples) {
  auto d = min_image_displacement({{0, 0, 0}}, {{0.9, 0, 0}}, 1);
  EXPECT_NEAR(d.x, -0.1, 1e-15);
  EXPECT_EQ(d.y, 0.0);
  EXPECT_EQ(d.z, 0.0);

  d = min_image_displacement({{0, 0, 0}}, {{0.9, 0, 0.9}}, 6);
  EXPECT_NEAR(d.x, -0.1, 1e-15);
  EXPECT_EQ(d.z, 0.9);

  d = min_image_displacement({{0, 0, 0}}, {{0.9, 0.9, 0.9}}, 0);
  EXPECT_EQ(d, (Vec3{0.9, 0.9, 0.9}));
}

TEST(MinImage, TiesRoundAwayFromZero) {
  auto d = min_image_displacement({{0, 0, 0}}, {{0.5, 0.5, 0.5}}, 1);
  EXPECT_EQ(d, (Vec3{-0.5, -0.5, -0.5}));
  d = min_image_displacement({{0, 0, 0}}, {{-0.5, 1.5, -1.5}}, 3);
  EXPECT_EQ(d, (Vec3{0.5, -0.5, 0.5}));
  EXPECT_EQ(nint(2.5), 3.0);
  EXPECT_EQ(nint(-2.5), -3.0);
}

TEST(MinImage, UnsupportedConventionRejected) {
  for (int code : {4, 5, 7, -1})
    EXPECT_THROW(min_image_displacement({{0, 0, 0}}, {{0.1, 0, 0}}, code), InputError);
}

TEST(MinImage, TranslationInvarianceAndShrinking) {
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p{ts::uniform(-2, 2), ts::uniform(-2, 2), ts::uniform(-2, 2)};
    const Vec3 q{ts::uniform(-2, 2), ts::uniform(-2, 2), ts::uniform(-2, 2)};
    const Vec3 shift{std::round(ts::uniform(-5, 5)), std::round(ts::uniform(-5, 5)),
                     std::round(ts::uniform(-5, 5))};
    for (auto conv : {ImageConvention::cubic, ImageConvention::slab}) {
      const Vec3 d1 = min_image_displacement({p}, {q}, conv);
      const Vec3 d2 = min_image_displacement({p + shift}, {q + shift}, conv);
      EXPECT_NEAR(d1.x, d2.x, 1e-12);
      EXPECT_NEAR(d1.y, d2.y, 1e-12);
      EXPECT_NEAR(d1.z, d2.z, 1e-12);
      const Vec3 b = q - p;
      EXPECT_LE(std::abs(d1.x), std::abs(b.x) + 1e-15);
      EXPECT_LE(std::abs(d1.y), std::abs(b.y) + 1e-15);
      EXPECT_LE(std::abs(d1.x), 0.5);
      EXPECT_LE(std::abs(d1.y), 0.5);
      if (conv == ImageConvention::cubic)
        EXPECT_LE(std::abs(d1.z), 0.5);
      else
        EXPECT_EQ(d1.z, b.z);
    }
  }
}

TEST(WrapPoint, Examples) {
  const auto cell = CellTensor::cubic(10.0);
  const Vec3 w = wrap_point(to_real({{0.6, 0, 0}}, cell), cell);
  EXPECT_NEAR(to_reduced(w, cell).s.x, -0.4, 1e-15);
  const Vec3 inside{1.25, -3.5, 4.75};
  EXPECT_EQ(wrap_point(inside, cell), inside);
  EXPECT_EQ(wrap_point({25, -25, 7}, CellTensor()), (Vec3{25, -25, 7}));
}

TEST(WrapPoint, SlabLeavesNormalDirection) {
  const CellTensor slab({10, 0, 0}, {0, 10, 0}, {0, 0, 50}, ImageConvention::slab);
  const Vec3 w = wrap_point({7, -8, 40}, slab);
  EXPECT_NEAR(w.x, -3, 1e-12);
  EXPECT_NEAR(w.y, 2, 1e-12);
  EXPECT_EQ(w.z, 40);
}

TEST(WrapPoint, LatticeShiftAndIdempotence) {
  for (int trial = 0; trial < 5; ++trial) {
    const auto cell = ts::random_triclinic(15.0);
    const double L = std::max({cell.a().length(), cell.b().length(), cell.c().length()});
    for (int i = 0; i < 1000; ++i) {
      const Vec3 r{ts::uniform(-60, 60), ts::uniform(-60, 60), ts::uniform(-60, 60)};
      const Vec3 w = wrap_point(r, cell);
      const Vec3 s = to_reduced(w, cell).s;
      EXPECT_GE(s.x, -0.5 - 1e-12);
      EXPECT_LT(s.x, 0.5 + 1e-12);
      EXPECT_GE(s.z, -0.5 - 1e-12);
      EXPECT_LT(s.z, 0.5 + 1e-12);
      // difference is an integer combination of lattice vectors
      const Vec3 k = ts::solve_reduced(cell.a(), cell.b(), cell.c(), r - w);
      const Vec3 lattice = to_real({{std::round(k.x), std::round(k.y), std::round(k.z)}}, cell);
      EXPECT_NEAR((r - w - lattice).length(), 0.0, 1e-9 * L);
      EXPECT_EQ(wrap_point(w, cell), w);
    }
  }
}

TEST(CellVolume, Examples) {
  EXPECT_DOUBLE_EQ(cell_volume(CellTensor::cubic(10)), 1000.0);
  EXPECT_DOUBLE_EQ(cell_volume(CellTensor::orthorhombic(10, 20, 30)), 6000.0);
  for (int i = 0; i < 100; ++i) {
    const auto cell = ts::random_triclinic(12.0);
    const double oracle = std::abs(ts::det_sarrus(cell.a(), cell.b(), cell.c()));
    EXPECT_NEAR(cell_volume(cell), oracle, 1e-12 * oracle);
    // row permutation flips the sign of the determinant only
    const CellTensor swapped(cell.b(), cell.a(), cell.c(), ImageConvention::parallelepiped);
    EXPECT_NEAR(cell_volume(swapped), cell_volume(cell), 1e-12 * oracle);
  }
}

TEST(SafeRadius, HalfShortestWidth) {
  EXPECT_DOUBLE_EQ(min_image_safe_radius(CellTensor::orthorhombic(10, 20, 30)), 5.0);
  EXPECT_TRUE(std::isinf(min_image_safe_radius(CellTensor())));
  const CellTensor slab({10, 0, 0}, {0, 12, 0}, {0, 0, 4}, ImageConvention::slab);
  EXPECT_DOUBLE_EQ(min_image_safe_radius(slab), 5.0);
}
