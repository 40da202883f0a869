#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "skintone/colorimetry.hpp"
#include "skintone/error.hpp"

using namespace skintone;

namespace {

void expect_lab_near(const CieLab& got, double l, double a, double b, double tol) {
  EXPECT_NEAR(got.l_star, l, tol);
  EXPECT_NEAR(got.a_star, a, tol);
  EXPECT_NEAR(got.b_star, b, tol);
}

}  // namespace

TEST(SrgbToLab, WhiteIsReferenceWhite) {
  expect_lab_near(srgb_to_lab({255, 255, 255}), 100.0, 0.0, 0.0, 1e-3);
}

TEST(SrgbToLab, BlackIsOrigin) { expect_lab_near(srgb_to_lab({0, 0, 0}), 0.0, 0.0, 0.0, 1e-3); }

TEST(SrgbToLab, PrimariesMatchIndependentOracle) {
  // The oracle itself is pinned to values computed offline from the primaries.
  const oracle::Lab red = oracle::srgb_to_lab(255, 0, 0);
  EXPECT_NEAR(red.l, 53.2371, 1e-3);
  EXPECT_NEAR(red.a, 80.0901, 1e-3);
  EXPECT_NEAR(red.b, 67.2033, 1e-3);
  expect_lab_near(srgb_to_lab({255, 0, 0}), red.l, red.a, red.b, 0.05);

  const oracle::Lab green = oracle::srgb_to_lab(0, 255, 0);
  EXPECT_NEAR(green.l, 87.7355, 1e-3);
  expect_lab_near(srgb_to_lab({0, 255, 0}), green.l, green.a, green.b, 0.05);

  const oracle::Lab blue = oracle::srgb_to_lab(0, 0, 255);
  EXPECT_NEAR(blue.b, -107.8555, 1e-3);
  expect_lab_near(srgb_to_lab({0, 0, 255}), blue.l, blue.a, blue.b, 0.05);
}

TEST(SrgbToLab, RandomColorsAgreeWithOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> ch(0, 255);
  for (int i = 0; i < 2000; ++i) {
    const int r = ch(rng), g = ch(rng), b = ch(rng);
    const oracle::Lab want = oracle::srgb_to_lab(r, g, b);
    const CieLab got = srgb_to_lab({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                    static_cast<std::uint8_t>(b)});
    expect_lab_near(got, want.l, want.a, want.b, 0.05);
  }
}

TEST(SrgbToLab, LightnessStaysInRange) {
  for (int r = 0; r < 256; r += 5) {
    for (int g = 0; g < 256; g += 5) {
      for (int b = 0; b < 256; b += 5) {
        const CieLab lab = srgb_to_lab({static_cast<std::uint8_t>(r),
                                        static_cast<std::uint8_t>(g),
                                        static_cast<std::uint8_t>(b)});
        ASSERT_GE(lab.l_star, 0.0);
        ASSERT_LE(lab.l_star, 100.0);
      }
    }
  }
}

TEST(SrgbToLab, GrayAxisIsNeutralAndMonotone) {
  double previous = -1.0;
  for (int v = 0; v < 256; ++v) {
    const auto c = static_cast<std::uint8_t>(v);
    const CieLab lab = srgb_to_lab({c, c, c});
    EXPECT_LT(std::fabs(lab.a_star), 1e-3) << v;
    EXPECT_LT(std::fabs(lab.b_star), 1e-3) << v;
    EXPECT_GT(lab.l_star, previous) << v;
    previous = lab.l_star;
  }
}

TEST(SrgbTransfer, EncodeInvertsDecode) {
  for (int v = 0; v < 256; ++v) {
    EXPECT_NEAR(srgb_encode(srgb_decode(v / 255.0)), v / 255.0, 1e-12);
  }
}

TEST(XyzToLab, InvertsLabToXyz) {
  const CieLab lab{65.0, 15.0, 20.0};
  const CieLab back = xyz_to_lab(lab_to_xyz(lab));
  expect_lab_near(back, 65.0, 15.0, 20.0, 1e-9);
  const CieLab dark{3.0, 1.0, -2.0};  // linear segment
  expect_lab_near(xyz_to_lab(lab_to_xyz(dark)), 3.0, 1.0, -2.0, 1e-9);
}

TEST(LabToSrgb, WhiteAndBlackRoundTrip) {
  EXPECT_EQ(lab_to_srgb({100.0, 0.0, 0.0}), (Srgb8{255, 255, 255}));
  EXPECT_EQ(lab_to_srgb({0.0, 0.0, 0.0}), (Srgb8{0, 0, 0}));
}

TEST(LabToSrgb, RedFromOracleValue) {
  const oracle::Lab red = oracle::srgb_to_lab(255, 0, 0);
  EXPECT_EQ(lab_to_srgb({red.l, red.a, red.b}), (Srgb8{255, 0, 0}));
}

TEST(LabToSrgb, OutOfGamutThrows) {
  EXPECT_EQ(error_code_of([] { lab_to_srgb({50.0, 150.0, 0.0}); }), ErrorCode::kOutOfGamut);
  EXPECT_EQ(error_code_of([] { lab_to_srgb({100.0, 0.0, 60.0}); }), ErrorCode::kOutOfGamut);
}

TEST(LabToSrgb, GridRoundTripWithinOneLevel) {
  for (int r = 0; r < 256; r += 17) {
    for (int g = 0; g < 256; g += 17) {
      for (int b = 0; b < 256; b += 17) {
        const Srgb8 c{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                      static_cast<std::uint8_t>(b)};
        const Srgb8 back = lab_to_srgb(srgb_to_lab(c));
        EXPECT_LE(std::abs(back.r - c.r), 1);
        EXPECT_LE(std::abs(back.g - c.g), 1);
        EXPECT_LE(std::abs(back.b - c.b), 1);
      }
    }
  }
}

TEST(HueAngle, DiagonalIsFortyFive) {
  EXPECT_NEAR(hue_angle({60.0, 10.0, 10.0}).degrees, 45.0, 1e-12);
}

TEST(HueAngle, PositiveBAxisIsNinety) {
  EXPECT_NEAR(hue_angle({60.0, 0.0, 10.0}).degrees, 90.0, 1e-12);
}

TEST(HueAngle, FourthQuadrantIsNegative) {
  EXPECT_NEAR(hue_angle({60.0, 12.0, -5.0}).degrees, -22.61986494804043, 1e-9);
}

TEST(HueAngle, RangeIsHalfOpen) {
  EXPECT_DOUBLE_EQ(hue_angle({50.0, -10.0, 0.0}).degrees, 180.0);
  EXPECT_DOUBLE_EQ(hue_angle({50.0, -10.0, -0.0}).degrees, 180.0);
  EXPECT_GT(hue_angle({50.0, -10.0, -1e-9}).degrees, -180.0);
}

TEST(HueAngle, AchromaticIsUndefined) {
  EXPECT_FALSE(has_defined_hue({40.0, 0.0, 0.0}));
  EXPECT_TRUE(has_defined_hue({40.0, 0.0, 1e-12}));
  EXPECT_EQ(error_code_of([] { hue_angle({40.0, 0.0, 0.0}); }), ErrorCode::kUndefinedHue);
}

TEST(HueAngle, StableUnderTristimulusScaling) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ratio(0.05, 1.0);
  std::uniform_real_distribution<double> scale(0.5, 1.0);
  const XyzTristimulus w = d65_white();
  for (int i = 0; i < 500; ++i) {
    const XyzTristimulus xyz{ratio(rng) * w.x, ratio(rng) * w.y, ratio(rng) * w.z};
    const CieLab base = xyz_to_lab(xyz);
    if (!has_defined_hue(base)) continue;
    const double s = scale(rng);
    const CieLab scaled = xyz_to_lab({s * xyz.x, s * xyz.y, s * xyz.z});
    EXPECT_NEAR(hue_angle(scaled).degrees, hue_angle(base).degrees, 0.01);
    if (s <= 0.9) {
      EXPECT_GT(base.l_star - scaled.l_star, 1.0);
    }
  }
}

TEST(Ita, ZeroAtMidLightness) { EXPECT_NEAR(ita({50.0, 3.0, 5.0}).degrees, 0.0, 1e-12); }

TEST(Ita, DiagonalIsFortyFive) { EXPECT_NEAR(ita({78.28, 0.0, 28.28}).degrees, 45.0, 1e-9); }

TEST(Ita, ZeroBForcesPlusMinusNinety) {
  EXPECT_DOUBLE_EQ(ita({30.0, 0.0, 0.0}).degrees, -90.0);
  EXPECT_DOUBLE_EQ(ita({70.0, 4.0, 0.0}).degrees, 90.0);
}

TEST(Ita, UndefinedAtMidLightnessWithZeroB) {
  EXPECT_EQ(error_code_of([] { ita({50.0, 2.0, 0.0}); }), ErrorCode::kUndefinedIta);
}

TEST(Ita, RangeIsBounded) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> l(0.0, 100.0), ab(-120.0, 120.0);
  for (int i = 0; i < 5000; ++i) {
    const double deg = ita({l(rng), ab(rng), ab(rng)}).degrees;
    EXPECT_GE(deg, -90.0);
    EXPECT_LE(deg, 90.0);
  }
}

TEST(FitzpatrickBand, StrictThreshold) {
  EXPECT_EQ(fitzpatrick_band({30.0}), FitzpatrickBand::kLight);
  EXPECT_EQ(fitzpatrick_band({28.0}), FitzpatrickBand::kDark);
  EXPECT_EQ(fitzpatrick_band({-10.0}), FitzpatrickBand::kDark);
  EXPECT_STREQ(to_string(FitzpatrickBand::kLight), "light");
}
