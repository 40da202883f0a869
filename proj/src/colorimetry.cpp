#include "skintone/colorimetry.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "skintone/error.hpp"

namespace skintone {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// linear sRGB -> XYZ (D65)
constexpr Mat3 kRgbToXyz = {{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}};

constexpr Mat3 invert(const Mat3& m) {
  const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  Mat3 inv{};
  inv[0][0] = c00 / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = c01 / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = c02 / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

constexpr Mat3 kXyzToRgb = invert(kRgbToXyz);

// White is the image of linear (1, 1, 1) so that 8-bit white lands on
// L* = 100, a* = b* = 0 without residual.
constexpr XyzTristimulus kWhite = {
    kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2],
    kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2],
    kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2],
};

constexpr double kDelta = 6.0 / 29.0;
constexpr double kDelta3 = kDelta * kDelta * kDelta;

double lab_f(double t) {
  return t > kDelta3 ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double f) {
  return f > kDelta ? f * f * f : 3.0 * kDelta * kDelta * (f - 4.0 / 29.0);
}

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Half a code value of slack on either side of the encoded range.
constexpr double kGamutSlack = 0.5 / 255.0 + 1e-9;

}  // namespace

XyzTristimulus d65_white() { return kWhite; }

double srgb_decode(double encoded) {
  if (encoded <= 0.04045) return encoded / 12.92;
  return std::pow((encoded + 0.055) / 1.055, 2.4);
}

double srgb_encode(double linear) {
  if (linear <= 0.0031308) return linear * 12.92;
  return 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

XyzTristimulus srgb_to_xyz(const Srgb8& c) {
  const std::array<double, 3> lin = {srgb_decode(c.r / 255.0), srgb_decode(c.g / 255.0),
                                     srgb_decode(c.b / 255.0)};
  XyzTristimulus out;
  out.x = kRgbToXyz[0][0] * lin[0] + kRgbToXyz[0][1] * lin[1] + kRgbToXyz[0][2] * lin[2];
  out.y = kRgbToXyz[1][0] * lin[0] + kRgbToXyz[1][1] * lin[1] + kRgbToXyz[1][2] * lin[2];
  out.z = kRgbToXyz[2][0] * lin[0] + kRgbToXyz[2][1] * lin[1] + kRgbToXyz[2][2] * lin[2];
  return out;
}

CieLab xyz_to_lab(const XyzTristimulus& xyz) {
  const double fx = lab_f(xyz.x / kWhite.x);
  const double fy = lab_f(xyz.y / kWhite.y);
  const double fz = lab_f(xyz.z / kWhite.z);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

XyzTristimulus lab_to_xyz(const CieLab& lab) {
  const double fy = (lab.l_star + 16.0) / 116.0;
  const double fx = fy + lab.a_star / 500.0;
  const double fz = fy - lab.b_star / 200.0;
  return {kWhite.x * lab_f_inv(fx), kWhite.y * lab_f_inv(fy), kWhite.z * lab_f_inv(fz)};
}

CieLab srgb_to_lab(const Srgb8& c) {
  CieLab lab = xyz_to_lab(srgb_to_xyz(c));
  // cube roots leave ~1e-14 noise; keep L* inside its nominal range
  if (lab.l_star < 0.0) lab.l_star = 0.0;
  if (lab.l_star > 100.0) lab.l_star = 100.0;
  return lab;
}

Srgb8 lab_to_srgb(const CieLab& lab) {
  const XyzTristimulus xyz = lab_to_xyz(lab);
  const std::array<double, 3> v = {xyz.x, xyz.y, xyz.z};
  std::array<std::uint8_t, 3> code{};
  for (int row = 0; row < 3; ++row) {
    const double linear =
        kXyzToRgb[row][0] * v[0] + kXyzToRgb[row][1] * v[1] + kXyzToRgb[row][2] * v[2];
    const double encoded = srgb_encode(linear);
    if (!(encoded >= -kGamutSlack && encoded <= 1.0 + kGamutSlack)) {
      throw Error(ErrorCode::kOutOfGamut,
                  "Lab(" + std::to_string(lab.l_star) + ", " + std::to_string(lab.a_star) + ", " +
                      std::to_string(lab.b_star) + ") is outside the sRGB gamut");
    }
    const double scaled = std::round(encoded * 255.0);
    code[row] = static_cast<std::uint8_t>(scaled < 0.0 ? 0.0 : (scaled > 255.0 ? 255.0 : scaled));
  }
  return {code[0], code[1], code[2]};
}

bool has_defined_hue(const CieLab& lab) noexcept {
  return !(lab.a_star == 0.0 && lab.b_star == 0.0);
}

HueAngleDeg hue_angle(const CieLab& lab) {
  if (!has_defined_hue(lab)) {
    throw Error(ErrorCode::kUndefinedHue, "hue angle is undefined for a* = b* = 0");
  }
  double deg = std::atan2(lab.b_star, lab.a_star) * kRadToDeg;
  // atan2 returns -180 for (-0, negative a*); fold onto the half-open range
  if (deg <= -180.0) deg += 360.0;
  return {deg};
}

ItaDeg ita(const CieLab& lab) {
  const double numerator = lab.l_star - 50.0;
  if (numerator == 0.0 && lab.b_star == 0.0) {
    throw Error(ErrorCode::kUndefinedIta, "ITA is undefined for L* = 50, b* = 0");
  }
  if (lab.b_star == 0.0) return {numerator > 0.0 ? 90.0 : -90.0};
  // Single-argument form for b* != 0 keeps the result in [-90, 90]; for
  // b* > 0 it coincides with atan2(L* - 50, b*).
  return {std::atan(numerator / lab.b_star) * kRadToDeg};
}

FitzpatrickBand fitzpatrick_band(ItaDeg angle) noexcept {
  return angle.degrees > kFitzpatrickLightThresholdDeg ? FitzpatrickBand::kLight
                                                       : FitzpatrickBand::kDark;
}

const char* to_string(FitzpatrickBand band) noexcept {
  return band == FitzpatrickBand::kLight ? "light" : "dark";
}

}  // namespace skintone
