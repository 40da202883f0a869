#pragma once

#include <cstdint>

namespace skintone {

// Gamma-encoded 8-bit sRGB.
struct Srgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Srgb8&, const Srgb8&) = default;
};

// D65-relative tristimulus values, reference white has y == 1.
struct XyzTristimulus {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct CieLab {
  double l_star = 0.0;
  double a_star = 0.0;
  double b_star = 0.0;

  friend bool operator==(const CieLab&, const CieLab&) = default;
};

// Hue angle h* in degrees, range (-180, 180].
struct HueAngleDeg {
  double degrees = 0.0;
};

// Individual typology angle in degrees, range [-90, 90].
struct ItaDeg {
  double degrees = 0.0;
};

enum class FitzpatrickBand { kLight, kDark };

// Reference white of the sRGB primaries under D65.
XyzTristimulus d65_white();

// IEC 61966-2-1 transfer functions on normalized [0, 1] channel values.
double srgb_decode(double encoded);
double srgb_encode(double linear);

XyzTristimulus srgb_to_xyz(const Srgb8& c);
CieLab xyz_to_lab(const XyzTristimulus& xyz);
XyzTristimulus lab_to_xyz(const CieLab& lab);

CieLab srgb_to_lab(const Srgb8& c);

/// Inverse of srgb_to_lab up to 8-bit quantization. Throws
/// Error{kOutOfGamut} when a linear channel lands outside [0, 1] by more
/// than half a code value.
Srgb8 lab_to_srgb(const CieLab& lab);

/// Quadrant-aware atan2(b*, a*). Throws Error{kUndefinedHue} for a*=b*=0.
HueAngleDeg hue_angle(const CieLab& lab);

bool has_defined_hue(const CieLab& lab) noexcept;

/// arctan((L* - 50) / b*) in degrees; b* = 0 resolves to +-90 by the sign
/// of L* - 50. Equals atan2(L* - 50, b*) whenever b* > 0.
/// Throws Error{kUndefinedIta} at the single point L* = 50, b* = 0.
ItaDeg ita(const CieLab& lab);

/// Light iff the angle is strictly above 28 degrees.
FitzpatrickBand fitzpatrick_band(ItaDeg angle) noexcept;

constexpr double kFitzpatrickLightThresholdDeg = 28.0;

const char* to_string(FitzpatrickBand band) noexcept;

}  // namespace skintone
