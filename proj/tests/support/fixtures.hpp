#pragma once

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unistd.h>

#include "oracles.hpp"
#include "skintone/audit.hpp"
#include "skintone/colorimetry.hpp"
#include "skintone/image.hpp"

namespace fixtures {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("skintone-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline skintone::Srgb8 oracle_color(const oracle::Lab& lab) {
  const auto rgb = oracle::lab_to_srgb(lab);
  if (!rgb) throw std::runtime_error("fixture color out of gamut");
  return {static_cast<std::uint8_t>((*rgb)[0]), static_cast<std::uint8_t>((*rgb)[1]),
          static_cast<std::uint8_t>((*rgb)[2])};
}

// Among the 8-bit neighbours of the nearest color whose Lab lies within 0.5
// of `lab` on every field, the one closest in hue angle. Plain rounding can
// cost more than half a degree of hue at moderate chroma.
inline skintone::Srgb8 hue_faithful_color(const oracle::Lab& lab) {
  const skintone::Srgb8 base = oracle_color(lab);
  const double want = std::atan2(lab.b, lab.a);
  skintone::Srgb8 best = base;
  double best_err = 1e9;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dg = -1; dg <= 1; ++dg) {
      for (int db = -1; db <= 1; ++db) {
        const int r = base.r + dr, g = base.g + dg, b = base.b + db;
        if (r < 0 || g < 0 || b < 0 || r > 255 || g > 255 || b > 255) continue;
        const oracle::Lab got = oracle::srgb_to_lab(r, g, b);
        if (std::fabs(got.l - lab.l) > 0.5 || std::fabs(got.a - lab.a) > 0.5 ||
            std::fabs(got.b - lab.b) > 0.5) {
          continue;
        }
        const double err = std::fabs(std::atan2(got.b, got.a) - want);
        if (err < best_err) {
          best_err = err;
          best = {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                  static_cast<std::uint8_t>(b)};
        }
      }
    }
  }
  return best;
}

inline skintone::RgbImage uniform_image(int w, int h, const oracle::Lab& lab) {
  return skintone::RgbImage(w, h, hue_faithful_color(lab));
}

constexpr double kLitL = 70.0;
constexpr double kLitHueDeg = 53.13010235415598;  // atan2(4, 3)
constexpr double kShadowL = 15.0;

// Lit skin over the first 60% of pixels, shadow over the rest. Lit pixels
// vary in chroma along one hue ray, so every lit cluster has L* near 70 and
// hue near kLitHueDeg; shadow pixels are tight around L* = 15.
inline skintone::RgbImage two_tone_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::uniform_real_distribution<double> lit_chroma(20.0, 45.0);
  std::uniform_real_distribution<double> shadow_chroma(8.0, 10.0);
  const double theta = kLitHueDeg * M_PI / 180.0;
  std::vector<skintone::Srgb8> px;
  const int n = w * h;
  const int lit = n * 6 / 10;
  for (int i = 0; i < n; ++i) {
    if (i < lit) {
      const double c = lit_chroma(rng);
      px.push_back(oracle_color({kLitL + jitter(rng), c * std::cos(theta), c * std::sin(theta)}));
    } else {
      const double c = shadow_chroma(rng);
      px.push_back(oracle_color({kShadowL + jitter(rng), c * 0.64, c * 0.77}));
    }
  }
  return skintone::RgbImage(w, h, std::move(px));
}

inline skintone::ScoreRecord record(const std::string& id, double l_star, double hue_deg,
                                    double ita_deg = 0.0) {
  skintone::ScoreRecord r;
  r.id = id;
  r.score.l_star = l_star;
  r.score.hue_deg = hue_deg;
  r.score.ita_deg = ita_deg;
  r.score.skin_pixel_count = 1;
  return r;
}

}  // namespace fixtures
