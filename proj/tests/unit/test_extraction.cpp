#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "expect_error.hpp"
#include "fixtures.hpp"
#include "skintone/skin_extraction.hpp"

using namespace skintone;

namespace {

ClusterSummary summary(double mode_l, std::size_t count, std::optional<double> mode_h = 45.0,
                       double mode_b = 10.0) {
  ClusterSummary c;
  c.pixel_count = count;
  c.chromatic_count = mode_h ? count : 0;
  c.mode_l = mode_l;
  c.mode_h = mode_h;
  c.mode_b = mode_b;
  return c;
}

PixelSampleSet samples_of(const std::vector<CieLab>& labs) {
  PixelSampleSet out;
  for (const CieLab& lab : labs) {
    PixelSample s{lab, std::nullopt};
    if (has_defined_hue(lab)) s.hue_deg = hue_angle(lab).degrees;
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(ExtractSkinPixels, OneSamplePerMaskedPixel) {
  const RgbImage image(10, 10, Srgb8{200, 150, 120});
  EXPECT_EQ(extract_skin_pixels(image, SkinMask(10, 10, true)).size(), 100u);

  SkinMask partial(10, 10, false);
  partial.set(3, 4, true);
  partial.set(9, 9, true);
  EXPECT_EQ(extract_skin_pixels(image, partial).size(), 2u);
}

TEST(ExtractSkinPixels, EmptyMaskThrows) {
  const RgbImage image(10, 10, Srgb8{200, 150, 120});
  EXPECT_EQ(error_code_of([&] { extract_skin_pixels(image, SkinMask(10, 10, false)); }),
            ErrorCode::kEmptyMask);
}

TEST(ExtractSkinPixels, DimensionMismatchThrows) {
  const RgbImage image(10, 10, Srgb8{200, 150, 120});
  EXPECT_EQ(error_code_of([&] { extract_skin_pixels(image, SkinMask(10, 9, true)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(ExtractSkinPixels, UniformImageRecoversLab) {
  const RgbImage image = fixtures::uniform_image(8, 8, {65.0, 15.0, 20.0});
  for (const PixelSample& s : extract_skin_pixels(image, SkinMask(8, 8, true))) {
    EXPECT_NEAR(s.lab.l_star, 65.0, 0.5);
    EXPECT_NEAR(s.lab.a_star, 15.0, 0.5);
    EXPECT_NEAR(s.lab.b_star, 20.0, 0.5);
    ASSERT_TRUE(s.hue_deg.has_value());
  }
}

TEST(ExtractSkinPixels, GrayPixelsHaveNoHue) {
  const RgbImage image(2, 2, Srgb8{90, 90, 90});
  for (const PixelSample& s : extract_skin_pixels(image, SkinMask(2, 2, true))) {
    EXPECT_FALSE(s.hue_deg.has_value());
  }
}

TEST(ClusterPixels, IdenticalSamplesFormOneCluster) {
  const PixelSampleSet s = samples_of(std::vector<CieLab>(50, CieLab{60.0, 10.0, 12.0}));
  const Partition p = cluster_pixels(s, ExtractionConfig{});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].size(), 50u);
}

TEST(ClusterPixels, SeparatedBlobsAreRecovered) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<CieLab> labs;
  std::set<std::size_t> dark_blob;
  for (std::size_t i = 0; i < 200; ++i) {
    const bool dark = i % 3 == 0;
    if (dark) dark_blob.insert(i);
    labs.push_back({(dark ? 20.0 : 80.0) + noise(rng), 10.0 + noise(rng), 15.0 + noise(rng)});
  }
  ExtractionConfig cfg;
  cfg.k = 2;
  cfg.keep_top = 1;
  const Partition p = cluster_pixels(samples_of(labs), cfg);
  ASSERT_EQ(p.size(), 2u);
  const std::set<std::size_t> first(p[0].begin(), p[0].end());
  const std::set<std::size_t> second(p[1].begin(), p[1].end());
  EXPECT_TRUE(first == dark_blob || second == dark_blob);
}

TEST(ClusterPixels, PartitionCoversEverySampleOnce) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 60.0);
  std::vector<CieLab> labs;
  for (int i = 0; i < 300; ++i) labs.push_back({u(rng), u(rng) - 30.0, u(rng) - 30.0});
  const Partition p = cluster_pixels(samples_of(labs), ExtractionConfig{});
  std::vector<int> seen(labs.size(), 0);
  std::size_t previous_first = 0;
  for (std::size_t g = 0; g < p.size(); ++g) {
    ASSERT_FALSE(p[g].empty());
    if (g > 0) {
      EXPECT_GT(p[g].front(), previous_first);
    }
    previous_first = p[g].front();
    for (std::size_t idx : p[g]) ++seen[idx];
  }
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  EXPECT_LE(p.size(), 5u);
}

TEST(ClusterPixels, DeterministicForFixedSeed) {
  const RgbImage image = fixtures::two_tone_image(30, 20, 17);
  const PixelSampleSet s = extract_skin_pixels(image, SkinMask(30, 20, true));
  EXPECT_EQ(cluster_pixels(s, ExtractionConfig{}), cluster_pixels(s, ExtractionConfig{}));
}

TEST(SturgesBins, KnownValues) {
  EXPECT_EQ(sturges_bins(1), 1);
  EXPECT_EQ(sturges_bins(2), 2);
  EXPECT_EQ(sturges_bins(3), 3);
  EXPECT_EQ(sturges_bins(1000), 11);
  EXPECT_EQ(sturges_bins(1024), 11);
  EXPECT_EQ(sturges_bins(1025), 12);
}

TEST(SturgesBins, MatchesLogFormula) {
  for (std::size_t n = 2; n < 5000; ++n) {
    EXPECT_EQ(sturges_bins(n), static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 1)
        << n;
  }
}

TEST(HistogramMode, ZeroWidthRangeReturnsValue) {
  const std::vector<double> v = {42.0, 42.0, 42.0};
  EXPECT_DOUBLE_EQ(histogram_mode(v, 2), 42.0);
}

TEST(HistogramMode, HandEvaluatedThreeBins) {
  const std::vector<double> v = {5.0, 5.0, 5.0, 9.0};
  EXPECT_NEAR(histogram_mode(v, 3), 5.0 + 4.0 / 6.0, 1e-12);
}

TEST(HistogramMode, TieGoesToLowestBin) {
  const std::vector<double> v = {0.0, 0.1, 9.9, 10.0};
  EXPECT_NEAR(histogram_mode(v, 4), 1.25, 1e-12);
}

TEST(HistogramMode, MaximumLandsInLastBin) {
  const std::vector<double> v = {0.0, 10.0, 10.0};
  EXPECT_NEAR(histogram_mode(v, 5), 9.0, 1e-12);
}

TEST(HistogramMode, EmptyInputThrows) {
  EXPECT_EQ(error_code_of([] { histogram_mode(std::vector<double>{}, 3); }),
            ErrorCode::kEmptyInput);
}

TEST(SummarizeCluster, ModesAndChromaticCount) {
  const PixelSampleSet s = samples_of({{60.0, 10.0, 10.0},
                                       {60.0, 10.0, 10.0},
                                       {60.0, 10.0, 10.0},
                                       {40.0, 0.0, 0.0}});
  const std::vector<std::size_t> members = {0, 1, 2, 3};
  const ClusterSummary c = summarize_cluster(s, members);
  EXPECT_EQ(c.pixel_count, 4u);
  EXPECT_EQ(c.chromatic_count, 3u);
  ASSERT_TRUE(c.mode_h.has_value());
  EXPECT_NEAR(*c.mode_h, 45.0, 1e-9);
  EXPECT_GT(c.mode_l, 55.0);
  EXPECT_NEAR(c.centroid.l_star, 55.0, 1e-12);
}

TEST(SummarizeCluster, AchromaticClusterHasNoHue) {
  const PixelSampleSet s = samples_of({{40.0, 0.0, 0.0}, {42.0, 0.0, 0.0}});
  const std::vector<std::size_t> members = {0, 1};
  EXPECT_FALSE(summarize_cluster(s, members).mode_h.has_value());
}

TEST(AggregateScore, EqualWeightsOverTopThree) {
  std::vector<ClusterSummary> c = {summary(30, 50), summary(70, 100), summary(20, 50),
                                   summary(65, 100), summary(60, 100)};
  const SkinColorScore s = aggregate_score(c, ExtractionConfig{});
  EXPECT_NEAR(s.l_star, 65.0, 1e-12);
  ASSERT_EQ(s.clusters.size(), 5u);
  EXPECT_TRUE(s.clusters[0].kept && s.clusters[1].kept && s.clusters[2].kept);
  EXPECT_FALSE(s.clusters[3].kept || s.clusters[4].kept);
  EXPECT_DOUBLE_EQ(s.clusters[0].mode_l, 70.0);
  EXPECT_DOUBLE_EQ(s.clusters[4].mode_l, 20.0);
}

TEST(AggregateScore, CountWeightedMean) {
  std::vector<ClusterSummary> c = {summary(70, 300, 40.0), summary(65, 100, 50.0),
                                   summary(60, 100, 60.0)};
  const SkinColorScore s = aggregate_score(c, ExtractionConfig{});
  EXPECT_NEAR(s.l_star, 67.0, 1e-12);
  EXPECT_NEAR(s.hue_deg, (40.0 * 300 + 50.0 * 100 + 60.0 * 100) / 500.0, 1e-12);
}

TEST(AggregateScore, SingleClusterPassesThrough) {
  std::vector<ClusterSummary> c = {summary(58.5, 40, 61.0, 12.0)};
  const SkinColorScore s = aggregate_score(c, ExtractionConfig{});
  EXPECT_DOUBLE_EQ(s.l_star, 58.5);
  EXPECT_DOUBLE_EQ(s.hue_deg, 61.0);
  EXPECT_NEAR(s.ita_deg, std::atan((58.5 - 50.0) / 12.0) * 180.0 / M_PI, 1e-12);
  EXPECT_DOUBLE_EQ(s.clusters[0].weight, 1.0);
}

TEST(AggregateScore, HueUsesOnlyChromaticKeptClusters) {
  std::vector<ClusterSummary> c = {summary(70, 100, std::nullopt), summary(65, 100, 50.0)};
  EXPECT_DOUBLE_EQ(aggregate_score(c, ExtractionConfig{}).hue_deg, 50.0);
}

TEST(AggregateScore, NoChromaticKeptClusterThrows) {
  std::vector<ClusterSummary> c = {summary(70, 100, std::nullopt), summary(20, 100, 50.0)};
  ExtractionConfig cfg;
  cfg.keep_top = 1;
  EXPECT_EQ(error_code_of([&] { aggregate_score(c, cfg); }), ErrorCode::kUndefinedHue);
}

TEST(AggregateScore, EmptyListThrows) {
  EXPECT_EQ(error_code_of([] { aggregate_score({}, ExtractionConfig{}); }),
            ErrorCode::kEmptyInput);
}

TEST(AggregateScore, KeptWeightsSumToOne) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> l(0.0, 100.0);
  std::uniform_int_distribution<std::size_t> n(1, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ClusterSummary> c;
    for (int i = 0; i < 5; ++i) c.push_back(summary(l(rng), n(rng)));
    const SkinColorScore s = aggregate_score(c, ExtractionConfig{});
    double total = 0.0;
    for (const ClusterSummary& cs : s.clusters) total += cs.kept ? cs.weight : 0.0;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ExtractionConfig, ValidateRejectsBadValues) {
  ExtractionConfig cfg;
  cfg.keep_top = 6;
  EXPECT_EQ(error_code_of([&] { cfg.validate(); }), ErrorCode::kInvalidArgument);
  cfg = ExtractionConfig{};
  cfg.k = 0;
  EXPECT_EQ(error_code_of([&] { cfg.validate(); }), ErrorCode::kInvalidArgument);
  cfg = ExtractionConfig{};
  cfg.restarts = 0;
  EXPECT_EQ(error_code_of([&] { cfg.validate(); }), ErrorCode::kInvalidArgument);
}

TEST(ScoreImage, UniformSkinRecoversLabAndHue) {
  const RgbImage image = fixtures::uniform_image(16, 16, {65.0, 15.0, 20.0});
  const SkinColorScore s = score_image(image, SkinMask(16, 16, true), ExtractionConfig{});
  EXPECT_NEAR(s.l_star, 65.0, 0.5);
  EXPECT_NEAR(s.hue_deg, 53.13010235415598, 0.5);
  EXPECT_EQ(s.skin_pixel_count, 256u);
  // Exact recovery of the color actually depicted.
  const Srgb8 px = image.at(0, 0);
  const oracle::Lab depicted = oracle::srgb_to_lab(px.r, px.g, px.b);
  EXPECT_NEAR(s.l_star, depicted.l, 0.01);
  EXPECT_NEAR(s.hue_deg, std::atan2(depicted.b, depicted.a) * 180.0 / M_PI, 0.01);
}

TEST(ScoreImage, ShadowClustersAreDropped) {
  const RgbImage image = fixtures::two_tone_image(60, 50, 1);
  const SkinColorScore s = score_image(image, SkinMask(60, 50, true), ExtractionConfig{});
  EXPECT_NEAR(s.l_star, fixtures::kLitL, 1.0);
  EXPECT_NEAR(s.hue_deg, fixtures::kLitHueDeg, 1.0);
  for (const ClusterSummary& c : s.clusters) {
    if (c.kept) {
      EXPECT_GT(c.mode_l, 50.0);
    }
  }
}

TEST(ScoreImage, EmptyMaskThrows) {
  const RgbImage image(4, 4, Srgb8{200, 160, 130});
  EXPECT_EQ(error_code_of([&] { score_image(image, SkinMask(4, 4, false), ExtractionConfig{}); }),
            ErrorCode::kEmptyMask);
}

TEST(ScoreImage, Deterministic) {
  const RgbImage image = fixtures::two_tone_image(40, 30, 2);
  const SkinMask mask(40, 30, true);
  const SkinColorScore a = score_image(image, mask, ExtractionConfig{});
  const SkinColorScore b = score_image(image, mask, ExtractionConfig{});
  EXPECT_EQ(a.l_star, b.l_star);
  EXPECT_EQ(a.hue_deg, b.hue_deg);
  EXPECT_EQ(a.ita_deg, b.ita_deg);
  ASSERT_EQ(a.clusters.size(), b.clusters.size());
  for (std::size_t i = 0; i < a.clusters.size(); ++i) {
    EXPECT_EQ(a.clusters[i].pixel_count, b.clusters[i].pixel_count);
    EXPECT_EQ(a.clusters[i].mode_l, b.clusters[i].mode_l);
  }
}

TEST(ScoreImage, PixelOrderDoesNotMatter) {
  const RgbImage image = fixtures::two_tone_image(40, 30, 3);
  std::vector<Srgb8> px(image.pixels().begin(), image.pixels().end());
  const SkinColorScore base = score_image(image, SkinMask(40, 30, true), ExtractionConfig{});
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(px.begin(), px.end(), rng);
    const RgbImage shuffled(40, 30, px);
    const SkinColorScore s = score_image(shuffled, SkinMask(40, 30, true), ExtractionConfig{});
    EXPECT_EQ(s.l_star, base.l_star);
    EXPECT_EQ(s.hue_deg, base.hue_deg);
    EXPECT_EQ(s.ita_deg, base.ita_deg);
  }
}

TEST(RmsContrast, UniformImageIsZero) {
  EXPECT_NEAR(rms_contrast(RgbImage(9, 7, Srgb8{123, 80, 200})), 0.0, 1e-12);
}

TEST(RmsContrast, BlackAndWhiteHalves) {
  std::vector<Srgb8> px(50, Srgb8{0, 0, 0});
  px.resize(100, Srgb8{255, 255, 255});
  EXPECT_NEAR(rms_contrast(RgbImage(10, 10, px)), 0.5, 1e-9);
}

TEST(RmsContrast, QuarterAndThreeQuarterLightness) {
  // Nearest gray levels to L* = 25 and L* = 75 per the oracle.
  const auto g25 = fixtures::oracle_color({25.0, 0.0, 0.0});
  const auto g75 = fixtures::oracle_color({75.0, 0.0, 0.0});
  const double l25 = oracle::srgb_to_lab(g25.r, g25.g, g25.b).l;
  const double l75 = oracle::srgb_to_lab(g75.r, g75.g, g75.b).l;
  std::vector<Srgb8> px(32, g25);
  px.resize(64, g75);
  const double c = rms_contrast(RgbImage(8, 8, px));
  EXPECT_NEAR(c, (l75 - l25) / 200.0, 1e-3);
  EXPECT_NEAR(c, 0.25, 0.005);
}

TEST(RmsContrast, MaskedVariantUsesSkinOnly) {
  std::vector<Srgb8> px(50, Srgb8{0, 0, 0});
  px.resize(100, Srgb8{255, 255, 255});
  const RgbImage image(10, 10, px);
  SkinMask mask(10, 10, false);
  for (std::size_t x = 0; x < 10; ++x) mask.set(x, 9, true);
  EXPECT_NEAR(rms_contrast(image, mask), 0.0, 1e-12);
}
