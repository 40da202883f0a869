#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "skintone/colorimetry.hpp"
#include "skintone/image.hpp"

namespace skintone {

// Point measurement for one skin pixel. `hue_deg` is empty for achromatic
// pixels (a* = b* = 0).
struct PixelSample {
  CieLab lab;
  std::optional<double> hue_deg;
};

using PixelSampleSet = std::vector<PixelSample>;

struct ExtractionConfig {
  int k = 5;
  int keep_top = 3;
  std::uint64_t seed = 20230613;
  int max_iters = 100;
  int restarts = 8;

  // Throws Error{kInvalidArgument} unless 1 <= keep_top <= k and the
  // iteration counts are positive.
  void validate() const;
};

struct ClusterSummary {
  std::size_t pixel_count = 0;
  std::size_t chromatic_count = 0;  // pixels contributing to the hue histogram
  double mode_l = 0.0;
  std::optional<double> mode_h;     // empty when the cluster has no chromatic pixel
  double mode_b = 0.0;
  CieLab centroid;
  bool kept = false;
  double weight = 0.0;              // normalized pixel share among kept clusters, 0 if dropped
};

struct SkinColorScore {
  double l_star = 0.0;
  double hue_deg = 0.0;
  double ita_deg = 0.0;
  std::vector<ClusterSummary> clusters;  // sorted by mode_l, descending
  std::size_t skin_pixel_count = 0;
};

using Partition = std::vector<std::vector<std::size_t>>;

/// One sample per mask-true pixel in row-major order. Throws
/// kDimensionMismatch or kEmptyMask.
PixelSampleSet extract_skin_pixels(const RgbImage& image, const SkinMask& mask);

/// Groups sample indices with k-means in (L*, a*, b*). Samples are reduced to
/// their distinct Lab values in lexicographic order first, so the grouping
/// depends on the multiset of colors and not on pixel order. Partitions are
/// non-empty, disjoint, cover every sample, and are ordered by their
/// smallest member index.
Partition cluster_pixels(std::span<const PixelSample> samples, const ExtractionConfig& cfg);

/// ceil(log2(n)) + 1.
int sturges_bins(std::size_t n);

/// Centre of the most populated of `bins` equal-width bins over
/// [min, max]. Ties go to the lowest bin; a zero-width range returns the
/// single value.
double histogram_mode(std::span<const double> values, int bins);

ClusterSummary summarize_cluster(std::span<const PixelSample> samples,
                                 std::span<const std::size_t> members);

/// Keeps the `keep_top` clusters with the highest mode_l and forms
/// pixel-count-weighted means of their modes. Throws kEmptyInput on an empty
/// list and kUndefinedHue when no kept cluster has a chromatic pixel.
SkinColorScore aggregate_score(std::vector<ClusterSummary> clusters, const ExtractionConfig& cfg);

SkinColorScore score_samples(std::span<const PixelSample> samples, const ExtractionConfig& cfg);
SkinColorScore score_image(const RgbImage& image, const SkinMask& mask,
                           const ExtractionConfig& cfg);

// Population standard deviation of L*/100.
double rms_contrast(const RgbImage& image);
double rms_contrast(const RgbImage& image, const SkinMask& mask);

}  // namespace skintone
