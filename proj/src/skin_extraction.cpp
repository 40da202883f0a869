#include "skintone/skin_extraction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "skintone/clustering.hpp"
#include "skintone/error.hpp"

namespace skintone {

void ExtractionConfig::validate() const {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (keep_top < 1 || keep_top > k) {
    throw Error(ErrorCode::kInvalidArgument, "keep_top must lie in [1, k]");
  }
  if (max_iters < 1) throw Error(ErrorCode::kInvalidArgument, "max_iters must be >= 1");
  if (restarts < 1) throw Error(ErrorCode::kInvalidArgument, "restarts must be >= 1");
}

PixelSampleSet extract_skin_pixels(const RgbImage& image, const SkinMask& mask) {
  if (image.width() != mask.width() || image.height() != mask.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image is " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()) + " but mask is " +
                    std::to_string(mask.width()) + "x" + std::to_string(mask.height()));
  }
  PixelSampleSet samples;
  const auto pixels = image.pixels();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (!mask[i]) continue;
    PixelSample s;
    s.lab = srgb_to_lab(pixels[i]);
    if (has_defined_hue(s.lab)) s.hue_deg = hue_angle(s.lab).degrees;
    samples.push_back(s);
  }
  if (samples.empty()) throw Error(ErrorCode::kEmptyMask, "mask selects no skin pixel");
  return samples;
}

Partition cluster_pixels(std::span<const PixelSample> samples, const ExtractionConfig& cfg) {
  cfg.validate();
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "no samples to cluster");

  auto key = [](const CieLab& c) { return std::tie(c.l_star, c.a_star, c.b_star); };

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key(samples[a].lab) < key(samples[b].lab);
  });

  std::vector<Point3> points;
  std::vector<double> weights;
  std::vector<std::size_t> distinct_of(samples.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const CieLab& lab = samples[order[pos]].lab;
    if (pos == 0 || !(lab == samples[order[pos - 1]].lab)) {
      points.push_back({lab.l_star, lab.a_star, lab.b_star});
      weights.push_back(0.0);
    }
    weights.back() += 1.0;
    distinct_of[order[pos]] = points.size() - 1;
  }

  KMeansOptions options;
  options.k = cfg.k;
  options.max_iters = cfg.max_iters;
  options.restarts = cfg.restarts;
  options.seed = cfg.seed;
  const KMeansResult km = weighted_kmeans(points, weights, options);

  Partition groups(km.centroids.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    groups[static_cast<std::size_t>(km.labels[distinct_of[i]])].push_back(i);
  }
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

int sturges_bins(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "Sturges rule needs n >= 1");
  const int ceil_log2 = n == 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
  return ceil_log2 + 1;
}

double histogram_mode(std::span<const double> values, int bins) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "histogram of no values");
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "histogram needs >= 1 bin");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (hi == lo) return lo;

  const double width = (hi - lo) / bins;
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    auto idx = static_cast<std::size_t>(std::floor((v - lo) / width));
    if (idx >= counts.size()) idx = counts.size() - 1;
    ++counts[idx];
  }
  const auto best = static_cast<std::size_t>(
      std::distance(counts.begin(), std::max_element(counts.begin(), counts.end())));
  return lo + (static_cast<double>(best) + 0.5) * width;
}

ClusterSummary summarize_cluster(std::span<const PixelSample> samples,
                                 std::span<const std::size_t> members) {
  if (members.empty()) throw Error(ErrorCode::kEmptyInput, "empty cluster");
  std::vector<double> l_values;
  std::vector<double> b_values;
  std::vector<double> h_values;
  l_values.reserve(members.size());
  b_values.reserve(members.size());
  CieLab sum;
  for (std::size_t idx : members) {
    const PixelSample& s = samples[idx];
    l_values.push_back(s.lab.l_star);
    b_values.push_back(s.lab.b_star);
    if (s.hue_deg) h_values.push_back(*s.hue_deg);
    sum.l_star += s.lab.l_star;
    sum.a_star += s.lab.a_star;
    sum.b_star += s.lab.b_star;
  }

  ClusterSummary out;
  out.pixel_count = members.size();
  out.chromatic_count = h_values.size();
  const double n = static_cast<double>(members.size());
  out.centroid = {sum.l_star / n, sum.a_star / n, sum.b_star / n};
  const int bins = sturges_bins(members.size());
  out.mode_l = histogram_mode(l_values, bins);
  out.mode_b = histogram_mode(b_values, bins);
  if (!h_values.empty()) out.mode_h = histogram_mode(h_values, sturges_bins(h_values.size()));
  return out;
}

namespace {

double clamp_to(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

SkinColorScore aggregate_score(std::vector<ClusterSummary> clusters, const ExtractionConfig& cfg) {
  cfg.validate();
  if (clusters.empty()) throw Error(ErrorCode::kEmptyInput, "no clusters to aggregate");

  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const ClusterSummary& a, const ClusterSummary& b) {
                     return a.mode_l > b.mode_l;
                   });
  const std::size_t keep = std::min(static_cast<std::size_t>(cfg.keep_top), clusters.size());

  double kept_pixels = 0.0;
  double hue_pixels = 0.0;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    ClusterSummary& c = clusters[i];
    c.kept = i < keep;
    c.weight = 0.0;
    if (!c.kept) continue;
    kept_pixels += static_cast<double>(c.pixel_count);
    if (c.mode_h) hue_pixels += static_cast<double>(c.pixel_count);
  }
  if (hue_pixels == 0.0) {
    throw Error(ErrorCode::kUndefinedHue, "no kept cluster contains a chromatic pixel");
  }

  double l_acc = 0.0;
  double b_acc = 0.0;
  double h_acc = 0.0;
  double l_lo = 100.0, l_hi = 0.0, h_lo = 180.0, h_hi = -180.0, b_lo = 0.0, b_hi = 0.0;
  bool first_b = true;
  for (std::size_t i = 0; i < keep; ++i) {
    ClusterSummary& c = clusters[i];
    const double count = static_cast<double>(c.pixel_count);
    c.weight = count / kept_pixels;
    l_acc += c.weight * c.mode_l;
    b_acc += c.weight * c.mode_b;
    l_lo = std::min(l_lo, c.mode_l);
    l_hi = std::max(l_hi, c.mode_l);
    if (first_b) {
      b_lo = b_hi = c.mode_b;
      first_b = false;
    } else {
      b_lo = std::min(b_lo, c.mode_b);
      b_hi = std::max(b_hi, c.mode_b);
    }
    if (c.mode_h) {
      h_acc += (count / hue_pixels) * *c.mode_h;
      h_lo = std::min(h_lo, *c.mode_h);
      h_hi = std::max(h_hi, *c.mode_h);
    }
  }

  SkinColorScore score;
  // Weighted means stay within the hull of their inputs; clamping only
  // removes rounding excursions of an ulp or so.
  score.l_star = clamp_to(l_acc, l_lo, l_hi);
  score.hue_deg = clamp_to(h_acc, h_lo, h_hi);
  const double b_final = clamp_to(b_acc, b_lo, b_hi);
  score.ita_deg = ita(CieLab{score.l_star, 0.0, b_final}).degrees;
  for (const ClusterSummary& c : clusters) score.skin_pixel_count += c.pixel_count;
  score.clusters = std::move(clusters);
  return score;
}

SkinColorScore score_samples(std::span<const PixelSample> samples, const ExtractionConfig& cfg) {
  const Partition groups = cluster_pixels(samples, cfg);
  std::vector<ClusterSummary> summaries;
  summaries.reserve(groups.size());
  for (const auto& members : groups) summaries.push_back(summarize_cluster(samples, members));
  return aggregate_score(std::move(summaries), cfg);
}

SkinColorScore score_image(const RgbImage& image, const SkinMask& mask,
                           const ExtractionConfig& cfg) {
  cfg.validate();
  const PixelSampleSet samples = extract_skin_pixels(image, mask);
  return score_samples(samples, cfg);
}

namespace {

double lightness_std(const RgbImage& image, const SkinMask* mask) {
  std::vector<double> values;
  const auto pixels = image.pixels();
  values.reserve(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    values.push_back(srgb_to_lab(pixels[i]).l_star / 100.0);
  }
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "contrast of an empty pixel set");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n);
}

}  // namespace

double rms_contrast(const RgbImage& image) { return lightness_std(image, nullptr); }

double rms_contrast(const RgbImage& image, const SkinMask& mask) {
  if (image.width() != mask.width() || image.height() != mask.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "image and mask dimensions differ");
  }
  return lightness_std(image, &mask);
}

}  // namespace skintone
