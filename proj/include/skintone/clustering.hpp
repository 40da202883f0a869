#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace skintone {

using Point3 = std::array<double, 3>;

struct KMeansOptions {
  int k = 5;
  int max_iters = 100;
  // Independent k-means++ initializations; the lowest-inertia run wins.
  int restarts = 8;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;          // one per input point, in [0, centroids.size())
  std::vector<Point3> centroids;
  double inertia = 0.0;             // weighted within-cluster sum of squares
  int iterations = 0;               // Lloyd iterations of the winning restart
};

double squared_distance(const Point3& a, const Point3& b) noexcept;

// Weighted Lloyd k-means with k-means++ seeding. The result depends only on
// the order of `points` and the seed; callers wanting order independence
// pass points in a canonical order. Requires k >= 1, points non-empty and
// weights positive. When there are at most k points every point becomes its
// own cluster.
KMeansResult weighted_kmeans(std::span<const Point3> points, std::span<const double> weights,
                             const KMeansOptions& options);

// Weighted within-cluster sum of squares of an arbitrary labelling.
double within_cluster_ss(std::span<const Point3> points, std::span<const double> weights,
                         std::span<const int> labels);

}  // namespace skintone
