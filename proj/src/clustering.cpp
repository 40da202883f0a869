#include "skintone/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "skintone/error.hpp"
#include "skintone/random.hpp"

namespace skintone {

namespace {

std::size_t weighted_pick(std::span<const double> mass, double total, Rng& rng) {
  const double target = unit_draw(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0.0) continue;
    acc += mass[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

std::vector<Point3> seed_plus_plus(std::span<const Point3> points, std::span<const double> weights,
                                   int k, Rng& rng) {
  const std::size_t n = points.size();
  std::vector<Point3> centers;
  centers.reserve(static_cast<std::size_t>(k));

  const double total_weight = std::accumulate(weights.begin(), weights.end(), 0.0);
  centers.push_back(points[weighted_pick(weights, total_weight, rng)]);

  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(points[i], centers[0]);

  std::vector<double> mass(n);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mass[i] = weights[i] * nearest[i];
      total += mass[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      pick = weighted_pick(mass, total, rng);
    } else {
      // every point coincides with a center; duplicate the first one
      pick = 0;
    }
    centers.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points[i], centers.back()));
    }
  }
  return centers;
}

int nearest_center(const Point3& p, const std::vector<Point3>& centers, double& best_d2) {
  int best = 0;
  best_d2 = squared_distance(p, centers[0]);
  for (std::size_t c = 1; c < centers.size(); ++c) {
    const double d2 = squared_distance(p, centers[c]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(c);
    }
  }
  return best;
}

std::vector<Point3> weighted_means(std::span<const Point3> points, std::span<const double> weights,
                                   std::span<const int> labels, std::size_t k,
                                   std::vector<double>& mass) {
  std::vector<Point3> sums(k, Point3{0.0, 0.0, 0.0});
  mass.assign(k, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    for (int d = 0; d < 3; ++d) sums[c][d] += weights[i] * points[i][d];
    mass[c] += weights[i];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (mass[c] > 0.0) {
      for (int d = 0; d < 3; ++d) sums[c][d] /= mass[c];
    }
  }
  return sums;
}

KMeansResult lloyd(std::span<const Point3> points, std::span<const double> weights,
                   std::vector<Point3> centers, int max_iters) {
  const std::size_t n = points.size();
  const std::size_t k = centers.size();
  std::vector<int> labels(n, -1);
  std::vector<double> dist(n, 0.0);
  std::vector<double> mass;
  int iter = 0;

  for (; iter < max_iters; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int c = nearest_center(points[i], centers, dist[i]);
      if (c != labels[i]) {
        labels[i] = c;
        changed = true;
      }
    }
    if (!changed) break;

    centers = weighted_means(points, weights, labels, k, mass);
    // An emptied cluster takes over the point contributing most to the
    // objective.
    for (std::size_t c = 0; c < k; ++c) {
      if (mass[c] > 0.0) continue;
      std::size_t worst = 0;
      double worst_cost = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double cost = weights[i] * dist[i];
        if (cost > worst_cost) {
          worst_cost = cost;
          worst = i;
        }
      }
      if (worst_cost <= 0.0) continue;
      centers[c] = points[worst];
      dist[worst] = 0.0;
    }
  }

  // Compact labels so every reported cluster is non-empty.
  std::vector<int> remap(k, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int& r = remap[static_cast<std::size_t>(labels[i])];
    if (r < 0) r = next++;
    labels[i] = r;
  }

  KMeansResult result;
  result.centroids = weighted_means(points, weights, labels, static_cast<std::size_t>(next), mass);
  result.inertia = within_cluster_ss(points, weights, labels);
  result.labels = std::move(labels);
  result.iterations = std::min(iter + 1, max_iters);
  return result;
}

}  // namespace

double squared_distance(const Point3& a, const Point3& b) noexcept {
  const double d0 = a[0] - b[0];
  const double d1 = a[1] - b[1];
  const double d2 = a[2] - b[2];
  return d0 * d0 + d1 * d1 + d2 * d2;
}

KMeansResult weighted_kmeans(std::span<const Point3> points, std::span<const double> weights,
                             const KMeansOptions& options) {
  if (points.empty()) throw Error(ErrorCode::kEmptyInput, "k-means needs at least one point");
  if (weights.size() != points.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "k-means weights do not match points");
  }
  if (options.k < 1 || options.max_iters < 1 || options.restarts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "k-means needs k, max_iters and restarts >= 1");
  }

  const std::size_t n = points.size();
  if (n <= static_cast<std::size_t>(options.k)) {
    KMeansResult trivial;
    trivial.labels.resize(n);
    std::iota(trivial.labels.begin(), trivial.labels.end(), 0);
    trivial.centroids.assign(points.begin(), points.end());
    trivial.inertia = 0.0;
    return trivial;
  }

  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int run = 0; run < options.restarts; ++run) {
    Rng rng(options.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(run));
    KMeansResult candidate =
        lloyd(points, weights, seed_plus_plus(points, weights, options.k, rng), options.max_iters);
    if (candidate.inertia < best.inertia) best = std::move(candidate);
  }
  return best;
}

double within_cluster_ss(std::span<const Point3> points, std::span<const double> weights,
                         std::span<const int> labels) {
  if (points.empty()) return 0.0;
  const int max_label = *std::max_element(labels.begin(), labels.end());
  std::vector<double> mass;
  const std::vector<Point3> means =
      weighted_means(points, weights, labels, static_cast<std::size_t>(max_label) + 1, mass);
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += weights[i] * squared_distance(points[i], means[static_cast<std::size_t>(labels[i])]);
  }
  return total;
}

}  // namespace skintone
