#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace skintone::stats {

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
  double mean_a = 0.0;
  double mean_b = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

/// I_x(a, b) by Lentz's continued fraction (relative tolerance 1e-12, at
/// most 300 terms), using the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) to stay
/// in the fast-converging region.
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);

// Two-sided tail probability P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

/// Unequal-variance two-sample t-test with Welch-Satterthwaite degrees of
/// freedom. Two constant samples with equal means give t = 0, p = 1.
/// Throws Error{kInsufficientSample} when either sample has fewer than two
/// values.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// min(1, m * p) with m the list length. Throws Error{kInvalidP}.
std::vector<double> bonferroni(std::span<const double> p_values);

struct PairTest {
  std::string group_a;
  std::string group_b;
  TTestResult result;
  double p_adjusted = 1.0;
};

// Welch tests for every unordered pair of groups, Bonferroni-adjusted by the
// number of pairs. Pairs are listed in lexicographic group order.
struct PairwiseTests {
  std::vector<std::string> groups;
  std::vector<PairTest> tests;

  // Symmetric lookup; throws Error{kUnknownGroup}.
  const PairTest& find(const std::string& a, const std::string& b) const;
  // Adjusted p as a dense symmetric matrix over `groups` (diagonal = 1).
  std::vector<std::vector<double>> adjusted_matrix() const;
};

PairwiseTests pairwise_group_tests(const std::map<std::string, std::vector<double>>& values);

}  // namespace skintone::stats
