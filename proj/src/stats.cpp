#include "skintone/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "skintone/error.hpp"

namespace skintone::stats {

namespace {

constexpr double kRelTol = 1e-12;
constexpr int kMaxTerms = 300;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b); converges quickly for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kRelTol) break;
  }
  return h;
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "incomplete beta needs a, b > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorCode::kInvalidArgument, "t distribution needs df > 0");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

double student_t_cdf(double t, double df) {
  if (t == 0.0) return 0.5;
  const double tail = 0.5 * student_t_two_sided_p(t, df);
  return t > 0.0 ? 1.0 - tail : tail;
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::kInsufficientSample, "Welch test needs at least two values per sample");
  }
  TTestResult r;
  r.n_a = a.size();
  r.n_b = b.size();
  r.mean_a = mean_of(a);
  r.mean_b = mean_of(b);
  const double na = static_cast<double>(r.n_a);
  const double nb = static_cast<double>(r.n_b);
  const double va = sample_variance(a, r.mean_a) / na;
  const double vb = sample_variance(b, r.mean_b) / nb;
  const double se2 = va + vb;

  if (se2 == 0.0) {
    r.df = na + nb - 2.0;
    if (r.mean_a == r.mean_b) {
      r.t = 0.0;
      r.p = 1.0;
    } else {
      r.t = r.mean_a > r.mean_b ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity();
      r.p = 0.0;
    }
    return r;
  }

  r.t = (r.mean_a - r.mean_b) / std::sqrt(se2);
  r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

std::vector<double> bonferroni(std::span<const double> p_values) {
  const double m = static_cast<double>(p_values.size());
  std::vector<double> out;
  out.reserve(p_values.size());
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidP, "p-value " + std::to_string(p) + " outside [0, 1]");
    }
    out.push_back(std::min(1.0, m * p));
  }
  return out;
}

const PairTest& PairwiseTests::find(const std::string& a, const std::string& b) const {
  for (const PairTest& t : tests) {
    if ((t.group_a == a && t.group_b == b) || (t.group_a == b && t.group_b == a)) return t;
  }
  throw Error(ErrorCode::kUnknownGroup, "no test for groups " + a + " / " + b);
}

std::vector<std::vector<double>> PairwiseTests::adjusted_matrix() const {
  std::vector<std::vector<double>> m(groups.size(), std::vector<double>(groups.size(), 1.0));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      m[i][j] = m[j][i] = find(groups[i], groups[j]).p_adjusted;
    }
  }
  return m;
}

PairwiseTests pairwise_group_tests(const std::map<std::string, std::vector<double>>& values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kInsufficientSample, "pairwise tests need at least two groups");
  }
  PairwiseTests out;
  for (const auto& [name, v] : values) out.groups.push_back(name);
  for (auto i = values.begin(); i != values.end(); ++i) {
    for (auto j = std::next(i); j != values.end(); ++j) {
      out.tests.push_back({i->first, j->first, welch_t_test(i->second, j->second), 1.0});
    }
  }
  std::vector<double> raw;
  raw.reserve(out.tests.size());
  for (const PairTest& t : out.tests) raw.push_back(t.result.p);
  const std::vector<double> adjusted = bonferroni(raw);
  for (std::size_t i = 0; i < out.tests.size(); ++i) out.tests[i].p_adjusted = adjusted[i];
  return out;
}

}  // namespace skintone::stats
