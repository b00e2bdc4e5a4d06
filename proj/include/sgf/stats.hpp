#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sgf {

inline constexpr std::size_t kMinKsSamples = 50;
inline constexpr std::size_t kMinRatioSamples = 100;

/// (x_i - center) / scale. Throws std::invalid_argument unless scale > 0.
std::vector<double> standardize(std::span<const double> samples, double center, double scale);

/// Standard normal cdf, 0.5 * erfc(-x / sqrt 2).
double normal_cdf(double x);

double mean(std::span<const double> xs);
/// Unbiased (n - 1) sample variance; needs at least two samples.
double sample_variance(std::span<const double> xs);
double sample_sd(std::span<const double> xs);
double covariance(std::span<const double> xs, std::span<const double> ys);
double correlation(std::span<const double> xs, std::span<const double> ys);
/// Population skewness m3 / m2^(3/2); 0 for a constant sample.
double skewness(std::span<const double> xs);

/// Standard error of the sample mean.
double mean_standard_error(std::span<const double> xs);
/// Standard error of the unbiased variance estimator, from the sample fourth
/// central moment: sqrt((m4 - s^4 (n-3)/(n-1)) / n).
double variance_standard_error(std::span<const double> xs);
/// Standard error of the sample covariance: sd of (x - xbar)(y - ybar) / sqrt n.
double covariance_standard_error(std::span<const double> xs, std::span<const double> ys);

struct NormalityReport {
  std::size_t sample_size = 0;
  double ks_statistic = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  double skewness = 0.0;
};

/// One-sample Kolmogorov-Smirnov distance to N(0, 1), exact from the sorted
/// sample. Throws std::invalid_argument below kMinKsSamples.
NormalityReport ks_test(std::span<const double> samples);

struct VarianceRatio {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// r1 = Var(d1) / (Var(d1) + Var(d2)), r2 = 1 - r1.
VarianceRatio variance_ratio(std::span<const double> delta1s, std::span<const double> delta2s);

}  // namespace sgf
