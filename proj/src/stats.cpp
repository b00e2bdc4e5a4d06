#include "sgf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgf {

std::vector<double> standardize(std::span<const double> samples, double center, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("standardize needs a positive scale");
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = (samples[i] - center) / scale;
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of an empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

namespace {

void need_two(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("need at least two samples");
}

void need_same(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("samples differ in length");
  need_two(xs);
}

double central_moment(std::span<const double> xs, double mu, int power) {
  double s = 0.0;
  for (double x : xs) s += std::pow(x - mu, power);
  return s / static_cast<double>(xs.size());
}

}  // namespace

double sample_variance(std::span<const double> xs) {
  need_two(xs);
  const double mu = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - mu) * (x - mu);
  return s / static_cast<double>(xs.size() - 1);
}

double sample_sd(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

double covariance(std::span<const double> xs, std::span<const double> ys) {
  need_same(xs, ys);
  const double mx = mean(xs), my = mean(ys);
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (xs[i] - mx) * (ys[i] - my);
  return s / static_cast<double>(xs.size() - 1);
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
  const double vx = sample_variance(xs), vy = sample_variance(ys);
  if (!(vx > 0.0 && vy > 0.0)) throw std::domain_error("correlation of a constant sample");
  return covariance(xs, ys) / std::sqrt(vx * vy);
}

double skewness(std::span<const double> xs) {
  const double mu = mean(xs);
  const double m2 = central_moment(xs, mu, 2);
  if (m2 == 0.0) return 0.0;
  return central_moment(xs, mu, 3) / std::pow(m2, 1.5);
}

double mean_standard_error(std::span<const double> xs) {
  return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

double variance_standard_error(std::span<const double> xs) {
  need_two(xs);
  const auto n = static_cast<double>(xs.size());
  const double mu = mean(xs);
  const double m4 = central_moment(xs, mu, 4);
  const double s2 = sample_variance(xs);
  return std::sqrt(std::max(0.0, (m4 - s2 * s2 * (n - 3.0) / (n - 1.0)) / n));
}

double covariance_standard_error(std::span<const double> xs, std::span<const double> ys) {
  need_same(xs, ys);
  const double mx = mean(xs), my = mean(ys);
  std::vector<double> prod(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) prod[i] = (xs[i] - mx) * (ys[i] - my);
  return mean_standard_error(prod);
}

NormalityReport ks_test(std::span<const double> samples) {
  if (samples.size() < kMinKsSamples) throw std::invalid_argument("ks_test needs at least 50 samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  NormalityReport r;
  r.sample_size = sorted.size();
  r.ks_statistic = d;
  r.mean = mean(sorted);
  r.sd = std::sqrt(central_moment(sorted, r.mean, 2) * n / (n - 1.0));
  r.skewness = skewness(sorted);
  return r;
}

VarianceRatio variance_ratio(std::span<const double> delta1s, std::span<const double> delta2s) {
  if (delta1s.size() != delta2s.size()) throw std::invalid_argument("samples differ in length");
  if (delta1s.size() < kMinRatioSamples) {
    throw std::invalid_argument("variance_ratio needs at least 100 samples");
  }
  const double v1 = sample_variance(delta1s);
  const double v2 = sample_variance(delta2s);
  if (!(v1 + v2 > 0.0)) throw std::domain_error("zero total variance");
  VarianceRatio r;
  r.r1 = v1 / (v1 + v2);
  r.r2 = 1.0 - r.r1;
  return r;
}

}  // namespace sgf
